from loguru import logger

__version__ = "0.1.0"

__banner__ = r"""
___________________________________________
|  menger curvature energies & seminorms  |
|     run `mengercurv --help` for usage     |
===========================================
          .
         / \        c(x,y,z) = 1 / R(x,y,z)
        /   \
       x-----y-----z
"""

__banner__ += f"version: {__version__}\n"

# Library stays silent until a client asks for debug output.
logger.disable("mengercurv")
