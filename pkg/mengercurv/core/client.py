import os
from typing import Optional

from dotenv import load_dotenv
from loguru import logger

THREADS_ENV = "MENGER_THREADS"


class AbstractMengerClient:
    """
    Represents the execution context shared by every action.

    Attributes:
        threads: Worker count used by Monte-Carlo estimators; never changes results.
        debug: A flag to enable or disable log output.
        degeneracy_tol: Relative tolerance below which simplices count as flat.
    """

    def __init__(
        self,
        threads: Optional[int] = None,
        debug: bool = False,
        degeneracy_tol: float = 1e-12,
    ):
        """
        Initializes the client, reading defaults from the environment.

        Args:
            threads (int, optional): Worker count. Defaults to $MENGER_THREADS or 1.
            debug (bool): Enable log output. Default is False.
            degeneracy_tol (float): Collinearity / flat-simplex tolerance.
        """
        load_dotenv()
        if threads is None:
            threads = int(os.getenv(THREADS_ENV, "1"))

        self.threads = max(1, int(threads))
        self.debug = debug
        self.degeneracy_tol = degeneracy_tol

        if debug:
            logger.enable("mengercurv")
        else:
            logger.disable("mengercurv")
