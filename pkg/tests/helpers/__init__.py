from .pretty_response import handle_response
from .oracles import (
    brute_force_diameter,
    cayley_menger_volume,
    circumradius_by_formula,
    nested_energy_1d,
    wedge_norm_by_minors,
)
