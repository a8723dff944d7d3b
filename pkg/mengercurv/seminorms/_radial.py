import math
from typing import Tuple

import numpy as np

from mengercurv.funcspace.domain import unit_sphere_area
from mengercurv.helpers.rng import DrawBlock

# Offsets shorter than diam(U)·RADIAL_FLOOR are not sampled unless a cutoff is set.
RADIAL_FLOOR = 2.0**-20


def radial_bounds(diameter: float, cutoff: float) -> Tuple[float, float]:
    r_hi = diameter / 2.0
    r_lo = max(cutoff, diameter * RADIAL_FLOOR)
    return r_lo, r_hi


def radial_offsets(
    block: DrawBlock, n: int, r_lo: float, r_hi: float
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Offsets h with uniform direction and log-uniform |h| in [r_lo, r_hi].

    Uses n + 1 draws.

    :return: (h, |h|, 1/density(h)), the last equal to n·ω_n·|h|^n·ln(r_hi/r_lo).
    """
    direction = block.sphere(n)
    log_ratio = math.log(r_hi / r_lo)
    r = r_lo * np.exp(block.take(1)[:, 0] * log_ratio)
    inverse_density = unit_sphere_area(n) * r**n * log_ratio
    return direction * r[:, None], r, inverse_density
