"""The Dorronsoro functional

    ⟦f⟧^p = ∫_0^∞ ∫_{R^n} Ω_f(x, t)^p / t^{1+p(1+s)} dx dt

for compactly supported f. Scales t ∈ [t_min, t_max] are sampled
log-uniformly and x uniformly in the support box grown by t, outside of which
every cube containing x misses the support and Ω vanishes. Scales above t_max
are covered by an analytic tail bound, scales below t_min are left out.
"""

import math
from typing import Optional, Tuple

import numpy as np

from mengercurv.core.exceptions import ArgumentError
from mengercurv.core.schemes import Estimate
from mengercurv.funcspace.models import FunctionModel
from mengercurv.helpers.montecarlo import CHUNK_SIZE, mean_estimate, sample_stream
from mengercurv.seminorms.affine import omega_batch
from mengercurv.seminorms.schemes import OmegaConfig

T_MIN_DIVISOR = 2.0**12
T_MAX_FACTOR = 4.0
# Function evaluations per chunk; fixes the chunk size for a given n and config.
_CHUNK_EVALUATIONS = 2**20


def omega_sup_constant(n: int) -> float:
    """
    C with Ω_f(x, t) ≤ C·sup|f|.

    On the reference cube |c0| ≤ sup|f| and each normalized slope is at most
    12·sup|f|/4, so |P_Q| ≤ (1 + 1.5n)·sup|f| and |f − P_Q| ≤ (2 + 1.5n)·sup|f|.
    """
    return 2.0 + 1.5 * n


def _support(f: FunctionModel, box) -> Tuple[np.ndarray, np.ndarray, bool]:
    if box is not None:
        lower, upper = box
        return (
            np.atleast_1d(np.asarray(lower, dtype=float)),
            np.atleast_1d(np.asarray(upper, dtype=float)),
            f.support is not None,
        )
    if f.support is None:
        raise ArgumentError(
            f"{f.name} is not compactly supported; pass an explicit spatial box"
        )
    return f.support[0], f.support[1], True


def sup_estimate(f: FunctionModel, lower, upper, per_axis: Optional[int] = None) -> float:
    """max |f| on a uniform grid over the box."""
    n = lower.size
    per_axis = per_axis or max(3, int(round(2.0 ** (16 / n))))
    axes = [np.linspace(a, b, per_axis) for a, b in zip(lower, upper)]
    mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)
    return float(np.max(np.abs(f(mesh))))


def tail_bound(n: int, s: float, p: float, sup: float, width: float, t_max: float) -> float:
    """
    Bound of the t > t_max part:
    (C·sup)^p · (width/t_max + 2)^n · t_max^{n − p(1+s)} / (p(1+s) − n).

    Infinite unless p(1+s) > n.
    """
    decay = p * (1.0 + s) - n
    if decay <= 0.0:
        return math.inf
    return (
        (omega_sup_constant(n) * sup) ** p
        * (width / t_max + 2.0) ** n
        * t_max ** (-decay)
        / decay
    )


def dorronsoro_seminorm(
    f: FunctionModel,
    s: float,
    p: float,
    t_min: Optional[float] = None,
    t_max: Optional[float] = None,
    box=None,
    samples: int = 20_000,
    seed: int = 0,
    threads: int = 1,
    config: OmegaConfig = OmegaConfig(),
) -> Estimate:
    """
    ⟦f⟧^p, the truncated integral plus the tail bound.

    ``details`` holds the two parts separately. A tail is only added for
    compactly supported f; with an explicit box and no known support the
    estimate is the truncated integral and carries a diagnostic.

    :param box: (lower, upper) containing the support; defaults to f.support.
    :raises ArgumentError: Without compact support or box, or on bad scales.
    """
    lower, upper, compact = _support(f, box)
    n = lower.size
    widths = upper - lower
    support_diameter = float(np.linalg.norm(widths))
    t_min = support_diameter / T_MIN_DIVISOR if t_min is None else float(t_min)
    t_max = T_MAX_FACTOR * support_diameter if t_max is None else float(t_max)
    if not 0.0 < t_min < t_max:
        raise ArgumentError("need 0 < t_min < t_max")

    log_ratio = math.log(t_max / t_min)
    exponent = 1.0 + p * (1.0 + s)
    per_sample = config.offsets**n * (config.fit_order**n + config.sup_grid**n)
    chunk_size = max(16, min(CHUNK_SIZE, _CHUNK_EVALUATIONS // per_sample))

    def kernel(block):
        t = t_min * np.exp(block.take(1)[:, 0] * log_ratio)
        grown = widths + 2.0 * t[:, None]
        x = lower - t[:, None] + block.take(n) * grown
        oscillation = omega_batch(f, x, t, config)
        volume = np.prod(grown, axis=1)
        return volume * t * log_ratio * oscillation**p / t**exponent

    (values,) = sample_stream(
        kernel,
        samples,
        n + 1,
        seed,
        threads=threads,
        chunk_size=chunk_size,
        label="dorronsoro functional",
    )
    truncated = mean_estimate(values, seed, mode="monte-carlo", t_min=t_min, t_max=t_max)

    if not compact:
        return truncated.model_copy(
            update={
                "details": {**truncated.details, "truncated": truncated.value, "tail": None},
                "diagnostics": ["support not known to be compact: no tail bound added"],
            }
        )

    sup = sup_estimate(f, f.support[0], f.support[1])
    tail = tail_bound(n, s, p, sup, float(np.max(widths)), t_max)
    details = {
        **truncated.details,
        "truncated": truncated.value,
        "tail": tail,
        "sup_estimate": sup,
        "offsets": config.offsets,
        "sup_grid": config.sup_grid,
    }
    if math.isinf(tail):
        return truncated.model_copy(update={"details": details}).flagged(
            "tail bound is infinite: p(1+s) <= n"
        )
    return truncated.model_copy(update={"value": truncated.value + tail, "details": details})
