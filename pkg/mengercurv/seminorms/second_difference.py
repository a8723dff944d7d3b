"""The second-difference seminorm

    [f]^p = ∫_U ∫_{H_x} |f(x+h) − 2f(x) + f(x−h)|^p / |h|^{n+(1+s)p} dh dx.
"""

import math
from typing import Literal, Tuple

import numpy as np

from mengercurv.core.exceptions import ArgumentError
from mengercurv.core.schemes import Estimate
from mengercurv.funcspace.domain import Domain
from mengercurv.funcspace.models import FunctionModel
from mengercurv.helpers.montecarlo import log_estimate, mean_estimate, sample_stream
from mengercurv.helpers.quadrature import (
    log_panels,
    panel_rule,
    power_slab,
    relative_change,
    small_scale_floor,
    uniform_panels,
)
from mengercurv.seminorms._radial import radial_bounds, radial_offsets

CONVERGENCE_TOL = 0.01
MAX_X_PANELS = 2048
ORDER = 8


def second_difference(f: FunctionModel, x: np.ndarray, h: np.ndarray) -> np.ndarray:
    """Δ²_h f(x) on the last axis."""
    return f(x + h) - 2.0 * f(x) + f(x - h)


def _check(s: float, p: float, cutoff: float) -> None:
    if not 0.0 < s < 1.0:
        raise ArgumentError(f"s must lie in (0, 1), got {s}")
    if not p >= 1.0:
        raise ArgumentError(f"p must be >= 1, got {p}")
    if cutoff < 0.0:
        raise ArgumentError("cutoff must be >= 0")


def second_diff_seminorm(
    f: FunctionModel,
    domain: Domain,
    s: float,
    p: float,
    cutoff: float = 0.0,
    mode: Literal["auto", "quadrature", "monte-carlo"] = "auto",
    samples: int = 200_000,
    seed: int = 0,
    threads: int = 1,
    depth: int = 32,
    panels: int = 64,
) -> Estimate:
    """
    [f]^p over U, excluding offsets with |h| < cutoff.

    ``auto`` means quadrature for n = 1 and Monte Carlo otherwise.

    :param depth: Panels of equal ratio in |h| for the quadrature.
    :param panels: Uniform panels in x for the quadrature.
    """
    _check(s, p, cutoff)
    if mode == "auto":
        mode = "quadrature" if domain.dimension == 1 else "monte-carlo"
    if mode == "quadrature":
        if domain.dimension != 1:
            raise ArgumentError("quadrature mode needs n = 1")
        return _quadrature_1d(f, domain, s, p, cutoff, depth, panels)
    return _monte_carlo(f, domain, s, p, cutoff, samples, seed, threads)


def _h_density(f: FunctionModel, a: float, b: float, s: float, p: float, h: float, panels: int):
    """2·h^{−1−(1+s)p} ∫_{a+h}^{b−h} |Δ²_h f(x)|^p dx."""
    width = b - a - 2.0 * h
    # x panels no wider than h, so features of width ~h are resolved
    count = int(np.clip(np.ceil(width / h), panels, MAX_X_PANELS))
    reference, reference_weights = panel_rule(uniform_panels(0.0, 1.0, count), order=ORDER)
    x = a + h + width * reference
    delta = second_difference(f, x[:, None], np.array([h]))
    inner = width * float(np.sum(reference_weights * np.abs(delta) ** p))
    return 2.0 * inner * h ** (-1.0 - (1.0 + s) * p), count * ORDER


def _integrate_h(f, a, b, s, p, cutoff, depth, panels) -> Tuple[float, float, int]:
    half = (b - a) / 2.0
    floor = max(cutoff, small_scale_floor(half, depth))
    hs, h_weights = panel_rule(log_panels(floor, half, depth), order=ORDER)
    body, evaluations = 0.0, 0
    for h, weight in zip(hs, h_weights):
        density, nodes = _h_density(f, a, b, s, p, h, panels)
        body += weight * density
        evaluations += nodes
    slab = 0.0
    if floor > cutoff:
        # |Δ²_h f| ~ h² for C² functions
        density, nodes = _h_density(f, a, b, s, p, floor, panels)
        slab = power_slab(density, floor, 2.0 * p - 1.0 - (1.0 + s) * p, lower=cutoff)
        evaluations += nodes
    return body + slab, slab, evaluations


def _quadrature_1d(
    f: FunctionModel,
    domain: Domain,
    s: float,
    p: float,
    cutoff: float,
    depth: int,
    panels: int,
) -> Estimate:
    # [f]^p = 2 ∫_ε^{L/2} h^{−1−(1+s)p} ∫_{a+h}^{b−h} |Δ²_h f(x)|^p dx dh
    if depth < 2 or panels < 1:
        raise ArgumentError("quadrature needs depth >= 2 and at least one x panel")
    lower, upper = domain.bounding_box()
    a, b = float(lower[0]), float(upper[0])
    if cutoff >= (b - a) / 2.0:
        return Estimate(value=0.0, deterministic=True, mode="quadrature")

    value, slab, evaluations = _integrate_h(f, a, b, s, p, cutoff, depth, panels)
    coarse, _, _ = _integrate_h(f, a, b, s, p, cutoff, depth // 2, max(panels // 2, 1))
    change = relative_change(value, coarse)
    estimate = Estimate(
        value=value,
        samples=evaluations,
        deterministic=True,
        mode="quadrature",
        details={"coarse_value": coarse, "relative_change": change, "small_scale_slab": slab},
    )
    if change > CONVERGENCE_TOL:
        estimate = estimate.flagged(
            f"refinement not converged: halving the panels changes the value by {change:.2%}"
        )
    log_estimate(estimate)
    return estimate


def _monte_carlo(
    f: FunctionModel,
    domain: Domain,
    s: float,
    p: float,
    cutoff: float,
    samples: int,
    seed: int,
    threads: int,
) -> Estimate:
    n = domain.dimension
    r_lo, r_hi = radial_bounds(domain.diameter, cutoff)
    if r_lo >= r_hi:
        return Estimate(value=0.0, samples=0, seed=seed, mode="monte-carlo")

    def kernel(block):
        x = domain.sample(block)
        h, r, inverse_density = radial_offsets(block, n, r_lo, r_hi)
        admissible = domain.contains(x + h) & domain.contains(x - h)
        values = np.zeros(block.count)
        if np.any(admissible):
            xa, ha = x[admissible], h[admissible]
            delta = second_difference(f, xa, ha)
            values[admissible] = (
                np.abs(delta) ** p
                / r[admissible] ** (n + (1.0 + s) * p)
                * inverse_density[admissible]
            )
        return values, admissible

    values, admissible = sample_stream(
        kernel,
        samples,
        domain.draws_per_point() + n + 1,
        seed,
        threads=threads,
        label="second-difference seminorm",
    )
    return mean_estimate(
        values,
        seed,
        scale=domain.volume,
        acceptance_ratio=float(np.mean(admissible)),
        mode="monte-carlo",
        radial_floor=r_lo,
        log_radius_span=math.log(r_hi / r_lo),
    )
