import math
from typing import Tuple

import numpy as np

from mengercurv.core.exceptions import ArgumentError
from mengercurv.core.schemes import Estimate
from mengercurv.funcspace.domain import Domain
from mengercurv.funcspace.models import FunctionModel
from mengercurv.funcspace.params import EnergyParams
from mengercurv.geometry.kernels import COLLINEAR_TOL, k_pq_kernel_batch
from mengercurv.helpers.montecarlo import log_estimate
from mengercurv.helpers.quadrature import (
    MIN_SCALE,
    log_panels,
    panel_rule,
    power_slab,
    relative_change,
    small_scale_floor,
    uniform_panels,
)

CONVERGENCE_TOL = 0.01
ORDER = 8

InnerRule = Tuple[np.ndarray, np.ndarray, np.ndarray]


def _inner_rule(theta_panels: int, base_panels: int) -> InnerRule:
    thetas, theta_weights = panel_rule(uniform_panels(0.0, 1.0, theta_panels), ORDER)
    bases, base_weights = panel_rule(uniform_panels(0.0, 1.0, base_panels), ORDER)
    theta_grid, base_grid = np.meshgrid(thetas, bases, indexing="ij")
    weights = np.multiply.outer(theta_weights, base_weights).reshape(-1)
    return theta_grid.reshape(-1), base_grid.reshape(-1), weights


def _density(
    f: FunctionModel,
    a: float,
    length: float,
    params: EnergyParams,
    d: float,
    rule: InnerRule,
    tol: float,
) -> float:
    """The D-integrand: 6·D·(L − D) times the mean of K_{p,q} over θ and x_0."""
    thetas, bases, weights = rule
    x0 = a + (length - d) * bases
    x = np.stack([x0, x0 + thetas * d, x0 + d], axis=1)[..., None]
    values, _ = k_pq_kernel_batch(x, f(x), params.p, params.q, tol)
    return 6.0 * d * (length - d) * float(np.sum(weights * values))


def _integrate(
    f: FunctionModel,
    a: float,
    length: float,
    params: EnergyParams,
    depth: int,
    rule: InnerRule,
    tol: float,
) -> Tuple[float, float, int]:
    """
    :return: (value, part below the small-scale floor, kernel evaluations)
    """
    floor = small_scale_floor(length, depth)
    ds, d_weights = panel_rule(log_panels(floor, length, depth), ORDER)
    body = sum(w * _density(f, a, length, params, d, rule, tol) for d, w in zip(ds, d_weights))

    # For C² functions the lifted area is ~D³, so the integrand is ~D^{3p+1−3q}.
    exponent = 3.0 * params.p + 1.0 - 3.0 * params.q
    slab = power_slab(_density(f, a, length, params, floor, rule, tol), floor, exponent)
    return body + slab, slab, (ds.size + 1) * rule[2].size


def energy_pq_quadrature_1d(
    f: FunctionModel,
    domain: Domain,
    params: EnergyParams,
    depth: int = 32,
    theta_panels: int = 8,
    base_panels: int = 16,
    degeneracy_tol: float = COLLINEAR_TOL,
) -> Estimate:
    """
    Deterministic E_{p,q}(f) for n = 1.

    Ordering the three points and writing x_1 = x_0 + θD, x_2 = x_0 + D gives

        E = 6 ∫_0^L ∫_0^1 ∫_a^{b−D} K_{p,q}(x_0, x_0 + θD, x_0 + D)·D dx_0 dθ dD,

    integrated with Gauss–Legendre panels of equal ratio in D down to the
    small-scale floor. Below the floor, where differences of f lose their
    digits, the D-integrand is continued by its power law.

    The same integral is repeated with half the D, θ and x_0 panels; the
    result is flagged, not raised, when the two differ by more than 1%.
    """
    if params.n != 1 or domain.dimension != 1:
        raise ArgumentError("the quadrature oracle is for n = 1")
    if depth < 2 or theta_panels < 1 or base_panels < 1:
        raise ArgumentError("quadrature needs depth >= 2 and at least one θ and x_0 panel")
    lower, upper = domain.bounding_box()
    a, b = float(lower[0]), float(upper[0])
    length = b - a

    fine_rule = _inner_rule(theta_panels, base_panels)
    coarse_rule = _inner_rule(max(theta_panels // 2, 1), max(base_panels // 2, 1))
    value, slab, evaluations = _integrate(
        f, a, length, params, depth, fine_rule, degeneracy_tol
    )
    coarse, _, _ = _integrate(f, a, length, params, depth // 2, coarse_rule, degeneracy_tol)
    change = relative_change(value, coarse)

    estimate = Estimate(
        value=value,
        samples=evaluations,
        deterministic=True,
        mode="quadrature",
        details={
            "depth": depth,
            "coarse_value": coarse,
            "relative_change": change,
            "min_scale": MIN_SCALE,
            "small_scale_slab": slab,
        },
    )
    if not math.isfinite(value):
        estimate = estimate.flagged("quadrature value is not finite")
    elif change > CONVERGENCE_TOL:
        estimate = estimate.flagged(
            f"refinement not converged: halving the panels changes the value by {change:.2%}"
        )
    log_estimate(estimate)
    return estimate
