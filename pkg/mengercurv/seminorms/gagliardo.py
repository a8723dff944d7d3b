import numpy as np

from mengercurv.core.exceptions import ArgumentError, UnsupportedOperationError
from mengercurv.core.schemes import Estimate
from mengercurv.funcspace.domain import Domain
from mengercurv.funcspace.models import FunctionModel
from mengercurv.helpers.montecarlo import log_estimate, mean_estimate, sample_stream
from mengercurv.helpers.quadrature import geometric_panels, panel_rule, uniform_panels
from mengercurv.seminorms._radial import radial_bounds, radial_offsets


def _root(estimate: Estimate, p: float) -> Estimate:
    """p-th root of a p-th power estimate, stderr by the delta method."""
    power = estimate.value
    value = power ** (1.0 / p) if power > 0.0 else 0.0
    stderr = estimate.stderr * value / (p * power) if power > 0.0 else 0.0
    return estimate.model_copy(
        update={
            "value": value,
            "stderr": stderr,
            "details": {
                **estimate.details,
                "pth_power": power,
                "pth_power_stderr": estimate.stderr,
            },
        }
    )


def gagliardo_seminorm(
    f: FunctionModel,
    domain: Domain,
    s: float,
    p: float,
    samples: int = 200_000,
    seed: int = 0,
    threads: int = 1,
    depth: int = 48,
    panels: int = 64,
) -> Estimate:
    """
    The Gagliardo seminorm of ∇f,

        (∫_U ∫_U |∇f(x) − ∇f(y)|^p / |x − y|^{n+sp} dx dy)^{1/p}.

    Deterministic for n = 1, Monte Carlo with log-radial offsets otherwise.
    The p-th power and its error are echoed in ``details``.

    :raises UnsupportedOperationError: If f has no analytic gradient.
    """
    if not f.has_gradient:
        raise UnsupportedOperationError(
            f"{f.name} has no analytic gradient; the Gagliardo seminorm is not offered"
        )
    if not 0.0 < s < 1.0:
        raise ArgumentError(f"s must lie in (0, 1), got {s}")
    if domain.dimension == 1:
        return _root(_quadrature_1d(f, domain, s, p, depth, panels), p)
    return _root(_monte_carlo(f, domain, s, p, samples, seed, threads), p)


def _quadrature_1d(f, domain, s, p, depth, panels) -> Estimate:
    # 2 ∫_0^L t^{−1−sp} ∫_a^{b−t} |f'(x+t) − f'(x)|^p dx dt
    lower, upper = domain.bounding_box()
    a, b = float(lower[0]), float(upper[0])
    length = b - a
    ts, t_weights = panel_rule(geometric_panels(0.0, length, depth), order=8)
    reference, reference_weights = panel_rule(uniform_panels(0.0, 1.0, panels), order=8)

    total = 0.0
    for t, weight in zip(ts, t_weights):
        width = length - t
        x = (a + width * reference)[:, None]
        jump = f.gradient(x + t)[:, 0] - f.gradient(x)[:, 0]
        inner = width * float(np.sum(reference_weights * np.abs(jump) ** p))
        total += 2.0 * weight * inner * t ** (-1.0 - s * p)

    estimate = Estimate(
        value=total, samples=ts.size * reference.size, deterministic=True, mode="quadrature"
    )
    log_estimate(estimate)
    return estimate


def _monte_carlo(f, domain, s, p, samples, seed, threads) -> Estimate:
    n = domain.dimension
    r_lo, r_hi = radial_bounds(2.0 * domain.diameter, 0.0)

    def kernel(block):
        x = domain.sample(block)
        h, r, inverse_density = radial_offsets(block, n, r_lo, r_hi)
        inside = domain.contains(x + h)
        values = np.zeros(block.count)
        if np.any(inside):
            xi, yi = x[inside], x[inside] + h[inside]
            jump = np.linalg.norm(f.gradient(yi) - f.gradient(xi), axis=-1)
            values[inside] = (
                jump**p / r[inside] ** (n + s * p) * inverse_density[inside]
            )
        return values, inside

    values, inside = sample_stream(
        kernel,
        samples,
        domain.draws_per_point() + n + 1,
        seed,
        threads=threads,
        label="gagliardo seminorm",
    )
    return mean_estimate(
        values,
        seed,
        scale=domain.volume,
        acceptance_ratio=float(np.mean(inside)),
        mode="monte-carlo",
    )
