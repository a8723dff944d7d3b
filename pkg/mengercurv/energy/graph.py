import numpy as np

from mengercurv.core.exceptions import (
    ArgumentError,
    DiagnosticError,
    UnsupportedOperationError,
)
from mengercurv.core.schemes import Estimate
from mengercurv.energy.monte_carlo import DEFAULT_SAMPLES, MIN_ACCEPTANCE
from mengercurv.energy.sampler import build_sampler
from mengercurv.energy.schemes import SamplerConfig
from mengercurv.funcspace.domain import Domain
from mengercurv.funcspace.models import FunctionModel
from mengercurv.geometry.kernels import COLLINEAR_TOL, k_kernel_batch
from mengercurv.helpers.montecarlo import mean_estimate, sample_stream


def area_factor(f: FunctionModel, points: np.ndarray) -> np.ndarray:
    """J(x) = sqrt(1 + |∇f(x)|²), the area element of the graph of f."""
    gradient = f.gradient(points)
    return np.sqrt(1.0 + np.sum(gradient**2, axis=-1))


def graph_energy_mc(
    f: FunctionModel,
    domain: Domain,
    p: float,
    sampler: SamplerConfig = SamplerConfig(),
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    threads: int = 1,
    degeneracy_tol: float = COLLINEAR_TOL,
) -> Estimate:
    """
    Integral Menger curvature of the graph Σ = {(x, f(x)) : x ∈ U},

        E_p(Σ) = ∫_{U^{n+2}} K(F(x_0), ..., F(x_{n+1}))^p ∏ J(x_i) dx,

    where K is measured entirely in R^{n+1}. Sampling reuses the tuple
    samplers of the domain.

    :raises UnsupportedOperationError: If f has no analytic gradient.
    """
    if not f.has_gradient:
        raise UnsupportedOperationError(f"{f.name} has no analytic gradient")
    if not p > 0.0:
        raise ArgumentError("p must be positive")
    tuples = build_sampler(domain, sampler)

    def kernel(block):
        points, inverse_density, inside = tuples(block)
        contributions = np.zeros(block.count)
        invalid = np.zeros(block.count, dtype=bool)
        if np.any(inside):
            chosen = points[inside]
            lifted = np.concatenate([chosen, f(chosen)[..., None]], axis=-1)
            values, valid = k_kernel_batch(lifted, degeneracy_tol)
            jacobian = np.prod(area_factor(f, chosen), axis=1)
            contributions[inside] = np.where(
                valid, values**p * jacobian * inverse_density[inside], 0.0
            )
            invalid[inside] = ~valid
        return contributions, inside, invalid

    contributions, inside, invalid = sample_stream(
        kernel,
        sampler.total_samples(samples),
        tuples.draws,
        seed,
        threads=threads,
        label="graph energy tuples",
    )
    acceptance = float(np.mean(inside))
    if acceptance < MIN_ACCEPTANCE:
        raise DiagnosticError(f"acceptance ratio {acceptance:.2e} below {MIN_ACCEPTANCE:g}")
    return mean_estimate(
        contributions,
        seed,
        invalid=int(np.count_nonzero(invalid)),
        acceptance_ratio=acceptance,
        mode=sampler.mode,
    )
