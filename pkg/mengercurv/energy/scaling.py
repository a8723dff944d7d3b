"""Scaling law of the energy under f_λ(x) = λ^{1+s} g(x/λ)."""

from typing import Optional, Sequence

import numpy as np
from scipy.stats import linregress

from mengercurv.core.exceptions import ArgumentError
from mengercurv.energy.monte_carlo import DEFAULT_SAMPLES, energy_pq_mc
from mengercurv.energy.schemes import SamplerConfig, ScalingReport
from mengercurv.funcspace.domain import BoxDomain, Domain
from mengercurv.funcspace.models import FunctionModel
from mengercurv.funcspace.params import EnergyParams
from mengercurv.geometry.kernels import COLLINEAR_TOL


def _require_support_inside(g: FunctionModel, domain: Domain) -> None:
    lower, upper = domain.bounding_box()
    inside = np.all(g.support[0] >= lower) and np.all(g.support[1] <= upper)
    if not inside or not bool(np.all(domain.contains((g.support[0] + g.support[1]) / 2))):
        raise ArgumentError(f"the support of {g.name} escapes the domain")


def energy_scaling_probe(
    g: FunctionModel,
    params: EnergyParams,
    lambdas: Sequence[float] = (1.0, 2.0, 4.0, 8.0),
    seed: int = 0,
    samples: int = DEFAULT_SAMPLES,
    domain: Optional[Domain] = None,
    coupled: bool = True,
    sampler: SamplerConfig = SamplerConfig(),
    threads: int = 1,
    degeneracy_tol: float = COLLINEAR_TOL,
) -> ScalingReport:
    """
    Fits the slope of log E(f_λ; λU) against log λ.

    Coupled mode reuses one seed for every λ, so each sampled tuple of λU is
    λ times the tuple of U and the slope equals the exponent
    n(n+2) + p(n+1+s) − (n+2)q up to rounding; with the derived q that is n.
    Uncoupled mode gives every λ its own seed and fits a weighted line.

    :param domain: Defaults to the support box of g grown by half its diameter.
    :raises ArgumentError: If g is not compactly supported, its support leaves
        the domain, or some λ < 1.
    """
    if g.support is None:
        raise ArgumentError(f"{g.name} is not compactly supported")
    lambdas = [float(lam) for lam in lambdas]
    if len(lambdas) < 2 or min(lambdas) < 1.0:
        raise ArgumentError("need at least two scales, all >= 1")
    if domain is None:
        margin = 0.5 * float(np.linalg.norm(g.support[1] - g.support[0]))
        domain = BoxDomain.full_space(g.support[0], g.support[1], margin)
    _require_support_inside(g, domain)

    estimates = [
        energy_pq_mc(
            g.rescaled(lam, params.s),
            domain.scaled(lam),
            params,
            sampler=sampler,
            samples=samples,
            seed=seed if coupled else seed + index,
            threads=threads,
            degeneracy_tol=degeneracy_tol,
        )
        for index, lam in enumerate(lambdas)
    ]

    x = np.log(lambdas)
    y = np.log([estimate.value for estimate in estimates])
    if coupled:
        fit = linregress(x, y)
        slope, slope_stderr = float(fit.slope), float(fit.stderr)
    else:
        sigma = np.array([e.relative_error for e in estimates])
        coefficients, covariance = np.polyfit(x, y, 1, w=1.0 / sigma, cov="unscaled")
        slope, slope_stderr = float(coefficients[0]), float(np.sqrt(covariance[0, 0]))

    return ScalingReport(
        lambdas=lambdas,
        estimates=estimates,
        slope=slope,
        slope_stderr=slope_stderr,
        expected_slope=params.scaling_exponent(),
        coupled=coupled,
        q=params.q,
    )
