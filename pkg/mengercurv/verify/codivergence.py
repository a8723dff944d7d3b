"""Joint divergence probes of the seminorm and the energy.

Both quantities are truncated at a decreasing schedule of cutoffs ε: offsets
|h| < ε are dropped from [f]^p, tuples of diameter < ε from E_{p,q}. A finite
quantity settles as ε shrinks; an infinite one keeps growing. The
classification is a heuristic and never a proof of (non-)membership.
"""

import math
from typing import List, Sequence

from mengercurv.core.exceptions import ArgumentError
from mengercurv.core.schemes import Estimate
from mengercurv.energy.monte_carlo import DEFAULT_SAMPLES, energy_pq_mc_truncated
from mengercurv.energy.schemes import SamplerConfig
from mengercurv.funcspace.domain import Domain
from mengercurv.funcspace.models import FunctionModel
from mengercurv.funcspace.params import EnergyParams
from mengercurv.geometry.kernels import COLLINEAR_TOL
from mengercurv.seminorms.second_difference import second_diff_seminorm
from mengercurv.verify.schemes import Classification, CodivergenceReport

SETTLED_CHANGE = 0.05
GROWTH_PER_DECADE = 2.0


def classify(cutoffs: Sequence[float], values: Sequence[float]) -> Classification:
    """
    "converging" if the last step changes the value by less than 5%,
    "diverging" if the last step grows it by more than 2× per decade of ε.
    """
    previous, last = values[-2], values[-1]
    if last == 0.0 and previous == 0.0:
        return "converging"
    if last > 0.0 and abs(last - previous) / last < SETTLED_CHANGE:
        return "converging"
    decades = math.log10(cutoffs[-2] / cutoffs[-1])
    if previous > 0.0 and (last / previous) ** (1.0 / decades) > GROWTH_PER_DECADE:
        return "diverging"
    return "inconclusive"


def default_schedule(domain: Domain, steps: int = 5) -> List[float]:
    """Cutoffs diam(U)·10^{-1}, ..., diam(U)·10^{-steps}."""
    return [domain.diameter * 10.0 ** (-k) for k in range(1, steps + 1)]


def codivergence_probe(
    f: FunctionModel,
    params: EnergyParams,
    domain: Domain,
    cutoffs: Sequence[float] = (),
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    sampler: SamplerConfig = SamplerConfig(),
    threads: int = 1,
    degeneracy_tol: float = COLLINEAR_TOL,
) -> CodivergenceReport:
    """
    Truncated [f]^p and E_{p,q} along the schedule, classified and compared.

    All energy truncations come from one sample stream; the stratified
    sampler's r_min is lowered below the smallest cutoff when needed.

    :raises ArgumentError: Unless the schedule has >= 2 strictly decreasing cutoffs.
    """
    cutoffs = list(cutoffs) or default_schedule(domain)
    if len(cutoffs) < 2 or any(b >= a for a, b in zip(cutoffs, cutoffs[1:])):
        raise ArgumentError("the cutoff schedule must strictly decrease")
    if cutoffs[-1] <= 0.0:
        raise ArgumentError("cutoffs must be positive")

    r_min, _ = sampler.radii(domain.diameter)
    if sampler.mode == "stratified" and r_min > cutoffs[-1] / 2.0:
        sampler = sampler.model_copy(update={"r_min": cutoffs[-1] / 2.0})

    seminorm: List[Estimate] = [
        second_diff_seminorm(
            f,
            domain,
            params.s,
            params.p,
            cutoff=cutoff,
            samples=samples,
            seed=seed,
            threads=threads,
        )
        for cutoff in cutoffs
    ]
    energy = energy_pq_mc_truncated(
        f,
        domain,
        params,
        cutoffs,
        sampler=sampler,
        samples=samples,
        seed=seed,
        threads=threads,
        degeneracy_tol=degeneracy_tol,
    )

    seminorm_class = classify(cutoffs, [e.value for e in seminorm])
    energy_class = classify(cutoffs, [e.value for e in energy])
    inconclusive = "inconclusive" in (seminorm_class, energy_class)
    return CodivergenceReport(
        name=f.name,
        cutoffs=cutoffs,
        seminorm=seminorm,
        energy=energy,
        seminorm_class=seminorm_class,
        energy_class=energy_class,
        agree=seminorm_class == energy_class and not inconclusive,
        inconclusive=inconclusive,
    )
