"""Monte-Carlo estimators of E_{p,q}(f) = ∫_{U^{n+2}} K_{p,q} dx_0 ... dx_{n+1}."""

import math
from typing import List, Optional, Sequence

import numpy as np
from loguru import logger

from mengercurv.core.exceptions import ArgumentError, DiagnosticError
from mengercurv.core.schemes import Estimate
from mengercurv.energy.sampler import StratifiedTupleSampler, build_sampler
from mengercurv.energy.schemes import SamplerConfig
from mengercurv.funcspace.domain import Domain
from mengercurv.funcspace.models import FunctionModel
from mengercurv.funcspace.params import EnergyParams
from mengercurv.geometry.kernels import COLLINEAR_TOL, diameter_batch, k_pq_kernel_batch
from mengercurv.helpers.montecarlo import log_estimate, sample_stream

MIN_ACCEPTANCE = 1e-3
DEFAULT_SAMPLES = 200_000


class SampleStream:
    """Per-sample contributions of one seeded run, kept for several reductions."""

    def __init__(self, contributions, diameters, inside, accepted, invalid, sampler, seed):
        self.contributions = contributions
        self.diameters = diameters
        self.inside = inside
        self.accepted = accepted
        self.invalid = invalid
        self.sampler = sampler
        self.seed = seed

    @property
    def acceptance_ratio(self) -> float:
        return float(np.mean(self.accepted))

    def reduce(self, mask: Optional[np.ndarray] = None, **details) -> Estimate:
        """Estimate from the contributions selected by ``mask``."""
        values = self.contributions if mask is None else np.where(mask, self.contributions, 0.0)
        invalid = self.invalid if mask is None else self.invalid & mask
        count = values.shape[0]
        value = float(np.sum(values)) / count

        if isinstance(self.sampler, StratifiedTupleSampler):
            strata = self.sampler.strata
            by_stratum = values.reshape(-1, strata)
            per_stratum = by_stratum.shape[0]
            variances = (
                np.var(by_stratum, axis=0, ddof=1) if per_stratum > 1 else np.zeros(strata)
            )
            stderr = math.sqrt(float(np.sum(variances)) / per_stratum) / strata
            edges = self.sampler.r_min * np.exp(
                np.arange(strata + 1) / strata * self.sampler.log_ratio
            )
            details["strata"] = [
                {
                    "stratum": k,
                    "r_low": float(edges[k]),
                    "r_high": float(edges[k + 1]),
                    "mean": float(np.mean(by_stratum[:, k])),
                    "stderr": math.sqrt(float(variances[k]) / per_stratum),
                }
                for k in range(strata)
            ]
            details["r_min"] = self.sampler.r_min
            details["r_max"] = self.sampler.r_max
            mode = "stratified"
        else:
            stderr = float(np.std(values, ddof=1)) / math.sqrt(count) if count > 1 else 0.0
            mode = "uniform"

        estimate = Estimate(
            value=value,
            stderr=stderr,
            samples=count,
            seed=self.seed,
            invalid_sample_count=int(np.count_nonzero(invalid)),
            acceptance_ratio=self.acceptance_ratio,
            mode=mode,
            details=details,
        )
        log_estimate(estimate)
        return estimate


def energy_samples(
    f: FunctionModel,
    domain: Domain,
    params: EnergyParams,
    sampler: SamplerConfig = SamplerConfig(),
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    threads: int = 1,
    degeneracy_tol: float = COLLINEAR_TOL,
    restrict_to: Optional[Domain] = None,
) -> SampleStream:
    """
    Draws the tuples and evaluates K_{p,q}·(1/density) on each.

    :raises ArgumentError: If f and U disagree on the dimension n.
    :raises DiagnosticError: If fewer than 1e-3 of the tuples land in U.
    """
    if domain.dimension != params.n or f.dimension != params.n:
        raise ArgumentError(
            f"dimension mismatch: n={params.n}, domain {domain.dimension}, f {f.dimension}"
        )
    tuples = build_sampler(domain, sampler)
    total = sampler.total_samples(samples)

    def kernel(block):
        points, inverse_density, accepted = tuples(block)
        inside = accepted.copy()
        if restrict_to is not None:
            inside &= np.all(restrict_to.contains(points), axis=1)

        contributions = np.zeros(block.count)
        diameters = np.zeros(block.count)
        invalid = np.zeros(block.count, dtype=bool)
        if np.any(inside):
            chosen = points[inside]
            values, valid = k_pq_kernel_batch(
                chosen, f(chosen), params.p, params.q, degeneracy_tol
            )
            contributions[inside] = np.where(valid, values * inverse_density[inside], 0.0)
            diameters[inside] = diameter_batch(chosen)
            invalid[inside] = ~valid
        return contributions, diameters, inside, accepted, invalid

    contributions, diameters, inside, accepted, invalid = sample_stream(
        kernel,
        total,
        tuples.draws,
        seed,
        threads=threads,
        label="energy tuples",
    )
    stream = SampleStream(contributions, diameters, inside, accepted, invalid, tuples, seed)
    if stream.acceptance_ratio < MIN_ACCEPTANCE:
        raise DiagnosticError(
            f"acceptance ratio {stream.acceptance_ratio:.2e} below {MIN_ACCEPTANCE:g}: "
            "the sampled balls mostly leave the domain"
        )
    return stream


def energy_pq_mc(
    f: FunctionModel,
    domain: Domain,
    params: EnergyParams,
    sampler: SamplerConfig = SamplerConfig(),
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    threads: int = 1,
    degeneracy_tol: float = COLLINEAR_TOL,
    diameter_cutoff: float = 0.0,
    restrict_to: Optional[Domain] = None,
) -> Estimate:
    """
    Unbiased Monte-Carlo estimate of E_{p,q}(f) over U.

    :param diameter_cutoff: Tuples with domain diameter below it contribute 0.
    :param restrict_to: Only tuples lying entirely in this sub-domain contribute.
    """
    stream = energy_samples(
        f, domain, params, sampler, samples, seed, threads, degeneracy_tol, restrict_to
    )
    logger.debug(f"energy of {f.name}: q={params.q:.6g}, acceptance={stream.acceptance_ratio:.3f}")
    if diameter_cutoff > 0.0:
        return stream.reduce(stream.diameters >= diameter_cutoff, diameter_cutoff=diameter_cutoff)
    return stream.reduce()


def energy_pq_mc_truncated(
    f: FunctionModel,
    domain: Domain,
    params: EnergyParams,
    cutoffs: Sequence[float],
    sampler: SamplerConfig = SamplerConfig(),
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    threads: int = 1,
    degeneracy_tol: float = COLLINEAR_TOL,
) -> List[Estimate]:
    """Diameter-truncated energies for every cutoff, all from one sample stream."""
    stream = energy_samples(f, domain, params, sampler, samples, seed, threads, degeneracy_tol)
    return [
        stream.reduce(stream.diameters >= cutoff, diameter_cutoff=float(cutoff))
        for cutoff in cutoffs
    ]
