"""Equivalence-ratio experiments.

Every catalog member is estimated with the same seeds, so amplitude copies
c·f reproduce the ratio of f up to rounding and do not move the bracket.
"""

import math
from typing import Iterable, List, Literal, Optional, Sequence, Union

from loguru import logger

from mengercurv.core.exceptions import ArgumentError
from mengercurv.core.schemes import Estimate
from mengercurv.energy.monte_carlo import DEFAULT_SAMPLES, energy_pq_mc
from mengercurv.energy.schemes import SamplerConfig
from mengercurv.funcspace.domain import Domain
from mengercurv.funcspace.models import FunctionModel
from mengercurv.funcspace.norms import lp_norm
from mengercurv.funcspace.params import EnergyParams
from mengercurv.geometry.kernels import COLLINEAR_TOL
from mengercurv.seminorms.dorronsoro import dorronsoro_seminorm
from mengercurv.seminorms.second_difference import second_diff_seminorm
from mengercurv.verify.schemes import RatioReport, RatioRow, StabilityReport

STABILITY_THRESHOLD = 0.10


def pooled(estimates: Sequence[Estimate]) -> Estimate:
    """Mean of independent estimates of one quantity."""
    if len(estimates) == 1:
        return estimates[0]
    k = len(estimates)
    first = estimates[0]
    return first.model_copy(
        update={
            "value": sum(e.value for e in estimates) / k,
            "stderr": math.sqrt(sum(e.stderr**2 for e in estimates)) / k,
            "samples": sum(e.samples for e in estimates),
            "invalid_sample_count": sum(e.invalid_sample_count for e in estimates),
            "converged": all(e.converged for e in estimates),
            "diagnostics": [d for e in estimates for d in e.diagnostics],
            "details": {"seeds": [e.seed for e in estimates]},
        }
    )


def _plus(a: Estimate, b: Estimate) -> Estimate:
    return a.model_copy(
        update={
            "value": a.value + b.value,
            "stderr": math.hypot(a.stderr, b.stderr),
            "deterministic": a.deterministic and b.deterministic,
        }
    )


def _ratio_row(name: str, numerator: Estimate, denominator: Estimate) -> RatioRow:
    if not denominator.converged:
        return RatioRow(
            name=name,
            numerator=numerator,
            denominator=denominator,
            excluded=True,
            flag="seminorm refinement did not converge",
        )
    if denominator.value <= 0.0 or numerator.value <= 0.0:
        return RatioRow(
            name=name,
            numerator=numerator,
            denominator=denominator,
            excluded=True,
            flag="zero seminorm or energy",
        )
    ratio = numerator.value / denominator.value
    return RatioRow(
        name=name,
        numerator=numerator,
        denominator=denominator,
        ratio=ratio,
        ratio_stderr=ratio * math.hypot(numerator.relative_error, denominator.relative_error),
    )


def equivalence_experiment(
    catalog: Iterable[FunctionModel],
    params: EnergyParams,
    domain: Domain,
    seeds: Union[int, Sequence[int]] = 0,
    samples: int = DEFAULT_SAMPLES,
    numerator: Literal["energy", "dorronsoro"] = "energy",
    include_lp: bool = False,
    spread_bound: Optional[float] = None,
    sampler: SamplerConfig = SamplerConfig(),
    threads: int = 1,
    degeneracy_tol: float = COLLINEAR_TOL,
) -> RatioReport:
    """
    Ratios numerator/[f]^p over a catalog with their bracket.

    ``numerator="energy"`` compares E_{p,q}(f) with [f]^p; ``"dorronsoro"``
    compares ⟦f⟧^p with [f]^p and excludes members without compact support.
    With ``include_lp`` both sides get ‖f‖_p^p added, the full-norm form.
    Members whose seminorm refinement is flagged are excluded with a reason.
    """
    seeds = [seeds] if isinstance(seeds, int) else list(seeds)
    if not seeds:
        raise ArgumentError("need at least one seed")

    rows: List[RatioRow] = []
    for f in catalog:
        if numerator == "dorronsoro" and f.support is None:
            rows.append(RatioRow(name=f.name, excluded=True, flag="non-compact support"))
            continue

        denominator = pooled(
            [
                second_diff_seminorm(
                    f, domain, params.s, params.p, samples=samples, seed=seed, threads=threads
                )
                for seed in seeds
            ]
        )
        if numerator == "energy":
            top = pooled(
                [
                    energy_pq_mc(
                        f,
                        domain,
                        params,
                        sampler=sampler,
                        samples=samples,
                        seed=seed,
                        threads=threads,
                        degeneracy_tol=degeneracy_tol,
                    )
                    for seed in seeds
                ]
            )
        else:
            top = pooled(
                [
                    dorronsoro_seminorm(
                        f, params.s, params.p, samples=samples, seed=seed, threads=threads
                    )
                    for seed in seeds
                ]
            )
        if include_lp:
            lp = lp_norm(f, domain, params.p, samples=samples, seed=seeds[0], threads=threads)
            top, denominator = _plus(top, lp), _plus(denominator, lp)

        row = _ratio_row(f.name, top, denominator)
        logger.info(f"Ratio for {f.name}: {row.ratio if row.ratio else row.flag}")
        rows.append(row)

    ratios = [row.ratio for row in rows if not row.excluded]
    report = RatioReport(
        n=params.n,
        s=params.s,
        p=params.p,
        q=params.q,
        numerator_kind=numerator,
        include_lp=include_lp,
        rows=rows,
        spread_bound=spread_bound,
    )
    if not ratios:
        return report

    low, high = min(ratios), max(ratios)
    spread = high / low
    return report.model_copy(
        update={
            "min_ratio": low,
            "max_ratio": high,
            "spread": spread,
            "within_bound": None if spread_bound is None else spread <= spread_bound,
        }
    )


def equivalence_stability(
    catalog: Sequence[FunctionModel],
    params: EnergyParams,
    domain: Domain,
    samples: int = DEFAULT_SAMPLES,
    factor: int = 4,
    seed: int = 0,
    threshold: float = STABILITY_THRESHOLD,
    **options,
) -> StabilityReport:
    """
    Reruns the experiment with ``factor`` times the samples and compares spreads.

    Extra keywords go to `equivalence_experiment`.
    """
    base = equivalence_experiment(catalog, params, domain, seed, samples, **options)
    refined = equivalence_experiment(catalog, params, domain, seed, samples * factor, **options)
    if base.spread is None or refined.spread is None:
        return StabilityReport(
            base=base, refined=refined, factor=factor, threshold=threshold, stable=False
        )
    change = abs(refined.spread - base.spread) / base.spread
    return StabilityReport(
        base=base,
        refined=refined,
        factor=factor,
        relative_change=change,
        threshold=threshold,
        stable=change < threshold,
    )
