import math
from abc import ABC, abstractmethod
from typing import Any, Optional

from loguru import logger

from mengercurv.actions._resolve import (
    resolve_catalog,
    resolve_domain,
    resolve_function,
    resolve_point,
    sampler_config,
    samples_or,
)
from mengercurv.actions.verify.schemes import RatioCsvRow, VerifyRequest
from mengercurv.cli.schemes import RunConfig
from mengercurv.core.exceptions import ConfigError
from mengercurv.core.schemes import CommandResult
from mengercurv.energy import energy_scaling_probe
from mengercurv.funcspace.catalog import dorronsoro_catalog
from mengercurv.funcspace.params import EnergyParams
from mengercurv.helpers.report import ResultBuilder
from mengercurv.verify import (
    check_lemma_beta,
    codivergence_probe,
    equivalence_stability,
    estimate_ball_density,
    estimate_w_measure,
    graph_energy_comparison,
    kernel_circle_probe,
    laplace_identity_audit,
    random_tuples,
)

DEFAULT_SAMPLES = 200_000
SCALING_TOL = 1e-8
AGREEMENT_SIGMAS = 3.0

# Experiments that run over a catalog rather than a single function.
CATALOG_EXPERIMENTS = {"equivalence", "dorronsoro", "lemma-beta", "laplace", "codivergence"}
SINGLE_FUNCTION_EXPERIMENTS = {"scaling", "graph-energy"}


class VerifyActionInterface(ABC):
    """
    Interface for the verification experiments.
    """

    @abstractmethod
    def run(self, config: RunConfig, params: Optional[EnergyParams]) -> CommandResult:
        """
        Runs the experiment named by ``config.experiment``.
        """
        pass


class AbstractVerifyAction(VerifyActionInterface):
    """
    Abstract class resolving the catalog, domain and sampler of an experiment.

    Attributes:
        client: The MengerClient carrying execution settings.
    """

    def __init__(self, client: Any):
        self.client = client

    def _build_request(
        self, config: RunConfig, params: Optional[EnergyParams]
    ) -> VerifyRequest:
        domain = resolve_domain(config)
        n = domain.dimension
        if config.experiment in SINGLE_FUNCTION_EXPERIMENTS:
            functions = [resolve_function(config, n)]
        elif config.experiment == "dorronsoro" and not config.fn and config.catalog == "default":
            lower, upper = domain.bounding_box()
            functions = dorronsoro_catalog(n, lower, upper)
        elif config.experiment in CATALOG_EXPERIMENTS:
            functions = resolve_catalog(config, n, domain)
        else:
            functions = []
        return VerifyRequest(
            experiment=config.experiment,
            domain=domain,
            functions=functions,
            params=params,
            sampler=sampler_config(config),
            samples=samples_or(config, DEFAULT_SAMPLES),
            seed=config.seed,
        )

    def _builder(self, config: RunConfig) -> ResultBuilder:
        return ResultBuilder("verify").add_config(config.echo())


class VerifyAction(AbstractVerifyAction):
    """
    Concrete verification action; one method per experiment.
    """

    def run(self, config: RunConfig, params: Optional[EnergyParams]) -> CommandResult:
        """
        Runs one experiment and reports its pass/fail outcome.

        Args:
            config: The validated run configuration.
            params: Exponents, when the experiment needs them.

        Returns:
            CommandResult: ``passed`` is False when the experiment's assertion fails.
        """
        request = self._build_request(config, params)
        logger.info(f"Running experiment {request.experiment}")
        method = getattr(self, "_" + request.experiment.replace("-", "_"))
        return method(request, config, self._builder(config)).build()

    def _equivalence(self, request, config, builder, numerator="energy"):
        report = equivalence_stability(
            request.functions,
            request.params,
            request.domain,
            request.samples,
            factor=config.factor,
            seed=request.seed,
            numerator=numerator,
            include_lp=config.include_lp,
            spread_bound=config.spread_bound,
            sampler=request.sampler,
            **self.client.execution_options(),
        )
        refined = report.refined
        builder.add_details(
            numerator=numerator,
            base_spread=report.base.spread,
            refined_spread=refined.spread,
            relative_change=report.relative_change,
            threshold=report.threshold,
            min_ratio=refined.min_ratio,
            max_ratio=refined.max_ratio,
            q=refined.q,
        ).add_rows(RatioCsvRow.of(row).model_dump() for row in refined.rows)
        if refined.spread is not None:
            builder.add_value(refined.spread, request.seed)
        builder.add_verdict(report.stable, "spread not stable under sampling refinement")
        if refined.within_bound is not None:
            builder.add_verdict(refined.within_bound, "spread exceeds the configured bound")
        return builder

    def _dorronsoro(self, request, config, builder):
        return self._equivalence(request, config, builder, numerator="dorronsoro")

    def _lemma_beta(self, request, config, builder):
        n = request.domain.dimension
        tuples = random_tuples(request.domain, config.count, n + 2, request.seed)
        rows = []
        for f in request.functions:
            report = check_lemma_beta(f, tuples)
            rows.append(
                {
                    "name": f.name,
                    "checked": report.checked,
                    "violations": report.violations,
                    "worst_ratio": report.worst_ratio,
                    "slack": report.slack,
                }
            )
        builder.add_rows(rows).add_value(max(row["worst_ratio"] for row in rows), request.seed)
        violations = sum(row["violations"] for row in rows)
        return builder.add_details(violations=violations).add_verdict(
            violations == 0, f"{violations} tuples violate the volume bound"
        )

    def _w_measure(self, request, config, builder):
        domain = request.domain
        n = domain.dimension
        point = resolve_point(config, n)
        options = {"threads": self.client.threads}
        if point is None:
            estimate = estimate_w_measure(
                n, config.alpha, request.samples, request.seed, **options
            )
            builder.add_estimate(estimate)
            if n == 1:
                exact = 1.0 - config.alpha
                builder.add_details(exact=exact).add_verdict(
                    abs(estimate.value - exact) <= AGREEMENT_SIGMAS * estimate.stderr,
                    "W-measure disagrees with 1 - alpha",
                )
            return builder
        radius = config.radius if config.radius is not None else domain.diameter / 4.0
        estimate = estimate_w_measure(
            n, config.alpha, request.samples, request.seed, domain, point, radius, **options
        )
        density = estimate_ball_density(
            domain, point, radius, request.samples, request.seed, **options
        )
        return (
            builder.add_estimate(estimate)
            .add_details(radius=radius, ball_density=density.value)
            .add_verdict(estimate.value > 0.0, "no admissible tuples near the base point")
        )

    def _laplace(self, request, config, builder):
        rows = []
        for f in request.functions:
            summary = laplace_identity_audit(f, request.domain, config.count, request.seed)
            rows.append(
                {
                    "name": f.name,
                    "checked": summary.checked,
                    "max_relative_discrepancy": summary.max_relative_discrepancy,
                    "passed": summary.passed,
                }
            )
        worst = max(row["max_relative_discrepancy"] for row in rows)
        return (
            builder.add_rows(rows)
            .add_value(worst, request.seed)
            .add_verdict(all(row["passed"] for row in rows), "Laplace factorization fails")
        )

    def _codivergence(self, request, config, builder):
        rows = []
        for f in request.functions:
            report = codivergence_probe(
                f,
                request.params,
                request.domain,
                config.cutoffs,
                request.samples,
                request.seed,
                request.sampler,
                **self.client.execution_options(),
            )
            for cutoff, seminorm, energy in zip(report.cutoffs, report.seminorm, report.energy):
                rows.append(
                    {
                        "name": f.name,
                        "cutoff": cutoff,
                        "seminorm": seminorm.value,
                        "seminorm_stderr": seminorm.stderr,
                        "energy": energy.value,
                        "energy_stderr": energy.stderr,
                        "seminorm_class": report.seminorm_class,
                        "energy_class": report.energy_class,
                    }
                )
            if report.inconclusive:
                builder.add_diagnostic(f"{f.name}: classification inconclusive", converged=False)
            elif not report.agree:
                builder.add_verdict(
                    False,
                    f"{f.name}: seminorm {report.seminorm_class}, energy {report.energy_class}",
                )
        builder.add_rows(rows)
        return builder.add_verdict(True)

    def _scaling(self, request, config, builder):
        coupled = not config.uncoupled
        report = energy_scaling_probe(
            request.functions[0],
            request.params,
            config.lambdas,
            request.seed,
            request.samples,
            coupled=coupled,
            sampler=request.sampler,
            **self.client.execution_options(),
        )
        tolerance = (
            SCALING_TOL * max(1.0, abs(report.expected_slope))
            if coupled
            else max(AGREEMENT_SIGMAS * report.slope_stderr, SCALING_TOL)
        )
        return (
            builder.add_value(report.slope, request.seed, report.slope_stderr)
            .add_details(
                expected_slope=report.expected_slope, coupled=coupled, q=report.q
            )
            .add_rows(
                {"lambda": lam, "value": e.value, "stderr": e.stderr}
                for lam, e in zip(report.lambdas, report.estimates)
            )
            .add_verdict(
                abs(report.slope - report.expected_slope) <= tolerance,
                "fitted slope differs from the scaling exponent",
            )
        )

    def _kernel_circle(self, request, config, builder):
        rows = kernel_circle_probe(config.angles)
        return (
            builder.add_rows(row.model_dump() for row in rows)
            .add_value(rows[-1].four_k / rows[-1].curvature)
            .add_verdict(
                all(math.isclose(row.curvature, 1.0, rel_tol=1e-9) for row in rows),
                "Menger curvature on the unit circle differs from 1",
            )
        )

    def _graph_energy(self, request, config, builder):
        if config.p is None:
            raise ConfigError("required by this experiment", "p")
        estimate = graph_energy_comparison(
            request.functions[0],
            request.domain,
            config.p,
            request.samples,
            request.seed,
            request.sampler,
            **self.client.execution_options(),
        )
        return builder.add_estimate(estimate)
