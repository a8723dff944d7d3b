from abc import ABC, abstractmethod
from typing import Any

from mengercurv.actions._resolve import resolve_domain, resolve_function, samples_or
from mengercurv.actions.seminorm.schemes import SeminormRequest
from mengercurv.cli.schemes import RunConfig
from mengercurv.core.exceptions import ConfigError
from mengercurv.core.schemes import CommandResult, Estimate
from mengercurv.funcspace.params import EnergyParams
from mengercurv.helpers.report import ResultBuilder
from mengercurv.seminorms import gagliardo_seminorm, second_diff_seminorm

DEFAULT_SAMPLES = 200_000


class SeminormActionInterface(ABC):
    """
    Interface for fractional seminorm estimates.
    """

    @abstractmethod
    def run(self, config: RunConfig, params: EnergyParams) -> CommandResult:
        pass

    @abstractmethod
    def _estimate(self, request: SeminormRequest) -> Estimate:
        pass


class AbstractSeminormAction(SeminormActionInterface):
    def __init__(self, client: Any):
        self.client = client

    def _build_request(self, config: RunConfig, params: EnergyParams) -> SeminormRequest:
        if config.kind == "gagliardo" and config.cutoff > 0.0:
            raise ConfigError("only the second-difference seminorm is truncated", "cutoff")
        domain = resolve_domain(config)
        return SeminormRequest(
            function=resolve_function(config, domain.dimension),
            domain=domain,
            params=params,
            kind=config.kind,
            mode=config.mode,
            cutoff=config.cutoff,
            samples=samples_or(config, DEFAULT_SAMPLES),
            seed=config.seed,
        )


class SeminormAction(AbstractSeminormAction):
    """
    Concrete seminorm action.
    """

    def run(self, config: RunConfig, params: EnergyParams) -> CommandResult:
        """
        Estimates [f]^p (or the Gagliardo seminorm of ∇f) on U.

        Args:
            config: The validated run configuration.
            params: Exponents; only s and p are used.

        Returns:
            CommandResult: The estimate with its diagnostics.
        """
        request = self._build_request(config, params)
        estimate = self._estimate(request)
        return (
            ResultBuilder("seminorm")
            .add_config(config.echo())
            .add_estimate(estimate)
            .add_details(function=request.function.name, kind=request.kind)
            .build()
        )

    def _estimate(self, request: SeminormRequest) -> Estimate:
        f, domain = request.function, request.domain
        s, p = request.params.s, request.params.p
        if request.kind == "gagliardo":
            return gagliardo_seminorm(
                f, domain, s, p, request.samples, request.seed, self.client.threads
            )
        return second_diff_seminorm(
            f,
            domain,
            s,
            p,
            cutoff=request.cutoff,
            mode=request.mode,
            samples=request.samples,
            seed=request.seed,
            threads=self.client.threads,
        )
