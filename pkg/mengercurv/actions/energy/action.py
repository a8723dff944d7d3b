from abc import ABC, abstractmethod
from typing import Any

from mengercurv.actions._resolve import (
    resolve_domain,
    resolve_function,
    sampler_config,
    samples_or,
)
from mengercurv.actions.energy.schemes import EnergyRequest
from mengercurv.cli.schemes import RunConfig
from mengercurv.core.exceptions import ConfigError
from mengercurv.core.schemes import CommandResult, Estimate
from mengercurv.energy import energy_pq_mc, energy_pq_quadrature_1d
from mengercurv.energy.monte_carlo import DEFAULT_SAMPLES
from mengercurv.funcspace.params import EnergyParams
from mengercurv.helpers.report import ResultBuilder


class EnergyActionInterface(ABC):
    """
    Interface for estimating the curvature energy E_{p,q}.
    """

    @abstractmethod
    def run(self, config: RunConfig, params: EnergyParams) -> CommandResult:
        """
        Estimates the energy described by the configuration.
        """
        pass

    @abstractmethod
    def _estimate(self, request: EnergyRequest) -> Estimate:
        """
        Runs the estimator.
        """
        pass


class AbstractEnergyAction(EnergyActionInterface):
    """
    Abstract class building energy requests from a run configuration.

    Attributes:
        client: The MengerClient carrying execution settings.
    """

    def __init__(self, client: Any):
        self.client = client

    def _build_request(self, config: RunConfig, params: EnergyParams) -> EnergyRequest:
        domain = resolve_domain(config)
        if config.method == "quadrature" and domain.dimension != 1:
            raise ConfigError("the quadrature oracle exists for n = 1 only", "method")
        return EnergyRequest(
            function=resolve_function(config, domain.dimension),
            domain=domain,
            params=params,
            sampler=sampler_config(config),
            method=config.method,
            samples=samples_or(config, DEFAULT_SAMPLES),
            seed=config.seed,
            diameter_cutoff=config.cutoff,
        )


class EnergyAction(AbstractEnergyAction):
    """
    Concrete energy action: Monte Carlo by default, quadrature on request.
    """

    def run(self, config: RunConfig, params: EnergyParams) -> CommandResult:
        """
        Estimates E_{p,q}(f) over U.

        Args:
            config: The validated run configuration.
            params: Exponents checked by RunConfigValidator.

        Returns:
            CommandResult: value, stderr and per-stratum rows.
        """
        request = self._build_request(config, params)
        estimate = self._estimate(request)
        return (
            ResultBuilder("energy")
            .add_config(config.echo())
            .add_estimate(estimate, rows_from="strata")
            .add_details(function=request.function.name, q=params.q)
            .build()
        )

    def _estimate(self, request: EnergyRequest) -> Estimate:
        if request.method == "quadrature":
            return energy_pq_quadrature_1d(
                request.function,
                request.domain,
                request.params,
                degeneracy_tol=self.client.degeneracy_tol,
            )
        return energy_pq_mc(
            request.function,
            request.domain,
            request.params,
            request.sampler,
            request.samples,
            request.seed,
            diameter_cutoff=request.diameter_cutoff,
            **self.client.execution_options(),
        )
