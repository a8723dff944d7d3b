from abc import ABC, abstractmethod
from typing import Any

from mengercurv.actions._resolve import resolve_domain, resolve_function, samples_or
from mengercurv.actions.dorronsoro.schemes import DorronsoroRequest
from mengercurv.cli.schemes import RunConfig
from mengercurv.core.schemes import CommandResult, Estimate
from mengercurv.funcspace.params import EnergyParams
from mengercurv.helpers.report import ResultBuilder
from mengercurv.seminorms import dorronsoro_seminorm

DEFAULT_SAMPLES = 20_000


class DorronsoroActionInterface(ABC):
    """
    Interface for the Dorronsoro functional ⟦f⟧^p.
    """

    @abstractmethod
    def run(self, config: RunConfig, params: EnergyParams) -> CommandResult:
        pass

    @abstractmethod
    def _estimate(self, request: DorronsoroRequest) -> Estimate:
        pass


class AbstractDorronsoroAction(DorronsoroActionInterface):
    def __init__(self, client: Any):
        self.client = client

    def _build_request(
        self, config: RunConfig, params: EnergyParams
    ) -> DorronsoroRequest:
        """
        Compactly supported functions are integrated over their support; for
        the others the bounding box of ``--domain`` is used.
        """
        domain = resolve_domain(config)
        function = resolve_function(config, domain.dimension)
        box = None if function.support is not None else domain.bounding_box()
        return DorronsoroRequest(
            function=function,
            params=params,
            box=box,
            t_min=config.t_min,
            t_max=config.t_max,
            samples=samples_or(config, DEFAULT_SAMPLES),
            seed=config.seed,
        )


class DorronsoroAction(AbstractDorronsoroAction):
    def run(self, config: RunConfig, params: EnergyParams) -> CommandResult:
        """
        Estimates ⟦f⟧^p, the truncated integral plus the analytic tail.

        Args:
            config: The validated run configuration.
            params: Exponents; only s and p are used.
        """
        request = self._build_request(config, params)
        estimate = self._estimate(request)
        return (
            ResultBuilder("dorronsoro")
            .add_config(config.echo())
            .add_estimate(estimate)
            .add_details(function=request.function.name)
            .build()
        )

    def _estimate(self, request: DorronsoroRequest) -> Estimate:
        return dorronsoro_seminorm(
            request.function,
            request.params.s,
            request.params.p,
            t_min=request.t_min,
            t_max=request.t_max,
            box=request.box,
            samples=request.samples,
            seed=request.seed,
            threads=self.client.threads,
        )
