from abc import ABC, abstractmethod
from typing import Any, List

from mengercurv.actions.knot.schemes import KnotEnergyRow, KnotRequest
from mengercurv.cli.schemes import RunConfig
from mengercurv.core.exceptions import ConfigError, MengerError
from mengercurv.core.schemes import CommandResult
from mengercurv.curves import (
    intermediate_energy_ip,
    kernel_energy_ep,
    menger_energy_mp,
    sup_energy_up,
)
from mengercurv.helpers.descriptors import parse_curve
from mengercurv.helpers.report import ResultBuilder

ENERGIES = {
    "mp": menger_energy_mp,
    "ip": intermediate_energy_ip,
    "up": sup_energy_up,
    "ep": kernel_energy_ep,
}


class KnotActionInterface(ABC):
    """
    Interface for discrete knot energies of closed polygons.
    """

    @abstractmethod
    def run(self, config: RunConfig) -> CommandResult:
        pass

    @abstractmethod
    def _evaluate(self, request: KnotRequest) -> List[KnotEnergyRow]:
        pass


class AbstractKnotAction(KnotActionInterface):
    def __init__(self, client: Any):
        self.client = client

    def _build_request(self, config: RunConfig) -> KnotRequest:
        try:
            curve = parse_curve(config.curve)
        except MengerError as e:
            raise ConfigError(e.message, "curve") from e
        energies = list(ENERGIES) if config.energy == "all" else [config.energy]
        return KnotRequest(curve=curve, p=config.p, energies=energies)


class KnotAction(AbstractKnotAction):
    def run(self, config: RunConfig) -> CommandResult:
        """
        Evaluates the selected energies; ``value`` is the first of them.

        Args:
            config: The validated run configuration.
        """
        request = self._build_request(config)
        rows = self._evaluate(request)
        return (
            ResultBuilder("knot")
            .add_config(config.echo())
            .add_value(rows[0].value)
            .add_details(
                energy=rows[0].energy,
                vertices=len(request.curve),
                length=request.curve.length,
            )
            .add_rows(row.model_dump() for row in rows)
            .build()
        )

    def _evaluate(self, request: KnotRequest) -> List[KnotEnergyRow]:
        options = self.client.execution_options()
        return [
            KnotEnergyRow(
                energy=name,
                value=ENERGIES[name](request.curve, request.p, **options),
                vertices=len(request.curve),
                length=request.curve.length,
            )
            for name in request.energies
        ]
