import math
from typing import Optional

from mengercurv.cli.schemes import RunConfig
from mengercurv.core.exceptions import ArgumentError, ConfigError
from mengercurv.funcspace.params import EnergyParams, derive_q

Q_TOLERANCE = 1e-12

NEEDS_SMOOTHNESS = {
    ("energy", None),
    ("seminorm", None),
    ("dorronsoro", None),
    ("verify", "equivalence"),
    ("verify", "dorronsoro"),
    ("verify", "codivergence"),
    ("verify", "scaling"),
}
NEEDS_P_ONLY = {("knot", None), ("verify", "graph-energy")}


class RunConfigValidator:
    """
    Checks a run configuration against the exponent constraints
    before anything is computed.

    It rebuilds EnergyParams from (n, s, p), and compares a supplied q with the
    derived one, so q can never be chosen independently.
    """

    def __init__(self, config: RunConfig):
        """
        Initializes the RunConfigValidator with the configuration.

        Args:
            config (RunConfig): The parsed configuration.
        """
        self.config = config

    def validate(self, n: int) -> Optional[EnergyParams]:
        """
        Validates the exponents of the command.

        Args:
            n (int): Dimension of the configured domain.

        Returns:
            EnergyParams for commands that need (n, s, p), otherwise None.

        Raises:
            ConfigError: Naming the offending field.
        """
        config = self.config
        if config.n is not None and config.n != n:
            raise ConfigError(f"n={config.n} but the domain has dimension {n}", "n")
        key = (config.command, config.experiment)

        if key in NEEDS_P_ONLY:
            if config.p is None:
                raise ConfigError("required by this command", "p")
            if not 0.0 < config.p < math.inf:
                raise ConfigError("must be positive and finite", "p")
            return None
        if key not in NEEDS_SMOOTHNESS:
            return None

        for field in ("s", "p"):
            if getattr(config, field) is None:
                raise ConfigError("required by this command", field)
        try:
            expected = derive_q(n, config.s, config.p)
        except ArgumentError as e:
            field = e.message.split()[0]
            raise ConfigError(e.message, field) from e
        if config.q is not None and abs(config.q - expected) > Q_TOLERANCE:
            raise ConfigError(
                f"q={config.q!r} differs from the derived q={expected!r}", "q"
            )
        return EnergyParams(n=n, s=config.s, p=config.p)
