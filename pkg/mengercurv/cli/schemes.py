import math
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

Command = Literal["energy", "seminorm", "dorronsoro", "knot", "verify", "report"]
Experiment = Literal[
    "equivalence",
    "dorronsoro",
    "lemma-beta",
    "w-measure",
    "laplace",
    "codivergence",
    "scaling",
    "kernel-circle",
    "graph-energy",
]

LIST_FIELDS = ("fn", "cutoffs", "lambdas", "angles")
BOOLEAN_FIELDS = ("debug", "uncoupled", "include_lp")
# Not echoed: they select where and how a run is shown, never what it computes.
RUN_ONLY_FIELDS = ("config", "out", "format", "threads", "debug")


def _token(value: Any) -> str:
    return repr(value) if isinstance(value, float) else str(value)


def parse_count(value: Any) -> int:
    """
    Positive integer, also written in scientific notation ("1e6").

    :raises ValueError: On fractions, non-positive or non-finite numbers.
    """
    if isinstance(value, bool):
        raise ValueError("not a count")
    number = float(value)
    if not math.isfinite(number) or number != int(number) or number < 1:
        raise ValueError(f"{value!r} is not a positive integer")
    return int(number)


class RunConfig(BaseModel):
    """
    Everything a CLI run depends on.

    ``q`` is optional and never free: when supplied it must equal the value
    derived from (n, s, p). The echo of a run (``echo()``) rebuilds the same
    configuration through ``to_argv``.
    """

    model_config = ConfigDict(extra="forbid")

    command: Command
    experiment: Optional[Experiment] = None
    path: Optional[Path] = Field(default=None, description="Saved result for `report`")

    n: Optional[int] = Field(default=None, ge=1)
    s: Optional[float] = None
    p: Optional[float] = None
    q: Optional[float] = None

    domain: str = "0,1"
    fn: List[str] = Field(default_factory=list)
    catalog: str = "default"
    curve: str = "circle:512"

    seed: int = Field(default=0, ge=0, lt=2**64)
    samples: Optional[int] = None
    sampler: Literal["stratified", "uniform"] = "stratified"
    strata: Optional[int] = Field(default=None, ge=1)
    r_min: Optional[float] = Field(default=None, gt=0.0)

    method: Literal["monte-carlo", "quadrature"] = "monte-carlo"
    mode: Literal["auto", "quadrature", "monte-carlo"] = "auto"
    kind: Literal["second-difference", "gagliardo"] = "second-difference"
    cutoff: float = Field(default=0.0, ge=0.0)
    t_min: Optional[float] = Field(default=None, gt=0.0)
    t_max: Optional[float] = Field(default=None, gt=0.0)
    energy: Literal["mp", "ip", "up", "ep", "all"] = "all"

    alpha: float = Field(default=0.5, gt=0.0, lt=1.0)
    point: Optional[str] = None
    radius: Optional[float] = Field(default=None, gt=0.0)
    count: int = Field(default=10_000, ge=1)
    cutoffs: List[float] = Field(default_factory=list)
    lambdas: List[float] = Field(default_factory=lambda: [1.0, 2.0, 4.0, 8.0])
    angles: List[float] = Field(default_factory=lambda: [0.5, 0.1, 0.01, 0.001])
    uncoupled: bool = False
    include_lp: bool = False
    factor: int = Field(default=4, ge=2)
    spread_bound: Optional[float] = Field(default=None, ge=1.0)

    config: Optional[Path] = None
    out: Optional[Path] = None
    format: Literal["json", "csv", "both"] = "json"
    threads: Optional[int] = Field(default=None, ge=1)
    debug: bool = False

    @field_validator("samples", mode="before")
    @classmethod
    def check_samples(cls, value):
        return None if value is None else parse_count(value)

    @field_validator(*LIST_FIELDS, mode="before")
    @classmethod
    def split_words(cls, value):
        if isinstance(value, str):
            return value.split()
        return value

    @model_validator(mode="after")
    def check_command(self) -> "RunConfig":
        if (self.command == "verify") != (self.experiment is not None):
            raise ValueError("an experiment is required by, and only by, `verify`")
        if (self.command == "report") != (self.path is not None):
            raise ValueError("a result path is required by, and only by, `report`")
        if self.t_min is not None and self.t_max is not None:
            if self.t_min >= self.t_max:
                raise ValueError("t_min must be below t_max")
        if any(a <= b for a, b in zip(self.cutoffs, self.cutoffs[1:])):
            raise ValueError("cutoffs must be strictly decreasing")
        return self

    def echo(self) -> Dict[str, Any]:
        """Fields that determine the result, as plain JSON values."""
        data = self.model_dump(mode="json", exclude=set(RUN_ONLY_FIELDS))
        return {key: value for key, value in data.items() if value is not None}

    def to_argv(self) -> List[str]:
        """Command-line tokens that parse back to this configuration."""
        argv: List[str] = [self.command]
        if self.experiment is not None:
            argv.append(self.experiment)
        if self.path is not None:
            argv.append(str(self.path))
        defaults = RunConfig.model_construct()
        for name in type(self).model_fields:
            if name in ("command", "experiment", "path"):
                continue
            value = getattr(self, name)
            default = getattr(defaults, name, None)
            if value is None or value == default:
                continue
            flag = "--" + name.replace("_", "-")
            if name in BOOLEAN_FIELDS:
                argv.append(flag)
            elif name in LIST_FIELDS:
                argv.extend([flag, *(_token(item) for item in value)])
            else:
                argv.append(f"{flag}={_token(value)}")
        return argv
