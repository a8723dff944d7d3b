from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field

from mengercurv.cli.schemes import Experiment
from mengercurv.energy.schemes import SamplerConfig
from mengercurv.funcspace.domain import Domain
from mengercurv.funcspace.models import FunctionModel
from mengercurv.funcspace.params import EnergyParams
from mengercurv.verify.schemes import RatioRow


class VerifyRequest(BaseModel):
    """
    Resolved inputs shared by the verification experiments.

    Attributes:
        experiment: Which experiment to run.
        functions: Catalog members, or the functions given with ``--fn``.
        params: Exponents, for the experiments comparing energies and seminorms.
        point: Base point of the localized W-measure.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    experiment: Experiment
    domain: Domain
    functions: List[FunctionModel] = Field(default_factory=list)
    params: Optional[EnergyParams] = None
    sampler: SamplerConfig = SamplerConfig()
    samples: int = Field(..., ge=1)
    seed: int = Field(default=0, ge=0)


class RatioCsvRow(BaseModel):
    """Flat CSV form of a RatioRow."""

    name: str
    numerator: Optional[float] = None
    numerator_stderr: Optional[float] = None
    denominator: Optional[float] = None
    denominator_stderr: Optional[float] = None
    ratio: Optional[float] = None
    ratio_stderr: float = 0.0
    excluded: bool = False
    flag: Optional[str] = None

    @classmethod
    def of(cls, row: RatioRow) -> "RatioCsvRow":
        return cls(
            name=row.name,
            numerator=row.numerator.value if row.numerator else None,
            numerator_stderr=row.numerator.stderr if row.numerator else None,
            denominator=row.denominator.value if row.denominator else None,
            denominator_stderr=row.denominator.stderr if row.denominator else None,
            ratio=row.ratio,
            ratio_stderr=row.ratio_stderr,
            excluded=row.excluded,
            flag=row.flag,
        )
