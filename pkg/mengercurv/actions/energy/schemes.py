from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

from mengercurv.energy.schemes import SamplerConfig
from mengercurv.funcspace.domain import Domain
from mengercurv.funcspace.models import FunctionModel
from mengercurv.funcspace.params import EnergyParams


class EnergyRequest(BaseModel):
    """
    Resolved inputs of an E_{p,q} estimate.

    Attributes:
        function: The function whose graph energy is estimated.
        domain: The integration domain U.
        params: Exponents, with q derived.
        sampler: Tuple sampler settings.
        method: Monte Carlo, or the deterministic 1-D quadrature oracle.
        samples: Monte-Carlo sample count.
        seed: Seed of the counter-based stream.
        diameter_cutoff: Tuples of smaller domain diameter contribute 0.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    function: FunctionModel
    domain: Domain
    params: EnergyParams
    sampler: SamplerConfig = SamplerConfig()
    method: Literal["monte-carlo", "quadrature"] = "monte-carlo"
    samples: int = Field(..., ge=1)
    seed: int = Field(default=0, ge=0)
    diameter_cutoff: float = Field(default=0.0, ge=0.0)
