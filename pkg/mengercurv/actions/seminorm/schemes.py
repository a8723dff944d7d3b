from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

from mengercurv.funcspace.domain import Domain
from mengercurv.funcspace.models import FunctionModel
from mengercurv.funcspace.params import EnergyParams


class SeminormRequest(BaseModel):
    """
    Resolved inputs of a fractional seminorm estimate.

    Attributes:
        kind: Second-difference [f]^p, or the Gagliardo seminorm of ∇f.
        cutoff: Offsets with |h| < cutoff are left out (second difference only).
        mode: Quadrature, Monte Carlo, or chosen from the dimension.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    function: FunctionModel
    domain: Domain
    params: EnergyParams
    kind: Literal["second-difference", "gagliardo"] = "second-difference"
    mode: Literal["auto", "quadrature", "monte-carlo"] = "auto"
    cutoff: float = Field(default=0.0, ge=0.0)
    samples: int = Field(..., ge=1)
    seed: int = Field(default=0, ge=0)
