from typing import List, Literal

from pydantic import BaseModel, ConfigDict, Field

from mengercurv.curves.schemes import Polyline

EnergyName = Literal["mp", "ip", "up", "ep"]


class KnotRequest(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    curve: Polyline
    p: float = Field(..., gt=0.0)
    energies: List[EnergyName]


class KnotEnergyRow(BaseModel):
    """One discrete knot energy of the curve."""

    energy: EnergyName
    value: float
    vertices: int
    length: float
