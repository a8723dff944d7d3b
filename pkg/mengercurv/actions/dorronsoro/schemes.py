from typing import Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from mengercurv.funcspace.models import FunctionModel
from mengercurv.funcspace.params import EnergyParams


class DorronsoroRequest(BaseModel):
    """
    Resolved inputs of a Dorronsoro functional estimate.

    Attributes:
        box: Spatial box used when the function has no known compact support.
        t_min: Smallest sampled scale; defaults to diam/2^12.
        t_max: Largest sampled scale; larger ones are covered by the tail bound.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    function: FunctionModel
    params: EnergyParams
    box: Optional[Tuple[np.ndarray, np.ndarray]] = None
    t_min: Optional[float] = None
    t_max: Optional[float] = None
    samples: int = Field(..., ge=1)
    seed: int = Field(default=0, ge=0)
