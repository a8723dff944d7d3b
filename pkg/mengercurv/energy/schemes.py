from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from mengercurv.core.exceptions import ArgumentError
from mengercurv.core.schemes import Estimate

R_MIN_DIVISOR = 2.0**14
DEFAULT_STRATA = 28


class SamplerConfig(BaseModel):
    """
    How (n+2)-tuples of domain points are drawn.

    ``uniform`` draws every point uniformly in U. ``stratified`` draws a base
    point uniformly, a scale r log-uniformly in [r_min, r_max] split into
    equal-mass strata, and the other points uniformly in B(x_0, r). Unset
    radii default to diam(U)/2^14 and diam(U).
    """

    model_config = ConfigDict(frozen=True)

    mode: Literal["uniform", "stratified"] = "stratified"
    r_min: Optional[float] = Field(default=None, gt=0.0)
    r_max: Optional[float] = Field(default=None, gt=0.0)
    strata: int = Field(default=DEFAULT_STRATA, ge=1)
    samples_per_stratum: Optional[int] = Field(
        default=None,
        ge=1,
        description="Overrides the total sample count when set",
    )

    @model_validator(mode="after")
    def check_radii(self) -> "SamplerConfig":
        if self.r_min is not None and self.r_max is not None and not self.r_min < self.r_max:
            raise ValueError("need r_min < r_max")
        return self

    def radii(self, diameter: float) -> Tuple[float, float]:
        """
        Resolved (r_min, r_max) for a domain of the given diameter.

        :raises ArgumentError: Unless 0 < r_min < r_max <= diameter.
        """
        r_min = diameter / R_MIN_DIVISOR if self.r_min is None else self.r_min
        r_max = diameter if self.r_max is None else self.r_max
        if not 0.0 < r_min < r_max <= diameter * (1.0 + 1e-12):
            raise ArgumentError(
                f"need 0 < r_min < r_max <= diam(U) = {diameter:g}, got {r_min:g}, {r_max:g}"
            )
        return r_min, r_max

    def total_samples(self, samples: int) -> int:
        """Sample count rounded up to whole strata."""
        if self.mode == "uniform":
            return int(samples)
        per_stratum = self.samples_per_stratum or -(-int(samples) // self.strata)
        return per_stratum * self.strata


class ScalingReport(BaseModel):
    """Log-log fit of E(f_λ) against λ."""

    lambdas: List[float]
    estimates: List[Estimate]
    slope: float
    slope_stderr: float = Field(..., ge=0.0)
    expected_slope: float = Field(
        ..., description="n(n+2) + p(n+1+s) − (n+2)q for the q actually used"
    )
    coupled: bool
    q: float
