from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, Field, model_validator

from mengercurv.core.schemes import Estimate, Verdict

Classification = Literal["converging", "diverging", "inconclusive"]


class RatioRow(BaseModel):
    """
    One catalog member of an equivalence experiment.

    Attributes:
        name: Function name.
        numerator: E_{p,q} (or the Dorronsoro functional) estimate.
        denominator: [f]^p estimate.
        ratio: numerator / denominator; None for excluded rows.
        ratio_stderr: Propagated standard error of the ratio.
        excluded: Whether the row is left out of the summary.
        flag: Why it was excluded.
    """

    name: str
    numerator: Optional[Estimate] = None
    denominator: Optional[Estimate] = None
    ratio: Optional[float] = Field(default=None, gt=0.0)
    ratio_stderr: float = Field(default=0.0, ge=0.0)
    excluded: bool = False
    flag: Optional[str] = None


class RatioReport(BaseModel):
    """Ratios over a catalog and their bracket [min, max]."""

    n: int
    s: float
    p: float
    q: float
    numerator_kind: Literal["energy", "dorronsoro"] = "energy"
    include_lp: bool = False
    rows: List[RatioRow]
    min_ratio: Optional[float] = None
    max_ratio: Optional[float] = None
    spread: Optional[float] = Field(default=None, ge=1.0)
    spread_bound: Optional[float] = None
    within_bound: Optional[bool] = None

    @model_validator(mode="after")
    def check_bracket(self) -> "RatioReport":
        if self.min_ratio is not None and self.max_ratio is not None:
            if not 0.0 < self.min_ratio <= self.max_ratio:
                raise ValueError("ratios must be positive with min <= max")
        return self


class StabilityReport(BaseModel):
    base: RatioReport
    refined: RatioReport
    factor: int
    relative_change: Optional[float] = None
    threshold: float
    stable: bool


class LemmaBetaReport(BaseModel):
    """Per-tuple checks of H^{n+1}(Δ(F(x_i))) ≤ slack·2ω_n d^n ‖f − P_Q‖_∞."""

    checked: int
    violations: int
    slack: float
    worst_ratio: float = Field(..., description="max LHS/RHS over tuples with RHS > 0")
    verdicts: List[Verdict] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.violations == 0


class CodivergenceReport(BaseModel):
    """Truncated [f]^p and E_{p,q} along a decreasing cutoff schedule."""

    name: str
    cutoffs: List[float]
    seminorm: List[Estimate]
    energy: List[Estimate]
    seminorm_class: Classification
    energy_class: Classification
    agree: bool
    inconclusive: bool


class CircleProbeRow(BaseModel):
    t: float = Field(..., description="Angle between y and z on the unit circle")
    curvature: float
    four_k: float


class ScanSummary(BaseModel):
    """Outcome of a randomized identity audit."""

    checked: int
    max_relative_discrepancy: float
    tolerance: float
    passed: bool
    details: Dict[str, float] = Field(default_factory=dict)
