import math
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field, model_validator


class Estimate(BaseModel):
    """
    Result of a numerical estimate, deterministic or Monte Carlo.

    Deterministic results carry ``stderr = 0``. A Monte-Carlo estimate may also
    report ``stderr = 0`` when every sample contributed the same value (for
    example every kernel vanished on an affine function).
    """

    value: float = Field(..., description="The estimated quantity")
    stderr: float = Field(default=0.0, ge=0.0, description="One standard error")
    samples: int = Field(default=0, ge=0, description="Samples or quadrature nodes used")
    seed: Optional[int] = Field(
        default=None, description="Seed of the counter-based stream, if sampled"
    )
    invalid_sample_count: int = Field(
        default=0,
        ge=0,
        description="Degenerate sampled tuples that were counted and skipped",
    )
    deterministic: bool = Field(default=False)
    converged: bool = Field(
        default=True, description="False when a refinement diagnostic flagged the result"
    )
    acceptance_ratio: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    mode: str = Field(default="monte-carlo")
    diagnostics: List[str] = Field(default_factory=list)
    details: Dict[str, Any] = Field(
        default_factory=dict, description="Method-specific numbers echoed in reports"
    )

    @model_validator(mode="after")
    def check_deterministic(self) -> "Estimate":
        if self.deterministic and self.stderr != 0.0:
            raise ValueError("deterministic estimates carry stderr = 0")
        return self

    @property
    def relative_error(self) -> float:
        if self.value == 0.0:
            return 0.0 if self.stderr == 0.0 else math.inf
        return self.stderr / abs(self.value)

    def agrees_with(self, other: "Estimate", sigmas: float = 3.0) -> bool:
        """|a − b| within ``sigmas`` combined standard errors."""
        combined = math.hypot(self.stderr, other.stderr)
        return abs(self.value - other.value) <= sigmas * combined

    def flagged(self, message: str) -> "Estimate":
        return self.model_copy(
            update={"converged": False, "diagnostics": [*self.diagnostics, message]}
        )


class Verdict(BaseModel):
    """Outcome of a pass/fail check."""

    passed: bool
    lhs: float = Field(..., description="Left-hand side of the checked inequality")
    rhs: float = Field(..., description="Right-hand side of the checked inequality")
    kind: Literal["inequality", "identity"] = "inequality"
    details: Dict[str, Any] = Field(default_factory=dict)


class CommandResult(BaseModel):
    """
    Canonical JSON artifact of one CLI command.

    ``config`` echoes the run configuration and is enough to re-run it;
    ``rows`` feed the optional CSV output.
    """

    command: str
    config: Dict[str, Any] = Field(default_factory=dict)
    value: Optional[float] = None
    stderr: Optional[float] = None
    samples: Optional[int] = None
    seed: Optional[int] = None
    converged: bool = True
    passed: Optional[bool] = None
    diagnostics: List[str] = Field(default_factory=list)
    details: Dict[str, Any] = Field(default_factory=dict)
    rows: List[Dict[str, Any]] = Field(default_factory=list)

    @property
    def flagged(self) -> bool:
        return not self.converged or self.passed is False
