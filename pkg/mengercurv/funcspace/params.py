import math

from pydantic import BaseModel, Field, PositiveInt, computed_field, field_validator

from mengercurv.core.exceptions import ArgumentError


def derive_q(n: int, s: float, p: float, strict: bool = True) -> float:
    """
    The diameter exponent q = n(n+1)/(n+2) + p(n+1+s)/(n+2).

    :param strict: Enforce n >= 1, 0 < s < 1, 1 < p < inf. Turn off only to
        probe the formula at the boundary of the parameter range.
    :raises ArgumentError: On out-of-range parameters in strict mode.
    """
    if strict:
        if int(n) != n or n < 1:
            raise ArgumentError(f"n must be a positive integer, got {n}")
        if not 0.0 < s < 1.0:
            raise ArgumentError(f"s must lie in (0, 1), got {s}")
        if not 1.0 < p < math.inf:
            raise ArgumentError(f"p must lie in (1, inf), got {p}")
    return n * (n + 1) / (n + 2) + p * (n + 1 + s) / (n + 2)


def equal_exponent_s(n: int, p: float) -> float:
    """
    s = 1 − n(n+1)/p, the smoothness at which q equals p.

    At this s the graph energy E_{p,q} is E_{p,p}, the exponent of the
    integral Menger curvature of n-dimensional graphs.

    :raises ArgumentError: Unless n(n+1) < p.
    """
    if not n * (n + 1) < p:
        raise ArgumentError(f"need n(n+1) < p, got n={n}, p={p}")
    return 1.0 - n * (n + 1) / p


class EnergyParams(BaseModel):
    """
    Exponents (n, s, p) of the curvature energy and their derived q.

    ``q_offset`` perturbs q away from the exponent relation; it exists only for
    negative-control experiments and is rejected by the command line.
    """

    model_config = {"frozen": True}

    n: PositiveInt
    s: float = Field(..., gt=0.0, lt=1.0)
    p: float = Field(..., gt=1.0)
    q_offset: float = 0.0

    @field_validator("p")
    @classmethod
    def finite_p(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("p must be finite")
        return value

    @computed_field
    @property
    def q(self) -> float:
        return derive_q(self.n, self.s, self.p) + self.q_offset

    @computed_field
    @property
    def hypothesis_holds(self) -> bool:
        """n/p < 1 + s, the hypothesis of the characterization."""
        return self.n / self.p < 1.0 + self.s

    @property
    def exponent_consistent(self) -> bool:
        return self.q_offset == 0.0

    def with_q_offset(self, delta: float) -> "EnergyParams":
        return self.model_copy(update={"q_offset": self.q_offset + delta})

    def scaling_exponent(self) -> float:
        """Exponent of λ in E(f_λ)/E(f) for f_λ(x) = λ^{1+s} f(x/λ)."""
        n = self.n
        return n * (n + 2) + self.p * (n + 1 + self.s) - (n + 2) * self.q
