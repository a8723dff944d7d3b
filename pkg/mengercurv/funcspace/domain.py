"""Open domains U ⊂ R^n: axis-aligned boxes and balls.

Both kinds satisfy the cone condition required of a bounded domain. A box may
also stand in for the whole space when the functions studied on it are
supported well inside.
"""

import math
from abc import ABC, abstractmethod
from typing import Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from scipy.special import gamma

from mengercurv.core.exceptions import ArgumentError
from mengercurv.helpers.rng import DrawBlock


def unit_ball_volume(n: int) -> float:
    """ω_n, the Lebesgue measure of the unit ball in R^n."""
    return float(math.pi ** (n / 2) / gamma(n / 2 + 1))


def unit_sphere_area(n: int) -> float:
    """H^{n-1}(S^{n-1}) = n·ω_n."""
    return n * unit_ball_volume(n)


class HBox(BaseModel):
    """
    The admissible offsets H_x = {h : x+h ∈ U, x−h ∈ U} at a point x.

    For boxes ``half_widths`` describes H_x exactly. For balls ``radius`` is a
    centered ball inscribed in H_x and ``contains`` is the exact membership
    predicate used for rejection.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    x: np.ndarray
    domain: "Domain"
    half_widths: Optional[np.ndarray] = None
    radius: Optional[float] = None
    exact: bool = True

    def contains(self, h) -> np.ndarray:
        h = np.asarray(h, dtype=float)
        return self.domain.contains(self.x + h) & self.domain.contains(self.x - h)

    @property
    def reach(self) -> float:
        """Upper bound of |h| over H_x."""
        if self.half_widths is not None:
            return float(np.linalg.norm(self.half_widths))
        return self.domain.diameter / 2.0


class Domain(BaseModel, ABC):
    """Common interface of supported domains."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    @property
    @abstractmethod
    def dimension(self) -> int: ...

    @property
    @abstractmethod
    def volume(self) -> float: ...

    @property
    @abstractmethod
    def diameter(self) -> float: ...

    @abstractmethod
    def bounding_box(self) -> Tuple[np.ndarray, np.ndarray]: ...

    @abstractmethod
    def contains(self, points) -> np.ndarray:
        """Open-set membership of the last-axis points."""

    @abstractmethod
    def draws_per_point(self) -> int: ...

    @abstractmethod
    def sample(self, block: DrawBlock) -> np.ndarray:
        """Uniform points of U from ``draws_per_point`` columns of the block."""

    @abstractmethod
    def h_box(self, x) -> HBox: ...

    @abstractmethod
    def scaled(self, factor: float) -> "Domain":
        """The domain λU."""

    def _require_inside(self, x) -> np.ndarray:
        x = np.atleast_1d(np.asarray(x, dtype=float))
        if x.shape != (self.dimension,) or not bool(self.contains(x)):
            raise ArgumentError(f"point {x.tolist()} is not inside the domain")
        return x


class BoxDomain(Domain):
    """∏ (a_i, b_i), optionally a truncation of the whole space."""

    kind: Literal["box"] = "box"
    lower: np.ndarray
    upper: np.ndarray
    represents_full_space: bool = False
    support_margin: float = Field(default=0.0, ge=0.0)

    @model_validator(mode="before")
    @classmethod
    def check_edges(cls, values):
        lower = np.atleast_1d(np.asarray(values.get("lower"), dtype=float))
        upper = np.atleast_1d(np.asarray(values.get("upper"), dtype=float))
        if lower.shape != upper.shape or lower.ndim != 1:
            raise ValueError("box bounds must be matching vectors")
        if not np.all(upper - lower > 0.0):
            raise ValueError("box edges must be positive")
        return {**values, "lower": lower, "upper": upper}

    @classmethod
    def interval(cls, a: float, b: float) -> "BoxDomain":
        return cls(lower=[a], upper=[b])

    @classmethod
    def cube(cls, n: int, a: float = 0.0, b: float = 1.0) -> "BoxDomain":
        return cls(lower=np.full(n, a), upper=np.full(n, b))

    @classmethod
    def full_space(cls, support_lower, support_upper, margin: float) -> "BoxDomain":
        """Truncated R^n: the support box enlarged by ``margin`` on every side."""
        support_lower = np.atleast_1d(np.asarray(support_lower, dtype=float))
        support_upper = np.atleast_1d(np.asarray(support_upper, dtype=float))
        return cls(
            lower=support_lower - margin,
            upper=support_upper + margin,
            represents_full_space=True,
            support_margin=margin,
        )

    @property
    def dimension(self) -> int:
        return self.lower.shape[0]

    @property
    def widths(self) -> np.ndarray:
        return self.upper - self.lower

    @property
    def volume(self) -> float:
        return float(np.prod(self.widths))

    @property
    def diameter(self) -> float:
        return float(np.linalg.norm(self.widths))

    def bounding_box(self) -> Tuple[np.ndarray, np.ndarray]:
        return self.lower, self.upper

    def contains(self, points) -> np.ndarray:
        points = np.asarray(points, dtype=float)
        return np.all((points > self.lower) & (points < self.upper), axis=-1)

    def draws_per_point(self) -> int:
        return self.dimension

    def sample(self, block: DrawBlock) -> np.ndarray:
        return self.lower + block.take(self.dimension) * self.widths

    def h_box(self, x) -> HBox:
        x = self._require_inside(x)
        half_widths = np.minimum(x - self.lower, self.upper - x)
        return HBox(x=x, domain=self, half_widths=half_widths, exact=True)

    def scaled(self, factor: float) -> "BoxDomain":
        return self.model_copy(
            update={
                "lower": self.lower * factor,
                "upper": self.upper * factor,
                "support_margin": self.support_margin * factor,
            }
        )


class BallDomain(Domain):
    """Open ball B(center, radius)."""

    kind: Literal["ball"] = "ball"
    center: np.ndarray
    radius: float = Field(..., gt=0.0)

    @field_validator("center", mode="before")
    @classmethod
    def as_vector(cls, value):
        return np.atleast_1d(np.asarray(value, dtype=float))

    @property
    def dimension(self) -> int:
        return self.center.shape[0]

    @property
    def volume(self) -> float:
        return unit_ball_volume(self.dimension) * self.radius**self.dimension

    @property
    def diameter(self) -> float:
        return 2.0 * self.radius

    def bounding_box(self) -> Tuple[np.ndarray, np.ndarray]:
        return self.center - self.radius, self.center + self.radius

    def contains(self, points) -> np.ndarray:
        points = np.asarray(points, dtype=float)
        return np.linalg.norm(points - self.center, axis=-1) < self.radius

    def draws_per_point(self) -> int:
        return self.dimension + 1

    def sample(self, block: DrawBlock) -> np.ndarray:
        return self.center + block.ball(self.dimension, self.radius)

    def h_box(self, x) -> HBox:
        x = self._require_inside(x)
        offset = float(np.linalg.norm(x - self.center))
        return HBox(
            x=x,
            domain=self,
            radius=self.radius - offset,
            exact=offset == 0.0,
        )

    def scaled(self, factor: float) -> "BallDomain":
        return self.model_copy(
            update={"center": self.center * factor, "radius": self.radius * factor}
        )


AnyDomain = Union[BoxDomain, BallDomain]

HBox.model_rebuild()
