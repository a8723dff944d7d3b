from typing import Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator


class PointTuple(BaseModel):
    """Ordered vertices x_0, ..., x_{k-1} in R^d."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    points: np.ndarray

    @field_validator("points", mode="before")
    @classmethod
    def as_float_rows(cls, value):
        """Coerce to a float array of shape (k, d)."""
        array = np.asarray(value, dtype=float)
        if array.ndim == 1:
            array = array.reshape(-1, 1)
        if array.ndim != 2 or array.shape[0] < 1 or array.shape[1] < 1:
            raise ValueError("points must form a non-empty (k, d) array")
        if not np.all(np.isfinite(array)):
            raise ValueError("points must be finite")
        return array

    @classmethod
    def of(cls, *points: Sequence[float]) -> "PointTuple":
        """Builds a tuple from individual points."""
        return cls(points=np.array([np.atleast_1d(p) for p in points], dtype=float))

    @property
    def dimension(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return self.points.shape[0]


class AffineMap(BaseModel):
    """x ↦ linear @ x + offset on R^d."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    linear: np.ndarray
    offset: np.ndarray

    @model_validator(mode="before")
    @classmethod
    def check_shapes(cls, values):
        """Require a square finite matrix and a matching offset."""
        linear = np.atleast_2d(np.asarray(values.get("linear"), dtype=float))
        offset = np.atleast_1d(np.asarray(values.get("offset"), dtype=float))
        if linear.shape[0] != linear.shape[1] or linear.shape[0] != offset.shape[0]:
            raise ValueError("linear part must be d×d and offset must be in R^d")
        if not (np.all(np.isfinite(linear)) and np.all(np.isfinite(offset))):
            raise ValueError("affine map entries must be finite")
        return {"linear": linear, "offset": offset}

    @classmethod
    def rotation(cls, angle: float, offset: Sequence[float] = (0.0, 0.0)) -> "AffineMap":
        """Planar rigid motion."""
        c, s = np.cos(angle), np.sin(angle)
        return cls(linear=[[c, -s], [s, c]], offset=offset)

    @classmethod
    def random_rigid(cls, dimension: int, rng: np.random.Generator) -> "AffineMap":
        """Random rotation (Haar via QR) plus translation."""
        q, r = np.linalg.qr(rng.standard_normal((dimension, dimension)))
        q = q * np.sign(np.diag(r))
        return cls(linear=q, offset=rng.standard_normal(dimension))

    def apply(self, points) -> np.ndarray:
        """Maps rows of ``points``."""
        return np.asarray(points, dtype=float) @ self.linear.T + self.offset

    def __call__(self, t: PointTuple) -> PointTuple:
        return PointTuple(points=self.apply(t.points))
