import numpy as np
from pydantic import BaseModel, ConfigDict, computed_field, model_validator

from mengercurv.geometry.schemes import AffineMap


class Polyline(BaseModel):
    """
    A polygonal curve in R^d, d >= 2.

    Vertex weights are half the summed lengths of the adjacent segments, the
    vertex rule for arclength integrals.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    vertices: np.ndarray
    closed: bool = True

    @model_validator(mode="before")
    @classmethod
    def check_vertices(cls, values):
        vertices = np.asarray(values.get("vertices"), dtype=float)
        closed = values.get("closed", True)
        if vertices.ndim != 2 or vertices.shape[1] < 2:
            raise ValueError("vertices must be an (N, d) array with d >= 2")
        if not np.all(np.isfinite(vertices)):
            raise ValueError("vertices must be finite")
        if closed and vertices.shape[0] < 3:
            raise ValueError("a closed polyline needs at least 3 vertices")
        if vertices.shape[0] < 2:
            raise ValueError("a polyline needs at least 2 vertices")
        following = np.roll(vertices, -1, axis=0) if closed else vertices[1:]
        steps = np.linalg.norm(following - vertices[: following.shape[0]], axis=1)
        if np.any(steps == 0.0):
            raise ValueError("consecutive vertices must be distinct")
        return {**values, "vertices": vertices}

    def __len__(self) -> int:
        return self.vertices.shape[0]

    @property
    def dimension(self) -> int:
        return self.vertices.shape[1]

    @property
    def segment_lengths(self) -> np.ndarray:
        if self.closed:
            following = np.roll(self.vertices, -1, axis=0)
            return np.linalg.norm(following - self.vertices, axis=1)
        return np.linalg.norm(np.diff(self.vertices, axis=0), axis=1)

    @property
    def arclength(self) -> np.ndarray:
        """Cumulative arclength at each vertex, starting at 0."""
        return np.concatenate([[0.0], np.cumsum(self.segment_lengths)])[: len(self)]

    @computed_field
    @property
    def length(self) -> float:
        return float(np.sum(self.segment_lengths))

    @property
    def weights(self) -> np.ndarray:
        segments = self.segment_lengths
        if self.closed:
            return (segments + np.roll(segments, 1)) / 2.0
        weights = np.zeros(len(self))
        weights[:-1] += segments / 2.0
        weights[1:] += segments / 2.0
        return weights

    def transformed(self, motion: AffineMap) -> "Polyline":
        return Polyline(vertices=motion.apply(self.vertices), closed=self.closed)

    def scaled(self, factor: float) -> "Polyline":
        return Polyline(vertices=self.vertices * factor, closed=self.closed)
