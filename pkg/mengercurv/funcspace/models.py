"""Evaluatable scalar functions on R^n.

Models are immutable. Evaluation takes points on the last axis, shape
(..., n), and returns values of shape (...). Transforms build new models by
closure, so a transformed grid model keeps the grid's evaluatable region.
"""

from abc import ABC, abstractmethod
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy.interpolate import RegularGridInterpolator

from mengercurv.core.exceptions import ArgumentError, UnsupportedOperationError

Box = Tuple[np.ndarray, np.ndarray]


def _box(lower, upper) -> Box:
    return (
        np.atleast_1d(np.asarray(lower, dtype=float)),
        np.atleast_1d(np.asarray(upper, dtype=float)),
    )


class FunctionModelInterface(ABC):
    """
    Interface of a scalar function model f: R^n → R.
    """

    @abstractmethod
    def _evaluate(self, points: np.ndarray) -> np.ndarray:
        """Values at points of shape (..., n), no region checks."""

    @abstractmethod
    def gradient(self, points) -> np.ndarray:
        """∇f at points of shape (..., n), shape (..., n)."""


class FunctionModel(FunctionModelInterface):
    """
    Common behaviour of function models.

    Attributes:
        name: Catalog name or description of the transform chain.
        dimension: n.
        smoothness: Documented smoothness class (e.g. "C^inf", "C^{0,0.3}").
        support: Box containing the support, or None when not compact.
        region: Box on which evaluation is defined, or None for all of R^n.
    """

    def __init__(
        self,
        name: str,
        dimension: int,
        smoothness: str = "unknown",
        support: Optional[Box] = None,
        region: Optional[Box] = None,
    ):
        self.name = name
        self.dimension = int(dimension)
        self.smoothness = smoothness
        self.support = None if support is None else _box(*support)
        self.region = None if region is None else _box(*region)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name!r}, n={self.dimension})"

    @property
    def has_gradient(self) -> bool:
        return False

    def __call__(self, points) -> np.ndarray:
        points = np.asarray(points, dtype=float)
        if points.shape[-1] != self.dimension:
            raise ArgumentError(
                f"{self.name} expects points in R^{self.dimension}, got shape {points.shape}"
            )
        self.check_region(points)
        return self._evaluate(points)

    def on_line(self, xs) -> np.ndarray:
        """Convenience for n = 1: values at a plain array of abscissae."""
        if self.dimension != 1:
            raise ArgumentError("on_line is only defined for n = 1")
        return self(np.asarray(xs, dtype=float)[..., None])

    def gradient(self, points) -> np.ndarray:
        raise UnsupportedOperationError(f"{self.name} has no analytic gradient")

    def check_region(self, points) -> None:
        """
        :raises ArgumentError: If a point lies outside the evaluatable region.
        """
        if self.region is None:
            return
        lower, upper = self.region
        points = np.asarray(points, dtype=float)
        slack = 1e-12 * np.maximum(1.0, np.abs(upper - lower))
        if np.any(points < lower - slack) or np.any(points > upper + slack):
            raise ArgumentError(f"{self.name} is not evaluatable outside its region")

    def region_contains_box(self, lower, upper) -> bool:
        if self.region is None:
            return True
        r_lower, r_upper = self.region
        slack = 1e-12 * np.maximum(1.0, np.abs(r_upper - r_lower))
        return bool(
            np.all(np.asarray(lower) >= r_lower - slack)
            and np.all(np.asarray(upper) <= r_upper + slack)
        )

    def _derived(
        self,
        name: str,
        rule: Callable[[np.ndarray], np.ndarray],
        gradient_rule: Optional[Callable[[np.ndarray], np.ndarray]],
        support: Optional[Box],
        region: Optional[Box],
    ) -> "AnalyticFunction":
        return AnalyticFunction(
            name=name,
            dimension=self.dimension,
            rule=rule,
            gradient_rule=gradient_rule if self.has_gradient else None,
            smoothness=self.smoothness,
            support=support,
            region=region,
        )

    def scaled(self, c: float) -> "AnalyticFunction":
        """x ↦ c·f(x)."""
        c = float(c)
        return self._derived(
            f"{c:g}*{self.name}",
            lambda x: c * self._evaluate(x),
            lambda x: c * self.gradient(x),
            self.support,
            self.region,
        )

    def plus_affine(self, slope: Sequence[float], intercept: float) -> "AnalyticFunction":
        """x ↦ f(x) + slope·x + intercept."""
        slope = np.atleast_1d(np.asarray(slope, dtype=float))
        intercept = float(intercept)
        return self._derived(
            f"{self.name}+affine",
            lambda x: self._evaluate(x) + x @ slope + intercept,
            lambda x: self.gradient(x) + slope,
            None,
            self.region,
        )

    def rescaled(self, lam: float, s: float) -> "AnalyticFunction":
        """Anisotropic rescale x ↦ λ^{1+s} f(x/λ)."""
        lam, s = float(lam), float(s)
        amplitude = lam ** (1.0 + s)

        def scale_box(box):
            return None if box is None else (box[0] * lam, box[1] * lam)

        return self._derived(
            f"{self.name}@lambda={lam:g}",
            lambda x: amplitude * self._evaluate(x / lam),
            lambda x: lam**s * self.gradient(x / lam),
            scale_box(self.support),
            scale_box(self.region),
        )

    def translated(self, shift: Sequence[float]) -> "AnalyticFunction":
        """x ↦ f(x − shift)."""
        shift = np.atleast_1d(np.asarray(shift, dtype=float))

        def move(box):
            return None if box is None else (box[0] + shift, box[1] + shift)

        return self._derived(
            f"{self.name}>>shift",
            lambda x: self._evaluate(x - shift),
            lambda x: self.gradient(x - shift),
            move(self.support),
            move(self.region),
        )


class AnalyticFunction(FunctionModel):
    """Closed-form model with an optional analytic gradient."""

    def __init__(
        self,
        name: str,
        dimension: int,
        rule: Callable[[np.ndarray], np.ndarray],
        gradient_rule: Optional[Callable[[np.ndarray], np.ndarray]] = None,
        smoothness: str = "unknown",
        support: Optional[Box] = None,
        region: Optional[Box] = None,
    ):
        super().__init__(name, dimension, smoothness, support, region)
        self._rule = rule
        self._gradient_rule = gradient_rule

    @property
    def has_gradient(self) -> bool:
        return self._gradient_rule is not None

    def _evaluate(self, points: np.ndarray) -> np.ndarray:
        return np.asarray(self._rule(points), dtype=float)

    def gradient(self, points) -> np.ndarray:
        if self._gradient_rule is None:
            raise UnsupportedOperationError(f"{self.name} has no analytic gradient")
        points = np.asarray(points, dtype=float)
        self.check_region(points)
        return np.asarray(self._gradient_rule(points), dtype=float)


class GridFunction(FunctionModel):
    """
    Samples on a uniform grid with multilinear interpolation.

    Defined only inside the grid hull; no gradient is offered, since
    differentiating interpolated samples amplifies their noise.
    """

    def __init__(self, axes: Sequence[np.ndarray], values: np.ndarray, name: str = "grid"):
        axes = [np.asarray(a, dtype=float) for a in axes]
        values = np.asarray(values, dtype=float)
        if values.shape != tuple(len(a) for a in axes):
            raise ArgumentError("grid values do not match the axes")
        for axis in axes:
            if axis.size < 2 or not np.all(np.diff(axis) > 0):
                raise ArgumentError("grid axes must be increasing with >= 2 nodes")
        super().__init__(
            name,
            len(axes),
            smoothness="C^{0,1} (multilinear)",
            region=([a[0] for a in axes], [a[-1] for a in axes]),
        )
        self.axes = axes
        self.values = values
        self.spacing = np.array([float(np.mean(np.diff(a))) for a in axes])
        self._interpolator = RegularGridInterpolator(
            axes, values, method="linear", bounds_error=False, fill_value=None
        )

    @classmethod
    def sample(
        cls, model: FunctionModel, lower, upper, nodes: int | Sequence[int]
    ) -> "GridFunction":
        """Tabulates ``model`` on a uniform grid over [lower, upper]."""
        lower, upper = _box(lower, upper)
        counts = np.broadcast_to(np.asarray(nodes), lower.shape)
        axes = [np.linspace(a, b, int(c)) for a, b, c in zip(lower, upper, counts)]
        mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)
        return cls(axes, model(mesh), name=f"grid({model.name})")

    def _evaluate(self, points: np.ndarray) -> np.ndarray:
        flat = points.reshape(-1, self.dimension)
        return self._interpolator(flat).reshape(points.shape[:-1])
