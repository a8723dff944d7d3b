"""Composite Gauss–Legendre rules on panels."""

import math
from functools import lru_cache
from typing import Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss

from mengercurv.core.exceptions import ArgumentError

MIN_SCALE = 1e-5
# Absolute changes below this between refinement levels are rounding.
ROUNDOFF = 1e-12


@lru_cache(maxsize=None)
def _reference(order: int) -> Tuple[np.ndarray, np.ndarray]:
    nodes, weights = leggauss(order)
    return (nodes + 1.0) / 2.0, weights / 2.0


def panel_rule(edges, order: int = 8) -> Tuple[np.ndarray, np.ndarray]:
    """
    Nodes and weights of the order-``order`` rule on every panel.

    :param edges: Increasing panel boundaries, shape (m + 1,).
    :return: Flat arrays of m·order nodes and weights.
    """
    edges = np.asarray(edges, dtype=float)
    nodes, weights = _reference(order)
    lengths = np.diff(edges)
    x = edges[:-1, None] + lengths[:, None] * nodes
    w = lengths[:, None] * weights
    return x.reshape(-1), w.reshape(-1)


def uniform_panels(a: float, b: float, panels: int) -> np.ndarray:
    return np.linspace(a, b, panels + 1)


def geometric_panels(a: float, b: float, depth: int, ratio: float = 0.5) -> np.ndarray:
    """
    Panels of (a, b] shrinking geometrically toward ``a``.

    The innermost panel is (a, a + (b − a)·ratio^depth]; the interval
    (a, a + (b − a)·ratio^depth) below it is left out and must be negligible
    or bounded separately by the caller.
    """
    width = b - a
    return a + width * ratio ** np.arange(depth, -1, -1, dtype=float)


def tensor_rule(lower, upper, order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Tensor Gauss–Legendre rule on a box: nodes (order^n, n), weights (order^n,)."""
    lower = np.atleast_1d(np.asarray(lower, dtype=float))
    upper = np.atleast_1d(np.asarray(upper, dtype=float))
    nodes, weights = _reference(order)
    axes = [a + (b - a) * nodes for a, b in zip(lower, upper)]
    axis_weights = [(b - a) * weights for a, b in zip(lower, upper)]
    points = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, lower.size)
    w = np.ones(1)
    for aw in axis_weights:
        w = np.multiply.outer(w, aw).reshape(-1)
    return points, w


def small_scale_floor(length: float, depth: int) -> float:
    """
    Smallest scale a depth-``depth`` refinement of (0, length] resolves.

    Below MIN_SCALE·length, differences of function values of order one keep
    fewer than half of their digits.
    """
    return length * max(2.0**-depth, MIN_SCALE)


def log_panels(a: float, b: float, depth: int) -> np.ndarray:
    """``depth`` panels of [a, b] with equal ratios, a > 0."""
    if not 0.0 < a < b:
        raise ArgumentError(f"log panels need 0 < a < b, got a={a}, b={b}")
    return np.geomspace(a, b, depth + 1)


def power_slab(density: float, floor: float, exponent: float, lower: float = 0.0) -> float:
    """
    ∫_lower^floor density·(t / floor)^exponent dt.

    Continues an integrand known at ``floor`` down to ``lower`` by its
    leading power law.

    :raises ArgumentError: If the power law is not integrable at 0 and lower is 0.
    """
    if lower >= floor or density == 0.0:
        return 0.0
    rise = exponent + 1.0
    if rise <= 0.0 and lower == 0.0:
        raise ArgumentError(f"t^{exponent} is not integrable at 0")
    if rise == 0.0:
        return density * floor * math.log(floor / lower)
    return density * floor * (1.0 - (lower / floor) ** rise) / rise


def relative_change(fine: float, coarse: float) -> float:
    """|fine − coarse| over the larger magnitude; 0 when they agree to ROUNDOFF."""
    change = abs(fine - coarse)
    if change <= ROUNDOFF:
        return 0.0
    return change / max(abs(fine), abs(coarse))
