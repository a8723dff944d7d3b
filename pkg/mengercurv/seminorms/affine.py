"""Best affine fits P_Q on cubes and the oscillation Ω_f(x, t).

Moment systems are assembled in coordinates normalized to the reference cube
[−1/2, 1/2]^n, where the moment matrix is the same for every cube. Fits of
many cubes are therefore one matrix solve.
"""

from functools import lru_cache
from typing import Tuple

import numpy as np

from mengercurv.core.exceptions import ArgumentError
from mengercurv.funcspace.models import FunctionModel
from mengercurv.helpers.quadrature import tensor_rule
from mengercurv.seminorms.schemes import AffineFit, OmegaConfig

_MAX_CONDITION = 1e12


@lru_cache(maxsize=None)
def _reference_system(n: int, order: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Reference nodes in [−1/2, 1/2]^n, weights, and the inverse moment matrix."""
    nodes, weights = tensor_rule(np.full(n, -0.5), np.full(n, 0.5), order)
    basis = np.concatenate([np.ones((nodes.shape[0], 1)), nodes], axis=1)
    moments = basis.T @ (weights[:, None] * basis)
    if np.linalg.cond(moments) > _MAX_CONDITION:
        raise ArgumentError("singular moment matrix")
    return nodes, weights, np.linalg.inv(moments)


def require_region(f: FunctionModel, lower, upper) -> None:
    if not f.region_contains_box(lower, upper):
        raise ArgumentError(f"cube leaves the evaluatable region of {f.name}")


def fit_batch(
    f: FunctionModel, lower: np.ndarray, side: np.ndarray, order: int = 8
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Normalized fits of many cubes.

    :param lower: Lower corners, shape (M, n).
    :param side: Side lengths, shape (M,).
    :return: (c0, g) of shape (M,) and (M, n) with
        P(z) = c0 + g·((z − center)/side).
    """
    n = lower.shape[-1]
    nodes, weights, inverse = _reference_system(n, order)
    center = lower + side[:, None] / 2.0
    points = center[:, None, :] + side[:, None, None] * nodes
    values = f(points)
    basis = np.concatenate([np.ones((nodes.shape[0], 1)), nodes], axis=1)
    rhs = (values * weights) @ basis
    coefficients = rhs @ inverse.T
    return coefficients[:, 0], coefficients[:, 1:]


def best_affine_fit(f: FunctionModel, center, side: float, order: int = 12) -> AffineFit:
    """
    P_Q for the cube of the given center and side.

    :raises ArgumentError: If the cube is degenerate or leaves f's region.
    """
    center = np.atleast_1d(np.asarray(center, dtype=float))
    side = float(side)
    if not side > 0.0:
        raise ArgumentError("cube side must be positive")
    require_region(f, center - side / 2.0, center + side / 2.0)

    c0, g = fit_batch(f, (center - side / 2.0)[None, :], np.array([side]), order)
    gradient = g[0] / side
    return AffineFit(
        intercept=float(c0[0] - gradient @ center),
        gradient=gradient,
        center=center,
        side=side,
    )


@lru_cache(maxsize=None)
def unit_lattice(n: int, count: int) -> np.ndarray:
    axis = np.linspace(0.0, 1.0, count)
    return np.stack(np.meshgrid(*([axis] * n), indexing="ij"), axis=-1).reshape(-1, n)


def omega_batch(
    f: FunctionModel, x: np.ndarray, t: np.ndarray, config: OmegaConfig = OmegaConfig()
) -> np.ndarray:
    """
    Ω_f at many (x, t): x of shape (M, n), t of shape (M,).

    The supremum runs over cubes with lower corner x − t·o, o on the offset
    lattice, and over the sup grid inside each cube, so the result is a lower
    bound of the true Ω.
    """
    m, n = x.shape
    require_region(
        f, np.min(x - t[:, None], axis=0), np.max(x + t[:, None], axis=0)
    )
    offsets = unit_lattice(n, config.offsets)
    lower = (x[:, None, :] - t[:, None, None] * offsets).reshape(-1, n)
    sides = np.repeat(t, offsets.shape[0])
    c0, g = fit_batch(f, lower, sides, config.fit_order)

    grid = unit_lattice(n, config.sup_grid) - 0.5
    center = lower + sides[:, None] / 2.0
    points = center[:, None, :] + sides[:, None, None] * grid
    residual = np.abs(f(points) - c0[:, None] - g @ grid.T)
    return residual.max(axis=1).reshape(m, -1).max(axis=1)


def omega(f: FunctionModel, x, t: float, config: OmegaConfig = OmegaConfig()) -> float:
    """
    Ω_f(x, t) = sup over side-t cubes Q ∋ x of ‖f − P_Q‖_∞(Q), from below.

    :raises ArgumentError: If a candidate cube leaves f's region or t <= 0.
    """
    if not t > 0.0:
        raise ArgumentError("sidelength must be positive")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    return float(omega_batch(f, x[None, :], np.array([float(t)]), config)[0])


def cube_residual_moments(f: FunctionModel, fit: AffineFit, order: int = 16) -> np.ndarray:
    """∫_Q (f − P_Q)·(1, x_1 − c_1, ..., x_n − c_n), normalized by |Q|."""
    n = fit.center.size
    nodes, weights = tensor_rule(np.full(n, -0.5), np.full(n, 0.5), order)
    points = fit.center + fit.side * nodes
    residual = f(points) - fit(points)
    basis = np.concatenate([np.ones((nodes.shape[0], 1)), fit.side * nodes], axis=1)
    return (residual * weights) @ basis
