"""Exact finite-dimensional geometry.

Volumes are norms of exterior products of edge vectors, taken as the square
root of the Gram determinant of the k×k inner products. A Gram determinant
only resolves volumes down to rounding of the squared lengths, so values
within ``GRAM_CLAMP_TOL`` of zero relative to that scale read as flat.
"""

import math
from typing import Tuple, Union

import numpy as np
from scipy.spatial.distance import pdist

from mengercurv.core.exceptions import ArgumentError, InternalGeometryError
from mengercurv.geometry.schemes import PointTuple

COLLINEAR_TOL = 1e-12
GRAM_CLAMP_TOL = 1e-12

# Marker returned by k_pq_kernel for coincident domain tuples.
INVALID_SAMPLE = math.nan

PointsLike = Union[PointTuple, np.ndarray, list, tuple]


def _rows(t: PointsLike) -> np.ndarray:
    if isinstance(t, PointTuple):
        return t.points
    return PointTuple(points=t).points


def _point(x) -> np.ndarray:
    return np.atleast_1d(np.asarray(x, dtype=float))


def is_invalid_sample(value: float) -> bool:
    """True for the k_pq_kernel invalid-sample marker."""
    return math.isnan(value)


def diameter(t: PointsLike) -> float:
    """Largest pairwise Euclidean distance of at least two points."""
    points = _rows(t)
    if points.shape[0] < 2:
        raise ArgumentError("diameter needs at least 2 points")
    return float(pdist(points).max())


def diameter_batch(points: np.ndarray) -> np.ndarray:
    """Diameters of many tuples, ``points`` of shape (..., k, d)."""
    differences = points[..., :, None, :] - points[..., None, :, :]
    return np.sqrt(np.max(np.sum(differences**2, axis=-1), axis=(-2, -1)))


def _gram_determinant(vectors: np.ndarray) -> np.ndarray:
    return np.linalg.det(vectors @ np.swapaxes(vectors, -1, -2))


def wedge_norm_batch(vectors: np.ndarray, tol: float = GRAM_CLAMP_TOL) -> np.ndarray:
    """
    |w_1 ∧ ... ∧ w_k| for stacks of k vectors, ``vectors`` of shape (..., k, d).

    Gram determinants within ``tol`` of zero, relative to the product of
    squared lengths, are clamped to 0.

    :raises ArgumentError: If k > d.
    :raises InternalGeometryError: If a Gram determinant is negative beyond ``tol``.
    """
    k, d = vectors.shape[-2], vectors.shape[-1]
    if k > d:
        raise ArgumentError(f"cannot wedge {k} vectors in R^{d}")

    determinant = _gram_determinant(vectors)
    scale = np.prod(np.sum(vectors**2, axis=-1), axis=-1)
    if np.any(determinant < -tol * scale):
        raise InternalGeometryError(
            f"negative Gram determinant {np.min(determinant):.3e} beyond tolerance"
        )
    return np.sqrt(np.where(determinant <= tol * scale, 0.0, determinant))


def wedge_norm(*vectors) -> float:
    """
    Norm of the exterior product of k vectors in R^d.

    Accepts either the vectors as separate arguments or a single (k, d) array.
    """
    if len(vectors) == 1 and np.ndim(vectors[0]) == 2:
        stack = np.asarray(vectors[0], dtype=float)
    else:
        stack = np.array([_point(v) for v in vectors], dtype=float)
    if stack.shape[0] < 1:
        raise ArgumentError("wedge_norm needs at least one vector")
    return float(wedge_norm_batch(stack))


def simplex_volume_batch(points: np.ndarray) -> np.ndarray:
    """k-volumes of simplices given by (..., k+1, d) vertex stacks."""
    edges = points[..., 1:, :] - points[..., :1, :]
    k = edges.shape[-2]
    return wedge_norm_batch(edges) / math.factorial(k)


def simplex_volume(t: PointsLike) -> float:
    """k-dimensional volume of the simplex spanned by k+1 points."""
    points = _rows(t)
    if points.shape[0] == 1:
        return 0.0
    return float(simplex_volume_batch(points))


def _triangle(x, y, z) -> Tuple[np.ndarray, np.ndarray, float]:
    x, y, z = _point(x), _point(y), _point(z)
    if not x.shape == y.shape == z.shape:
        raise ArgumentError("points must share one dimension")
    if x.shape[0] < 2:
        raise ArgumentError("circumradius needs points in R^d with d >= 2")
    sides = np.array(
        [np.linalg.norm(y - z), np.linalg.norm(x - z), np.linalg.norm(x - y)]
    )
    if np.any(sides == 0.0):
        raise ArgumentError("points must be pairwise distinct")
    twice_area = wedge_norm(y - x, z - x)
    return sides, np.sort(sides), twice_area


def _is_collinear(sorted_sides: np.ndarray, twice_area: float, tol: float) -> bool:
    return twice_area / (sorted_sides[1] * sorted_sides[2]) < tol


def circumradius(x, y, z, tol: float = COLLINEAR_TOL) -> float:
    """
    Radius of the circle through three pairwise distinct points.

    Returns +inf for triples whose 2·Area / (product of the two longest sides)
    is below ``tol``.
    """
    sides, sorted_sides, twice_area = _triangle(x, y, z)
    if _is_collinear(sorted_sides, twice_area, tol):
        return math.inf
    return float(np.prod(sides) / (2.0 * twice_area))


def menger_curvature(x, y, z, tol: float = COLLINEAR_TOL) -> float:
    """c(x,y,z) = 4·Area / (|x−y||y−z||z−x|); zero on collinear triples."""
    sides, sorted_sides, twice_area = _triangle(x, y, z)
    if _is_collinear(sorted_sides, twice_area, tol):
        return 0.0
    return float(2.0 * twice_area / np.prod(sides))


def k_kernel(t: PointsLike, n: int | None = None) -> float:
    """
    K(x_0,...,x_{n+1}) = H^{n+1}(Δ) / diam^{n+2} for n+2 points in R^{n+m}.

    :raises ArgumentError: On a wrong point count, too small ambient dimension,
        or when all points coincide.
    """
    points = _rows(t)
    if n is None:
        n = points.shape[0] - 2
    if points.shape[0] != n + 2:
        raise ArgumentError(f"K needs {n + 2} points, got {points.shape[0]}")
    if points.shape[1] < n + 1:
        raise ArgumentError(f"K needs ambient dimension >= {n + 1}")
    span = diameter(points)
    if span == 0.0:
        raise ArgumentError("all points coincide")
    return simplex_volume(points) / span ** (n + 2)


def k_kernel_batch(
    points: np.ndarray, tol: float = COLLINEAR_TOL
) -> Tuple[np.ndarray, np.ndarray]:
    """
    K for N tuples of n+2 points, ``points`` of shape (N, n+2, d).

    Simplices whose Hadamard ratio is at most ``tol`` count as flat and give 0.

    :return: (values, valid); tuples of coincident points are invalid and give 0.
    """
    n = points.shape[-2] - 2
    edges = points[:, 1:, :] - points[:, :1, :]
    spanned = wedge_norm_batch(edges)
    lengths = np.prod(np.linalg.norm(edges, axis=-1), axis=-1)
    volume = np.where(spanned <= tol * lengths, 0.0, spanned) / math.factorial(n + 1)

    span = diameter_batch(points)
    valid = span > 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        values = np.where(valid, volume / np.where(valid, span, 1.0) ** (n + 2), 0.0)
    return values, valid


def k_pq_kernel_batch(
    x: np.ndarray,
    f_values: np.ndarray,
    p: float,
    q: float,
    tol: float = COLLINEAR_TOL,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    K_{p,q} for N domain tuples at once.

    :param x: Domain points, shape (N, n+2, n).
    :param f_values: Function values, shape (N, n+2).
    :param p: Volume exponent.
    :param q: Diameter exponent.
    :param tol: Hadamard-ratio threshold below which the lifted simplex is flat.
    :return: (values, valid); invalid entries (coincident domain tuples) are 0.
    """
    n = x.shape[-1]
    edges = np.concatenate(
        [x[:, 1:, :] - x[:, :1, :], (f_values[:, 1:] - f_values[:, :1])[..., None]],
        axis=-1,
    )
    # n+1 lifted edges in R^{n+1}: the wedge norm is |det|, exact to relative rounding
    determinant = np.abs(np.linalg.det(edges))
    lengths = np.prod(np.linalg.norm(edges, axis=-1), axis=-1)
    flat = determinant <= tol * lengths

    span = diameter_batch(x)
    denominator = span ** ((n + 2) * q)
    valid = denominator > 0.0

    volume = np.where(flat, 0.0, determinant) / math.factorial(n + 1)
    with np.errstate(divide="ignore", invalid="ignore"):
        values = np.where(valid, volume**p / np.where(valid, denominator, 1.0), 0.0)
    return values, valid


def k_pq_kernel(x, f_values, params, tol: float = COLLINEAR_TOL) -> float:
    """
    K_{p,q}(x_0,...,x_{n+1}) for a single tuple of n+2 domain points in R^n.

    The numerator is the (n+1)-volume of the lifted points (x_i, f(x_i)); the
    diameter in the denominator is taken in the domain. Coincident tuples
    return the INVALID_SAMPLE marker rather than raising.
    """
    points = _rows(x)
    values = np.asarray(f_values, dtype=float).reshape(-1)
    n = points.shape[1]
    if points.shape[0] != n + 2 or values.shape[0] != n + 2:
        raise ArgumentError(f"K_pq on R^{n} needs {n + 2} points and values")
    kernel, valid = k_pq_kernel_batch(
        points[None, ...], values[None, :], params.p, params.q, tol
    )
    return float(kernel[0]) if valid[0] else INVALID_SAMPLE
