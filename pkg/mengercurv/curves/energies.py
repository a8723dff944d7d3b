"""Discrete knot energies on closed polylines.

For an outer vertex x_i the curvatures of all pairs (x_j, x_k) come from the
2×2 minors of X − x_i and one distance matrix. Triples that repeat an index
are excluded; triples of coincident or collinear points contribute 0. Outer
indices are processed in fixed chunks and reduced in index order.
"""

from itertools import combinations
from typing import Callable, Tuple

import numpy as np
from scipy.spatial.distance import cdist

from mengercurv.core.exceptions import ArgumentError
from mengercurv.curves.schemes import Polyline
from mengercurv.geometry.kernels import COLLINEAR_TOL
from mengercurv.runner import ChunkRunner

OUTER_CHUNK = 16


def pair_kernels(
    vertices: np.ndarray, distances: np.ndarray, i: int, tol: float = COLLINEAR_TOL
) -> Tuple[np.ndarray, np.ndarray]:
    """
    c(x_i, x_j, x_k) and K(x_i, x_j, x_k) = Area/diam³ for all pairs (j, k).

    :return: Two (N, N) arrays, zero wherever an index repeats or the triple
        is degenerate.
    """
    v = vertices - vertices[i]
    # |v_j ∧ v_k|² as a sum of squared 2×2 minors
    squared_area = np.zeros(distances.shape)
    for l, m in combinations(range(v.shape[1]), 2):
        squared_area += (np.outer(v[:, l], v[:, m]) - np.outer(v[:, m], v[:, l])) ** 2
    twice_area = np.sqrt(squared_area)

    a = np.linalg.norm(v, axis=1)
    side_ij = np.broadcast_to(a[:, None], distances.shape)
    side_ik = np.broadcast_to(a[None, :], distances.shape)
    sides = np.stack([side_ij, side_ik, distances], axis=0)
    ordered = np.sort(sides, axis=0)
    product = side_ij * side_ik * distances

    admissible = ordered[0] > 0.0
    admissible &= twice_area >= tol * ordered[1] * ordered[2]
    admissible[i, :] = False
    admissible[:, i] = False
    np.fill_diagonal(admissible, False)

    with np.errstate(divide="ignore", invalid="ignore"):
        curvature = np.where(admissible, 2.0 * twice_area / product, 0.0)
        kernel = np.where(admissible, twice_area / 2.0 / ordered[2] ** 3, 0.0)
    return curvature, kernel


def _per_vertex(
    curve: Polyline,
    row: Callable[[np.ndarray, np.ndarray, np.ndarray], float],
    threads: int,
    tol: float,
    label: str,
) -> np.ndarray:
    if not curve.closed:
        raise ArgumentError("knot energies are defined on closed curves")
    vertices = curve.vertices
    distances = cdist(vertices, vertices)
    weights = curve.weights
    n_vertices = len(curve)
    starts = list(range(0, n_vertices, OUTER_CHUNK))

    def task(index: int) -> np.ndarray:
        start = starts[index]
        out = []
        for i in range(start, min(start + OUTER_CHUNK, n_vertices)):
            curvature, kernel = pair_kernels(vertices, distances, i, tol)
            out.append(row(curvature, kernel, weights) * weights[i])
        return np.array(out)

    return np.concatenate(ChunkRunner.run(task, len(starts), threads=threads, label=label))


def menger_energy_mp(
    curve: Polyline, p: float, threads: int = 1, degeneracy_tol: float = COLLINEAR_TOL
) -> float:
    """M_p = Σ_{i,j,k distinct} c(x_i, x_j, x_k)^p w_i w_j w_k."""
    rows = _per_vertex(
        curve,
        lambda c, _, w: float(w @ c**p @ w),
        threads,
        degeneracy_tol,
        "menger energy",
    )
    return float(np.sum(rows))


def intermediate_energy_ip(
    curve: Polyline, p: float, threads: int = 1, degeneracy_tol: float = COLLINEAR_TOL
) -> float:
    """I_p = Σ_{i≠j} (max_k c(x_i, x_j, x_k))^p w_i w_j."""
    rows = _per_vertex(
        curve,
        lambda c, _, w: float(np.max(c, axis=1) ** p @ w),
        threads,
        degeneracy_tol,
        "intermediate energy",
    )
    return float(np.sum(rows))


def sup_energy_up(
    curve: Polyline, p: float, threads: int = 1, degeneracy_tol: float = COLLINEAR_TOL
) -> float:
    """U_p = Σ_i (max_{j,k} c(x_i, x_j, x_k))^p w_i."""
    rows = _per_vertex(
        curve,
        lambda c, _, w: float(np.max(c)) ** p,
        threads,
        degeneracy_tol,
        "sup energy",
    )
    return float(np.sum(rows))


def kernel_energy_ep(
    curve: Polyline, p: float, threads: int = 1, degeneracy_tol: float = COLLINEAR_TOL
) -> float:
    """Σ_{i,j,k distinct} K(x_i, x_j, x_k)^p w_i w_j w_k, with K = Area/diam³."""
    rows = _per_vertex(
        curve,
        lambda _, k, w: float(w @ k**p @ w),
        threads,
        degeneracy_tol,
        "kernel energy",
    )
    return float(np.sum(rows))
