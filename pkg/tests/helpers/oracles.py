"""Independent reference computations for the geometry and energy tests."""

import math
from itertools import combinations

import numpy as np
from scipy import integrate


def cayley_menger_volume(points) -> float:
    """k-volume of the simplex on k+1 points from the Cayley–Menger determinant."""
    points = np.asarray(points, dtype=float)
    k = points.shape[0] - 1
    squared = np.sum((points[:, None, :] - points[None, :, :]) ** 2, axis=-1)
    matrix = np.ones((k + 2, k + 2))
    matrix[0, 0] = 0.0
    matrix[1:, 1:] = squared
    factor = (-1) ** (k + 1) / (2**k * math.factorial(k) ** 2)
    return math.sqrt(max(factor * np.linalg.det(matrix), 0.0))


def wedge_norm_by_minors(vectors) -> float:
    """|w_1 ∧ ... ∧ w_k| from its coordinates, the k×k minors of the stacked vectors."""
    vectors = np.atleast_2d(np.asarray(vectors, dtype=float))
    k, d = vectors.shape
    minors = [np.linalg.det(vectors[:, list(columns)]) for columns in combinations(range(d), k)]
    return math.sqrt(sum(minor**2 for minor in minors))


def brute_force_diameter(points) -> float:
    points = np.asarray(points, dtype=float)
    return max(np.linalg.norm(a - b) for a, b in combinations(points, 2))


def circumradius_by_formula(x, y, z) -> float:
    """R = abc / (4·Area) with Heron's formula."""
    a = np.linalg.norm(np.subtract(y, z))
    b = np.linalg.norm(np.subtract(x, z))
    c = np.linalg.norm(np.subtract(x, y))
    s = (a + b + c) / 2.0
    area = math.sqrt(max(s * (s - a) * (s - b) * (s - c), 0.0))
    return a * b * c / (4.0 * area)


def nested_energy_1d(f, a: float, b: float, p: float, q: float) -> float:
    """
    E_{p,q} for n = 1 by nested scipy quadrature over ordered triples.

    The integrand is symmetric, so the integral over (a, b)^3 is 6 times the
    integral over x < y < z. Only usable for smooth f and moderate exponents.
    """

    def integrand(z, y, x):
        values = np.array([f(x), f(y), f(z)])
        lifted = np.array([[y - x, values[1] - values[0]], [z - x, values[2] - values[0]]])
        area = abs(np.linalg.det(lifted)) / 2.0
        return area**p / (z - x) ** (3.0 * q)

    value, _ = integrate.tplquad(
        integrand,
        a,
        b,
        lambda x: x,
        lambda x: b,
        lambda x, y: y,
        lambda x, y: b,
        epsabs=1e-10,
        epsrel=1e-6,
    )
    return 6.0 * value
