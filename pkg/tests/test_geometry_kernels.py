import math

import numpy as np
import pytest

from mengercurv.core.exceptions import ArgumentError, InternalGeometryError
from mengercurv.funcspace.params import EnergyParams
from mengercurv.geometry import (
    AffineMap,
    PointTuple,
    circumradius,
    diameter,
    k_kernel,
    k_kernel_batch,
    k_pq_kernel,
    menger_curvature,
    simplex_volume,
    wedge_norm,
)
from mengercurv.geometry import kernels
from tests.helpers import (
    brute_force_diameter,
    cayley_menger_volume,
    circumradius_by_formula,
    wedge_norm_by_minors,
)


def test_diameter_of_unit_square_corners():
    square = PointTuple.of((0, 0), (1, 0), (0, 1), (1, 1))
    assert diameter(square) == pytest.approx(math.sqrt(2.0), rel=1e-15)


def test_diameter_needs_two_points():
    with pytest.raises(ArgumentError):
        diameter(PointTuple.of((0.0, 0.0)))


def test_diameter_matches_brute_force(rng):
    points = rng.normal(size=(9, 4))
    assert diameter(points) == pytest.approx(brute_force_diameter(points), rel=1e-14)


def test_wedge_norm_of_orthonormal_vectors_is_one():
    assert wedge_norm((1, 0, 0), (0, 1, 0)) == pytest.approx(1.0, abs=1e-15)


def test_wedge_norm_of_parallel_vectors_is_zero():
    assert wedge_norm((1, 2, 3), (2, 4, 6)) == 0.0


def test_wedge_norm_rejects_more_vectors_than_dimensions():
    with pytest.raises(ArgumentError):
        wedge_norm((1, 0), (0, 1), (1, 1))


def test_wedge_norm_rejects_a_negative_gram_determinant(mocker):
    vectors = np.array([[1.0, 0.0, 0.0], [0.0, 2.0, 0.0]])
    mocker.patch.object(kernels, "_gram_determinant", return_value=np.array(-1.0))
    with pytest.raises(InternalGeometryError):
        kernels.wedge_norm_batch(vectors)


def test_wedge_norm_clamps_a_rounding_level_gram_determinant(mocker):
    # squared lengths 1 and 4
    vectors = np.array([[1.0, 0.0, 0.0], [0.0, 2.0, 0.0]])
    mocker.patch.object(kernels, "_gram_determinant", return_value=np.array(-4e-14))
    assert float(kernels.wedge_norm_batch(vectors)) == 0.0


def test_wedge_norm_of_square_stacks_is_the_absolute_determinant(rng):
    for d in (2, 3, 4):
        vectors = rng.normal(size=(d, d))
        assert wedge_norm(vectors) == pytest.approx(abs(np.linalg.det(vectors)), rel=1e-10)


def test_wedge_norm_matches_its_minor_coordinates(rng):
    for k, d in [(1, 4), (2, 3), (3, 5), (3, 9), (4, 6)]:
        vectors = rng.normal(size=(k, d))
        assert wedge_norm(vectors) == pytest.approx(wedge_norm_by_minors(vectors), rel=1e-10)


def test_simplex_volume_of_unit_triangle():
    assert simplex_volume(PointTuple.of((0, 0), (1, 0), (0, 1))) == pytest.approx(0.5)


def test_simplex_volume_of_repeated_points_is_zero():
    assert simplex_volume(PointTuple.of((1, 2, 3), (1, 2, 3), (0, 0, 0))) == 0.0


def test_simplex_volume_of_a_single_point_is_zero():
    assert simplex_volume(PointTuple.of((4.0, 5.0))) == 0.0


def test_simplex_volume_matches_cayley_menger(rng):
    for k, d in [(2, 2), (2, 3), (3, 3), (3, 5), (4, 4)]:
        points = rng.normal(size=(k + 1, d))
        assert simplex_volume(points) == pytest.approx(
            cayley_menger_volume(points), rel=1e-8
        )


def test_circumradius_of_right_triangle():
    assert circumradius((0, 0), (2, 0), (0, 2)) == pytest.approx(math.sqrt(2.0))


def test_circumradius_matches_heron(rng):
    x, y, z = rng.normal(size=(3, 3))
    assert circumradius(x, y, z) == pytest.approx(circumradius_by_formula(x, y, z), rel=1e-10)


def test_collinear_triples_have_infinite_radius_and_zero_curvature():
    assert circumradius((0, 0), (1, 1), (3, 3)) == math.inf
    assert menger_curvature((0, 0), (1, 1), (3, 3)) == 0.0


def test_collinear_triples_in_space_are_exactly_flat():
    direction = np.array([0.3, -1.7, 2.9])
    points = [k * direction for k in (0.0, 1.0, 2.5)]
    assert menger_curvature(*points) == 0.0


def test_circumradius_rejects_coincident_points():
    with pytest.raises(ArgumentError):
        circumradius((0, 0), (0, 0), (1, 0))


def test_menger_curvature_on_the_unit_circle(rng):
    for angles in rng.uniform(0.0, 2.0 * math.pi, size=(20, 3)):
        points = [(math.cos(t), math.sin(t)) for t in angles]
        assert menger_curvature(*points) == pytest.approx(1.0, rel=1e-8)


def test_k_kernel_of_unit_triangle():
    # area 1/2, diameter sqrt(2)
    value = k_kernel(PointTuple.of((0, 0), (1, 0), (0, 1)))
    assert value == pytest.approx(0.5 / math.sqrt(2.0) ** 3, rel=1e-14)


def test_k_kernel_is_bounded_by_a_quarter_of_the_curvature(rng):
    for x, y, z in rng.normal(size=(50, 3, 2)):
        assert 4.0 * k_kernel(np.stack([x, y, z])) <= menger_curvature(x, y, z) * (1 + 1e-12)


def test_k_kernel_rejects_coincident_points():
    with pytest.raises(ArgumentError):
        k_kernel(PointTuple.of((1, 1), (1, 1), (1, 1)))


def test_k_kernel_batch_marks_coincident_tuples_invalid():
    points = np.array([[[0, 0], [1, 0], [0, 1]], [[2, 2], [2, 2], [2, 2]]], dtype=float)
    values, valid = k_kernel_batch(points)
    assert valid.tolist() == [True, False]
    assert values[1] == 0.0


def test_k_pq_kernel_vanishes_on_affine_lifts():
    params = EnergyParams(n=1, s=0.5, p=2.0)
    x = [[0.0], [0.3], [0.9]]
    values = [2.0 * xi[0] + 1.0 for xi in x]
    assert k_pq_kernel(x, values, params) == 0.0


def test_k_pq_kernel_marks_coincident_domain_tuples():
    params = EnergyParams(n=1, s=0.5, p=2.0)
    value = k_pq_kernel([[0.2], [0.2], [0.2]], [0.0, 1.0, 2.0], params)
    assert kernels.is_invalid_sample(value)


def test_k_pq_kernel_of_a_parabola_by_hand():
    # lifted triangle (0,0), (0.5,0.25), (1,1): area 1/8, domain diameter 1
    params = EnergyParams(n=1, s=0.5, p=2.0)
    value = k_pq_kernel([[0.0], [0.5], [1.0]], [0.0, 0.25, 1.0], params)
    assert value == pytest.approx((1.0 / 8.0) ** 2, rel=1e-14)


def test_rigid_motions_preserve_volumes(rng):
    points = PointTuple(points=rng.normal(size=(4, 3)))
    motion = AffineMap.random_rigid(3, rng)
    assert simplex_volume(motion(points)) == pytest.approx(simplex_volume(points), rel=1e-10)
    assert diameter(motion(points)) == pytest.approx(diameter(points), rel=1e-12)
