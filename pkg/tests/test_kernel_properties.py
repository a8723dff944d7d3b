import math

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from mengercurv.funcspace.params import EnergyParams, derive_q
from mengercurv.geometry import k_pq_kernel_batch, menger_curvature, simplex_volume
from mengercurv.geometry.kernels import diameter_batch

coordinates = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False, width=64)
exponents = st.sampled_from([(1, 0.5, 2.0), (1, 0.25, 3.0), (2, 0.5, 3.0), (2, 0.9, 1.5)])


def _tuples(n: int, count: int = 64):
    return arrays(np.float64, (count, n + 2, n), elements=coordinates)


def _well_conditioned(x: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Tuples whose lifted simplex is far from flat and not tiny."""
    edges = np.concatenate(
        [x[:, 1:, :] - x[:, :1, :], (values[:, 1:] - values[:, :1])[..., None]], axis=-1
    )
    lengths = np.prod(np.linalg.norm(edges, axis=-1), axis=-1)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.abs(np.linalg.det(edges)) / lengths
    return (ratio > 1e-3) & (diameter_batch(x) > 1e-2)


@settings(max_examples=60, deadline=None)
@given(exponents, st.data())
def test_kernel_is_invariant_under_adding_affine_functions(exponent, data):
    n, s, p = exponent
    params = EnergyParams(n=n, s=s, p=p)
    x = data.draw(_tuples(n))
    values = data.draw(arrays(np.float64, (x.shape[0], n + 2), elements=coordinates))
    slope = data.draw(arrays(np.float64, (n,), elements=coordinates))
    intercept = data.draw(coordinates)
    shifted = values + x @ slope + intercept

    base, valid = k_pq_kernel_batch(x, values, params.p, params.q)
    moved, _ = k_pq_kernel_batch(x, shifted, params.p, params.q)
    keep = valid & _well_conditioned(x, values) & _well_conditioned(x, shifted)
    assert np.allclose(moved[keep], base[keep], rtol=1e-8, atol=0.0)


@settings(max_examples=60, deadline=None)
@given(exponents, st.sampled_from([-3.0, 0.5, 10.0]), st.data())
def test_kernel_is_homogeneous_of_degree_p(exponent, c, data):
    n, s, p = exponent
    params = EnergyParams(n=n, s=s, p=p)
    x = data.draw(_tuples(n))
    values = data.draw(arrays(np.float64, (x.shape[0], n + 2), elements=coordinates))

    base, valid = k_pq_kernel_batch(x, values, params.p, params.q)
    scaled, _ = k_pq_kernel_batch(x, c * values, params.p, params.q)
    keep = valid & _well_conditioned(x, values)
    assert np.allclose(scaled[keep], abs(c) ** p * base[keep], rtol=1e-9, atol=0.0)


@settings(max_examples=60, deadline=None)
@given(exponents, st.data())
def test_kernel_is_invariant_under_relabeling(exponent, data):
    n, s, p = exponent
    params = EnergyParams(n=n, s=s, p=p)
    x = data.draw(_tuples(n, count=16))
    values = data.draw(arrays(np.float64, (16, n + 2), elements=coordinates))
    order = data.draw(st.permutations(range(n + 2)))

    base, valid = k_pq_kernel_batch(x, values, params.p, params.q)
    relabeled, _ = k_pq_kernel_batch(
        x[:, order, :], values[:, order], params.p, params.q
    )
    keep = valid & _well_conditioned(x, values)
    assert np.allclose(relabeled[keep], base[keep], rtol=1e-9, atol=0.0)


@given(
    st.integers(min_value=1, max_value=6),
    st.floats(min_value=0.01, max_value=0.99),
    st.floats(min_value=1.01, max_value=50.0),
    st.floats(min_value=0.01, max_value=10.0),
)
def test_derive_q_increases_in_p_and_s(n, s, p, step):
    assert derive_q(n, s, p + step) > derive_q(n, s, p)
    assert derive_q(n, min(s + step / 20.0, 0.995), p) >= derive_q(n, s, p)


@given(
    arrays(np.float64, (3, 3), elements=coordinates),
    st.floats(min_value=0.1, max_value=10.0),
)
def test_curvature_scales_inversely_with_the_curve(points, factor):
    x, y, z = points
    sides = [np.linalg.norm(x - y), np.linalg.norm(y - z), np.linalg.norm(x - z)]
    if min(sides) < 1e-3:
        return
    base = menger_curvature(x, y, z)
    if base == 0.0 or simplex_volume(points) < 1e-6:
        return
    assert math.isclose(
        menger_curvature(factor * x, factor * y, factor * z), base / factor, rel_tol=1e-8
    )
