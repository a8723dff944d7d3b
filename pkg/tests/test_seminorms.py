import math

import numpy as np
import pytest

from mengercurv.core.exceptions import ArgumentError, UnsupportedOperationError
from mengercurv.funcspace import BoxDomain, GridFunction, catalog
from mengercurv.seminorms import (
    OmegaConfig,
    best_affine_fit,
    cube_residual_moments,
    dorronsoro_seminorm,
    gagliardo_seminorm,
    omega,
    omega_batch,
    second_diff_seminorm,
    second_difference,
    tail_bound,
)
from tests.helpers import handle_response

UNIT = BoxDomain.interval(0.0, 1.0)


def closed_form_second_diff_of_square(s: float, p: float) -> float:
    # Δ²_h x² = 2h², so [x²]^p = 2^{p+1} ∫_0^{1/2} h^{(1−s)p − 1} (1 − 2h) dh on (0, 1)
    a = (1.0 - s) * p
    return 2.0 ** (p + 1.0 - a) / (a * (a + 1.0))


def test_second_difference_of_square_is_constant():
    f = catalog.test_function("quadratic", {"n": 1})
    x = np.array([[0.3], [0.5]])
    assert second_difference(f, x, np.array([0.1])) == pytest.approx([0.02, 0.02])


def test_second_diff_quadrature_matches_closed_form(menger_client):
    f = catalog.test_function("quadratic", {"n": 1})
    result = second_diff_seminorm(f, UNIT, s=0.5, p=2.0, mode="quadrature")

    if menger_client.debug:
        handle_response(result)

    assert result.deterministic
    assert result.value == pytest.approx(2.0, rel=1e-3)
    assert closed_form_second_diff_of_square(0.5, 2.0) == pytest.approx(2.0)


@pytest.mark.parametrize("s, p", [(0.25, 2.0), (0.5, 3.0), (0.75, 1.5)])
def test_second_diff_quadrature_for_other_exponents(s, p):
    f = catalog.test_function("quadratic", {"n": 1})
    result = second_diff_seminorm(f, UNIT, s=s, p=p, mode="quadrature")
    assert result.value == pytest.approx(closed_form_second_diff_of_square(s, p), rel=1e-3)


def test_second_diff_monte_carlo_agrees_with_quadrature(menger_client):
    f = catalog.test_function("quadratic", {"n": 1})
    result = second_diff_seminorm(
        f,
        UNIT,
        s=0.5,
        p=2.0,
        mode="monte-carlo",
        samples=200_000,
        seed=7,
        threads=menger_client.threads,
    )

    if menger_client.debug:
        handle_response(result)

    assert result.mode == "monte-carlo"
    assert 0.0 < result.acceptance_ratio < 1.0
    assert abs(result.value - 2.0) <= 4.0 * result.stderr


def test_second_diff_of_affine_function_vanishes(menger_client):
    f = catalog.test_function("affine", {"n": 2, "slope": [1.5, -2.0], "intercept": 0.5})
    result = second_diff_seminorm(
        f, BoxDomain.cube(2), s=0.5, p=2.0, samples=20_000, seed=1, threads=menger_client.threads
    )
    assert abs(result.value) < 1e-6


def test_second_diff_cutoff_removes_small_offsets():
    f = catalog.test_function("quadratic", {"n": 1})
    full = second_diff_seminorm(f, UNIT, s=0.5, p=2.0)
    cut = second_diff_seminorm(f, UNIT, s=0.5, p=2.0, cutoff=0.25)
    # 8 ∫_{1/4}^{1/2} (1 − 2h) dh = 1/2
    assert cut.value == pytest.approx(0.5, rel=1e-6)
    assert cut.value < full.value


@pytest.mark.parametrize("s, p", [(0.5, 2.0), (0.75, 1.5)])
def test_second_diff_quadrature_is_stable_under_doubling_the_depth(s, p):
    f = catalog.test_function("gaussian-bump", {"n": 1, "center": 0.5, "width": 0.15})
    shallow = second_diff_seminorm(f, UNIT, s=s, p=p, depth=16)
    deep = second_diff_seminorm(f, UNIT, s=s, p=p, depth=32)
    assert shallow.converged
    assert deep.converged
    assert abs(deep.value - shallow.value) < 0.005 * deep.value
    assert deep.details["relative_change"] < 0.005
    assert deep.details["small_scale_slab"] > 0.0


def test_second_diff_cutoff_above_the_floor_needs_no_slab():
    f = catalog.test_function("quadratic", {"n": 1})
    cut = second_diff_seminorm(f, UNIT, s=0.5, p=2.0, cutoff=0.25)
    assert cut.details["small_scale_slab"] == 0.0
    assert cut.details["coarse_value"] == pytest.approx(0.5, rel=1e-6)


def test_second_diff_cutoff_beyond_half_width_is_zero():
    f = catalog.test_function("quadratic", {"n": 1})
    assert second_diff_seminorm(f, UNIT, s=0.5, p=2.0, cutoff=0.6).value == 0.0


def test_second_diff_rejects_bad_arguments():
    f = catalog.test_function("quadratic", {"n": 2})
    with pytest.raises(ArgumentError):
        second_diff_seminorm(f, BoxDomain.cube(2), s=0.5, p=2.0, mode="quadrature")
    with pytest.raises(ArgumentError):
        second_diff_seminorm(f, BoxDomain.cube(2), s=1.0, p=2.0)


def test_gagliardo_of_square_gradient(menger_client):
    # ∇(x²) = 2x: 2 ∫_0^1 4 (1 − t) dt = 4
    f = catalog.test_function("quadratic", {"n": 1})
    result = gagliardo_seminorm(f, UNIT, s=0.5, p=2.0)

    if menger_client.debug:
        handle_response(result)

    assert result.details["pth_power"] == pytest.approx(4.0, rel=1e-6)
    assert result.value == pytest.approx(2.0, rel=1e-6)


def test_gagliardo_monte_carlo_in_the_plane(menger_client):
    f = catalog.test_function("quadratic", {"n": 2})
    result = gagliardo_seminorm(
        f, BoxDomain.cube(2), s=0.5, p=2.0, samples=100_000, seed=3, threads=menger_client.threads
    )
    assert result.value > 0.0
    assert result.details["pth_power_stderr"] < 0.05 * result.details["pth_power"]


def test_gagliardo_needs_a_gradient():
    axis = np.linspace(0.0, 1.0, 9)
    with pytest.raises(UnsupportedOperationError):
        gagliardo_seminorm(GridFunction([axis], axis**2), UNIT, s=0.5, p=2.0)


def test_affine_fit_reproduces_affine_function():
    f = catalog.test_function("affine", {"n": 2, "slope": [2.0, -1.0], "intercept": 3.0})
    fit = best_affine_fit(f, [0.4, 0.6], 0.2)
    assert fit.gradient == pytest.approx([2.0, -1.0], abs=1e-12)
    assert fit.intercept == pytest.approx(3.0, abs=1e-12)


def test_affine_fit_residual_is_orthogonal_to_affine_functions():
    f = catalog.test_function("gaussian-bump", {"n": 2, "center": [0.5, 0.5]})
    fit = best_affine_fit(f, [0.45, 0.55], 0.3)
    assert cube_residual_moments(f, fit) == pytest.approx(np.zeros(3), abs=1e-10)


def test_affine_fit_rejects_degenerate_cube():
    f = catalog.test_function("quadratic", {"n": 1})
    with pytest.raises(ArgumentError):
        best_affine_fit(f, [0.5], 0.0)


def test_omega_of_square_is_t_squared_over_six():
    # (x − c)² − t²/12 peaks at the cube's ends with t²/6
    f = catalog.test_function("quadratic", {"n": 1})
    assert omega(f, [0.5], 0.1) == pytest.approx(0.01 / 6.0, rel=1e-10)


def test_omega_of_affine_function_vanishes():
    f = catalog.test_function("affine", {"n": 2, "slope": [1.0, 4.0]})
    values = omega_batch(f, np.array([[0.1, 0.2], [0.7, 0.3]]), np.array([0.05, 0.4]))
    assert np.all(values < 1e-12)


def test_omega_respects_grid_region():
    axis = np.linspace(0.0, 1.0, 33)
    grid = GridFunction([axis], np.sin(axis))
    with pytest.raises(ArgumentError):
        omega(grid, [0.05], 0.1)
    assert omega(grid, [0.5], 0.1, OmegaConfig(offsets=3)) >= 0.0


def test_tail_bound_is_infinite_without_decay():
    assert math.isinf(tail_bound(2, 0.1, 1.5, sup=1.0, width=1.0, t_max=4.0))
    assert math.isfinite(tail_bound(1, 0.5, 2.0, sup=1.0, width=1.0, t_max=4.0))


def test_dorronsoro_needs_compact_support_or_box():
    f = catalog.test_function("gaussian-bump", {"n": 1})
    with pytest.raises(ArgumentError):
        dorronsoro_seminorm(f, s=0.5, p=2.0)


def test_dorronsoro_of_compact_bump(menger_client):
    f = catalog.test_function("compact-bump", {"n": 1, "center": 0.5, "radius": 0.3})
    result = dorronsoro_seminorm(
        f, s=0.5, p=2.0, samples=4000, seed=5, threads=menger_client.threads
    )

    if menger_client.debug:
        handle_response(result)

    assert result.details["truncated"] > 0.0
    assert result.details["tail"] > 0.0
    assert result.value == pytest.approx(
        result.details["truncated"] + result.details["tail"], rel=1e-12
    )


def test_dorronsoro_ignores_added_affine_functions(menger_client):
    f = catalog.test_function("compact-bump", {"n": 1, "center": 0.5, "radius": 0.3})
    box = f.support
    shifted = f.plus_affine([3.0], -1.0)
    base = dorronsoro_seminorm(f, s=0.5, p=2.0, box=box, samples=2000, seed=8)
    moved = dorronsoro_seminorm(shifted, s=0.5, p=2.0, box=box, samples=2000, seed=8)
    assert moved.diagnostics
    assert moved.details["truncated"] == pytest.approx(base.details["truncated"], rel=1e-6)


def test_dorronsoro_rejects_reversed_scales():
    f = catalog.test_function("compact-bump", {"n": 1})
    with pytest.raises(ArgumentError):
        dorronsoro_seminorm(f, s=0.5, p=2.0, t_min=1.0, t_max=0.5)
