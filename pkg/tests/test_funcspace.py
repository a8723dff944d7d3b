import math

import numpy as np
import pytest
from pydantic import ValidationError

from mengercurv.core.exceptions import ArgumentError, UnsupportedOperationError
from mengercurv.funcspace import (
    BallDomain,
    BoxDomain,
    EnergyParams,
    FunctionDescriptor,
    GridFunction,
    catalog_names,
    default_catalog,
    derive_q,
    dorronsoro_catalog,
    equal_exponent_s,
    load_function_descriptors,
    load_grid_csv,
    lp_norm,
    unit_ball_volume,
)
from mengercurv.funcspace import catalog
from mengercurv.helpers import CounterStream


def test_q_for_curves_with_p_two_and_half_smoothness():
    assert derive_q(1, 0.5, 2.0) == pytest.approx(2.0 / 3.0 + 5.0 / 3.0, rel=1e-15)


def test_q_for_surfaces():
    # n = 2, s = 1/2, p = 3: 6/4 + 3 * 3.5 / 4
    assert derive_q(2, 0.5, 3.0) == pytest.approx(1.5 + 2.625, rel=1e-15)


@pytest.mark.parametrize(
    "n, s, p", [(0, 0.5, 2.0), (1, 0.0, 2.0), (1, 1.0, 2.0), (1, 0.5, 1.0), (1, 0.5, math.inf)]
)
def test_q_rejects_parameters_outside_range(n, s, p):
    with pytest.raises(ArgumentError):
        derive_q(n, s, p)


def test_energy_params_scaling_exponent_is_n():
    for n, s, p in [(1, 0.5, 2.0), (2, 0.25, 3.0), (3, 0.9, 8.0)]:
        params = EnergyParams(n=n, s=s, p=p)
        assert params.scaling_exponent() == pytest.approx(n, abs=1e-12)


def test_q_offset_shifts_scaling_exponent():
    params = EnergyParams(n=1, s=0.5, p=2.0).with_q_offset(0.1)
    assert not params.exponent_consistent
    assert params.scaling_exponent() == pytest.approx(1.0 - 3 * 0.1, abs=1e-12)


def test_energy_params_validation():
    with pytest.raises(ValidationError):
        EnergyParams(n=1, s=1.5, p=2.0)
    with pytest.raises(ValidationError):
        EnergyParams(n=1, s=0.5, p=math.inf)


def test_hypothesis_flag():
    assert EnergyParams(n=1, s=0.5, p=2.0).hypothesis_holds
    assert not EnergyParams(n=4, s=0.1, p=2.0).hypothesis_holds


def test_graph_smoothness_makes_q_equal_p():
    s = equal_exponent_s(1, 4.0)
    assert s == pytest.approx(0.5)
    assert derive_q(1, s, 4.0) == pytest.approx(4.0, rel=1e-14)
    with pytest.raises(ArgumentError):
        equal_exponent_s(1, 2.0)


def test_unit_ball_volumes():
    assert unit_ball_volume(1) == pytest.approx(2.0)
    assert unit_ball_volume(2) == pytest.approx(math.pi)
    assert unit_ball_volume(3) == pytest.approx(4.0 * math.pi / 3.0)


def test_box_domain_geometry():
    box = BoxDomain(lower=[0.0, -1.0], upper=[2.0, 1.0])
    assert box.dimension == 2
    assert box.volume == pytest.approx(4.0)
    assert box.diameter == pytest.approx(math.sqrt(8.0))
    assert bool(box.contains([1.0, 0.0]))
    assert not bool(box.contains([2.0, 0.0]))


def test_box_domain_rejects_empty_edges():
    with pytest.raises(ValidationError):
        BoxDomain(lower=[0.0], upper=[0.0])


def test_h_box_of_interval_point():
    h_box = BoxDomain.interval(0.0, 1.0).h_box([0.3])
    assert h_box.half_widths == pytest.approx([0.3])
    assert h_box.exact


def test_h_box_outside_domain_is_rejected():
    with pytest.raises(ArgumentError):
        BoxDomain.cube(2).h_box([1.5, 0.5])


def test_ball_domain_samples_inside():
    ball = BallDomain(center=[1.0, 1.0], radius=0.5)
    block = CounterStream(seed=9, draws=ball.draws_per_point()).block(0, 2000)
    assert np.all(ball.contains(ball.sample(block)))


def test_ball_h_box_shrinks_off_center():
    h_box = BallDomain(center=[0.0, 0.0], radius=1.0).h_box([0.25, 0.0])
    assert h_box.radius == pytest.approx(0.75)
    assert not h_box.exact


def test_scaled_domain():
    box = BoxDomain.interval(-1.0, 1.0).scaled(3.0)
    assert box.volume == pytest.approx(6.0)


def test_catalog_lists_every_builder():
    assert {"affine", "quadratic", "gaussian-bump", "compact-bump", "sine-pack"} <= set(
        catalog_names()
    )


def test_unknown_catalog_name():
    with pytest.raises(ArgumentError):
        catalog.test_function("no-such-function", {"n": 1})


def test_bad_builder_parameters():
    with pytest.raises(ArgumentError):
        catalog.test_function("quadratic", {"n": 1, "wrong": 2})


def test_quadratic_gradient_matches_finite_difference(rng):
    f = catalog.test_function("quadratic", {"n": 3, "center": [0.1, 0.2, 0.3]})
    x = rng.uniform(size=(5, 3))
    step = 1e-6
    numeric = np.stack(
        [(f(x + step * e) - f(x - step * e)) / (2 * step) for e in np.eye(3)], axis=-1
    )
    assert np.allclose(f.gradient(x), numeric, atol=1e-7)


def test_compact_bump_vanishes_outside_support():
    f = catalog.test_function("compact-bump", {"n": 1, "center": 0.5, "radius": 0.2})
    assert f.on_line([0.1, 0.29, 0.71, 0.9]) == pytest.approx([0.0, 0.0, 0.0, 0.0])
    assert f.on_line([0.5])[0] == pytest.approx(1.0)
    lower, upper = f.support
    assert lower == pytest.approx([0.3])
    assert upper == pytest.approx([0.7])


def test_power_cusp_records_hoelder_class():
    f = catalog.test_function("power-cusp", {"n": 1, "alpha": 0.3})
    assert f.smoothness == "C^{0,0.3}"


def test_transforms_of_models():
    f = catalog.test_function("quadratic", {"n": 1})
    x = np.array([0.25, 0.5])
    assert f.scaled(3.0).on_line(x) == pytest.approx(3.0 * x**2)
    assert f.plus_affine([2.0], 1.0).on_line(x) == pytest.approx(x**2 + 2.0 * x + 1.0)
    assert f.translated([0.5]).on_line(x) == pytest.approx((x - 0.5) ** 2)
    # λ^{1+s} f(x/λ) with λ = 2, s = 1/2
    assert f.rescaled(2.0, 0.5).on_line(x) == pytest.approx(2.0**1.5 * (x / 2.0) ** 2)


def test_model_rejects_wrong_dimension():
    f = catalog.test_function("quadratic", {"n": 2})
    with pytest.raises(ArgumentError):
        f(np.zeros((4, 3)))


def test_grid_function_interpolates_linear_data_exactly():
    axis = np.linspace(0.0, 1.0, 11)
    grid = GridFunction([axis], 2.0 * axis + 1.0)
    assert grid.on_line([0.13, 0.77]) == pytest.approx([1.26, 2.54])
    with pytest.raises(UnsupportedOperationError):
        grid.gradient(np.array([[0.5]]))


def test_grid_function_outside_region():
    axis = np.linspace(0.0, 1.0, 5)
    grid = GridFunction([axis], axis**2)
    with pytest.raises(ArgumentError):
        grid.on_line([1.5])


def test_load_grid_csv(tmp_path):
    path = tmp_path / "plane.csv"
    lines = ["x_1,x_2,f"]
    for a in (0.0, 0.5, 1.0):
        for b in (0.0, 0.5, 1.0):
            lines.append(f"{a},{b},{a + 2 * b}")
    path.write_text("\n".join(lines) + "\n")

    grid = load_grid_csv(path)
    assert grid.dimension == 2
    assert grid(np.array([0.25, 0.75])) == pytest.approx(1.75)


def test_load_grid_csv_rejects_shuffled_rows(tmp_path):
    path = tmp_path / "shuffled.csv"
    path.write_text("x_1,f\n0.5,1\n0.0,0\n1.0,2\n")
    with pytest.raises(ArgumentError):
        load_grid_csv(path)


def test_load_grid_csv_rejects_bad_header(tmp_path):
    path = tmp_path / "header.csv"
    path.write_text("x,y\n0,0\n1,1\n")
    with pytest.raises(ArgumentError):
        load_grid_csv(path)


def test_function_descriptors_from_json(tmp_path):
    path = tmp_path / "functions.json"
    path.write_text(
        '{"functions": [{"name": "quadratic", "params": {"n": 1}},'
        ' {"name": "gaussian-bump", "params": {"n": 1, "width": 0.1}}]}'
    )
    models = load_function_descriptors(path)
    assert [model.name for model in models] == ["quadratic", "gaussian-bump"]


def test_grid_descriptor_needs_path():
    with pytest.raises(ArgumentError):
        FunctionDescriptor(name="grid-csv").build()


def test_default_catalogs_live_in_the_box():
    assert len(default_catalog(2, -1.0, 1.0)) == 4
    for model in dorronsoro_catalog(1, 0.0, 2.0):
        lower, upper = model.support
        assert np.all(lower >= 0.0) and np.all(upper <= 2.0)


def test_lp_norm_of_linear_function_by_quadrature():
    f = catalog.test_function("affine", {"n": 1, "slope": 1.0})
    estimate = lp_norm(f, BoxDomain.interval(0.0, 1.0), p=2.0)
    assert estimate.deterministic
    assert estimate.value == pytest.approx(1.0 / 3.0, rel=1e-12)


def test_lp_norm_monte_carlo_in_the_plane(menger_client):
    f = catalog.test_function("affine", {"n": 2, "slope": [1.0, 0.0]})
    estimate = lp_norm(
        f, BoxDomain.cube(2), p=2.0, samples=100_000, seed=4, threads=menger_client.threads
    )
    assert abs(estimate.value - 1.0 / 3.0) <= 4.0 * estimate.stderr
