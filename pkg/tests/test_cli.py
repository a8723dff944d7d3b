import json
import math

import pytest

from mengercurv.cli.app import EXIT_FLAGGED, EXIT_INVALID, EXIT_OK, load_config, run
from mengercurv.core.exceptions import ConfigError

ENERGY = [
    "energy",
    "--n=1",
    "--s=0.5",
    "--p=2",
    "--fn",
    "quadratic",
    "--samples=2e4",
    "--seed=3",
]


def _json(capsys) -> dict:
    return json.loads(capsys.readouterr().out)


def test_energy_run_echoes_the_derived_q(capsys):
    assert run(ENERGY) == EXIT_OK
    result = _json(capsys)
    assert result["command"] == "energy"
    assert result["details"]["q"] == pytest.approx(7.0 / 3.0, rel=1e-15)
    assert result["config"]["samples"] == 20_000
    assert result["seed"] == 3
    assert len(result["rows"]) == 28


def test_supplied_q_must_match_the_derived_one(capsys):
    assert run([*ENERGY, "--q=2.0"]) == EXIT_INVALID
    assert "q:" in capsys.readouterr().err
    assert run([*ENERGY, f"--q={7.0 / 3.0!r}"]) == EXIT_OK


@pytest.mark.parametrize(
    "extra, field",
    [
        (["--s=1.5"], "s"),
        (["--p=0.5"], "p"),
        (["--n=2"], "n"),
        (["--fn", "no-such-function"], "fn"),
        (["--domain=box:0:1:2"], "domain"),
        (["--samples=0.5"], "samples"),
        (["--seed=-1"], "seed"),
    ],
)
def test_invalid_configurations_exit_with_two(capsys, extra, field):
    assert run([*ENERGY, *extra]) == EXIT_INVALID
    assert f"{field}:" in capsys.readouterr().err


def test_missing_function_exits_with_two(capsys):
    assert run(["energy", "--n=1", "--s=0.5", "--p=2"]) == EXIT_INVALID
    assert "fn:" in capsys.readouterr().err


def test_argparse_errors_and_help():
    assert run(["verify"]) == EXIT_INVALID
    assert run(["energy", "--no-such-flag"]) == EXIT_INVALID
    assert run(["--help"]) == EXIT_OK


def test_results_do_not_depend_on_threads(capsys):
    outputs = []
    for threads in (1, 4, 8):
        assert run([*ENERGY, f"--threads={threads}"]) == EXIT_OK
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1] == outputs[2]


def test_failed_verification_exits_with_three(capsys):
    argv = [
        "verify",
        "equivalence",
        "--s=0.5",
        "--p=2",
        "--fn",
        "quadratic",
        "gaussian-bump",
        "--samples=2000",
        "--spread-bound=1",
    ]
    assert run(argv) == EXIT_FLAGGED
    result = _json(capsys)
    assert result["passed"] is False
    assert len(result["rows"]) == 2


def test_sampler_diagnostic_exits_with_three(capsys):
    argv = [
        "energy",
        "--domain=cube:3:0:1",
        "--s=0.5",
        "--p=4",
        "--fn",
        "quadratic",
        "--samples=2000",
        "--strata=1",
        "--r-min=1.5",
    ]
    assert run(argv) == EXIT_FLAGGED
    assert "acceptance ratio" in capsys.readouterr().err


def test_quadrature_method_needs_a_curve(capsys):
    argv = ["energy", "--domain=cube:2:0:1", "--s=0.5", "--p=3", "--fn", "quadratic"]
    assert run([*argv, "--method=quadrature"]) == EXIT_INVALID
    assert "method:" in capsys.readouterr().err


def test_seminorm_command(capsys):
    argv = ["seminorm", "--s=0.5", "--p=2", "--fn", "quadratic"]
    assert run(argv) == EXIT_OK
    assert _json(capsys)["value"] == pytest.approx(2.0, rel=1e-3)
    assert run([*argv, "--kind=gagliardo"]) == EXIT_OK
    assert _json(capsys)["value"] == pytest.approx(2.0, rel=1e-6)
    assert run([*argv, "--kind=gagliardo", "--cutoff=0.1"]) == EXIT_INVALID


def test_dorronsoro_command(capsys):
    argv = ["dorronsoro", "--s=0.5", "--p=2", "--fn", "compact-bump", "--samples=2000"]
    assert run(argv) == EXIT_OK
    result = _json(capsys)
    assert result["details"]["tail"] > 0.0
    assert run([*argv, "--t-min=0.5", "--t-max=0.1"]) == EXIT_INVALID


def test_knot_command(capsys):
    assert run(["knot", "--p=2", "--curve=circle:64", "--energy=up"]) == EXIT_OK
    result = _json(capsys)
    assert result["details"]["energy"] == "up"
    assert result["value"] == pytest.approx(2.0 * math.pi, rel=0.01)
    assert run(["knot", "--curve=circle:64"]) == EXIT_INVALID


def test_knot_all_energies(capsys):
    assert run(["knot", "--p=2", "--curve=ellipse:2,1:48"]) == EXIT_OK
    rows = _json(capsys)["rows"]
    assert [row["energy"] for row in rows] == ["mp", "ip", "up", "ep"]


def test_verify_kernel_circle_writes_and_reports(capsys, tmp_path):
    argv = ["verify", "kernel-circle", f"--out={tmp_path}", "--format=both"]
    assert run(argv) == EXIT_OK
    result = _json(capsys)
    assert result["passed"] is True
    assert len(result["rows"]) == 4

    saved = tmp_path / "verify-kernel-circle.json"
    assert saved.is_file()
    table = (tmp_path / "verify-kernel-circle.csv").read_text()
    assert table.startswith("t,curvature,four_k")

    assert run(["report", str(saved)]) == EXIT_OK
    text = capsys.readouterr().out
    assert "verify" in text
    assert "four_k" in text


def test_report_of_a_missing_file(capsys, tmp_path):
    assert run(["report", str(tmp_path / "nothing.json")]) == EXIT_INVALID
    assert "path:" in capsys.readouterr().err


def test_verify_w_measure_on_the_line(capsys):
    argv = ["verify", "w-measure", "--alpha=0.25", "--samples=1e5", "--seed=11"]
    assert run(argv) == EXIT_OK
    result = _json(capsys)
    assert result["details"]["exact"] == pytest.approx(0.75)


def test_verify_scaling(capsys):
    argv = [
        "verify",
        "scaling",
        "--s=0.5",
        "--p=2",
        "--fn",
        "compact-bump",
        "--samples=5000",
        "--lambdas",
        "1",
        "2",
        "4",
    ]
    assert run(argv) == EXIT_OK
    result = _json(capsys)
    assert result["passed"] is True
    assert result["value"] == pytest.approx(1.0, abs=1e-8)
    assert [row["lambda"] for row in result["rows"]] == [1.0, 2.0, 4.0]


def test_verify_lemma_beta(capsys):
    assert run(["verify", "lemma-beta", "--count=500"]) == EXIT_OK
    result = _json(capsys)
    assert result["details"]["violations"] == 0
    assert len(result["rows"]) == 4


def test_config_file_fills_in_and_flags_win(capsys, tmp_path):
    config = tmp_path / "run.env"
    config.write_text("# energy run\nS=0.5\np=2\nfn=quadratic\nsamples=5000\nseed=9\n")
    assert run(["energy", f"--config={config}", "--seed=4"]) == EXIT_OK
    result = _json(capsys)
    assert result["config"]["seed"] == 4
    assert result["config"]["samples"] == 5000
    assert result["config"]["fn"] == ["quadratic"]


def test_config_file_errors_name_the_line(capsys, tmp_path):
    config = tmp_path / "bad.env"
    config.write_text("s=0.5\np=2\nseed=-4\n")
    assert run(["energy", f"--config={config}", "--fn", "quadratic"]) == EXIT_INVALID
    assert f"{config}:3" in capsys.readouterr().err

    config.write_text("s=0.5\ncolour=blue\n")
    assert run(["energy", f"--config={config}"]) == EXIT_INVALID
    assert f"{config}:2" in capsys.readouterr().err


def test_missing_config_file():
    with pytest.raises(ConfigError):
        load_config(["energy", "--config=/no/such/file.env"])


def test_config_round_trips_through_argv():
    config = load_config(
        [
            "verify",
            "codivergence",
            "--domain=-1,1",
            "--s=0.25",
            "--p=3",
            "--fn",
            "quadratic",
            "gaussian-bump:width=0.1",
            "--cutoffs",
            "0.1",
            "0.01",
            "0.001",
            "--include-lp",
            "--samples=1e4",
            "--seed=18446744073709551615",
        ]
    )
    assert config.domain == "-1,1"
    assert config.samples == 10_000
    assert load_config(config.to_argv()) == config


def test_echo_leaves_out_run_only_fields():
    config = load_config([*ENERGY, "--threads=4", "--debug", "--format=csv"])
    echo = config.echo()
    assert "threads" not in echo and "debug" not in echo and "format" not in echo
    assert echo["fn"] == ["quadratic"]
