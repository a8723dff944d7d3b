import argparse
from typing import get_args

from mengercurv import __banner__
from mengercurv.cli.schemes import Experiment


def _parent(title: str):
    parent = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    return parent, parent.add_argument_group(title)


def _run_options() -> argparse.ArgumentParser:
    parent, group = _parent("run")
    group.add_argument("--config", metavar="FILE", help="key=value file; flags override it")
    group.add_argument("--out", metavar="DIR", help="directory for result files")
    group.add_argument("--format", choices=["json", "csv", "both"])
    group.add_argument("--threads", help="worker count, default $MENGER_THREADS or 1")
    group.add_argument("--debug", action="store_true", help="enable log output")
    return parent


def _exponents() -> argparse.ArgumentParser:
    parent, group = _parent("exponents")
    group.add_argument("--n", help="dimension; must match the domain")
    group.add_argument("--s", help="smoothness in (0, 1)")
    group.add_argument("--p", help="integrability exponent")
    group.add_argument("--q", help="optional; must equal the derived q")
    return parent


def _problem() -> argparse.ArgumentParser:
    parent, group = _parent("problem")
    group.add_argument("--domain", help="0,1 | box:0,0:1,1 | cube:2:0:1 | ball:0,0:1")
    group.add_argument("--fn", nargs="+", help="name[:key=value...]")
    group.add_argument("--seed", help="64-bit seed of the sample stream")
    group.add_argument("--samples", help="sample count, e.g. 1e6")
    return parent


def _sampler() -> argparse.ArgumentParser:
    parent, group = _parent("tuple sampler")
    group.add_argument("--sampler", choices=["stratified", "uniform"])
    group.add_argument("--strata")
    group.add_argument("--r-min", dest="r_min")
    return parent


def build_parser() -> argparse.ArgumentParser:
    """
    Argument parser of the ``mengercurv`` command.

    Every option defaults to SUPPRESS, so the parsed namespace holds only the
    options actually given and config-file values can fill in the rest.
    """
    run, exponents, problem, sampler = _run_options(), _exponents(), _problem(), _sampler()
    parser = argparse.ArgumentParser(
        prog="mengercurv",
        description=__banner__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
        argument_default=argparse.SUPPRESS,
        allow_abbrev=False,
    )
    commands = parser.add_subparsers(dest="command", required=True)

    def command(name, parents, help):
        return commands.add_parser(
            name,
            parents=parents,
            help=help,
            argument_default=argparse.SUPPRESS,
            allow_abbrev=False,
        )

    energy = command("energy", [exponents, problem, sampler, run], "estimate E_{p,q}(f)")
    energy.add_argument("--method", choices=["monte-carlo", "quadrature"])
    energy.add_argument("--cutoff", help="drop tuples of smaller diameter")

    seminorm = command("seminorm", [exponents, problem, run], "estimate [f]^p")
    seminorm.add_argument("--kind", choices=["second-difference", "gagliardo"])
    seminorm.add_argument("--mode", choices=["auto", "quadrature", "monte-carlo"])
    seminorm.add_argument("--cutoff", help="drop offsets with |h| below it")

    dorronsoro = command("dorronsoro", [exponents, problem, run], "estimate ⟦f⟧^p")
    dorronsoro.add_argument("--t-min", dest="t_min")
    dorronsoro.add_argument("--t-max", dest="t_max")

    knot = command("knot", [run], "discrete knot energies of a closed polygon")
    knot.add_argument("--p", help="energy exponent")
    knot.add_argument("--curve", help="circle:512 | ellipse:2,1:512 | torus:2,3:512 | csv:FILE")
    knot.add_argument("--energy", choices=["mp", "ip", "up", "ep", "all"])

    verify = command("verify", [exponents, problem, sampler, run], "run an experiment")
    verify.add_argument("experiment", choices=list(get_args(Experiment)))
    verify.add_argument("--catalog", help="default | dorronsoro | FILE.json")
    verify.add_argument("--alpha")
    verify.add_argument("--point", help="base point, e.g. 0.5,0.5")
    verify.add_argument("--radius")
    verify.add_argument("--count", help="tuples or configurations to audit")
    verify.add_argument("--cutoffs", nargs="+", help="strictly decreasing schedule")
    verify.add_argument("--lambdas", nargs="+")
    verify.add_argument("--angles", nargs="+")
    verify.add_argument("--uncoupled", action="store_true")
    verify.add_argument("--include-lp", dest="include_lp", action="store_true")
    verify.add_argument("--factor", help="sample multiplier of the stability rerun")
    verify.add_argument("--spread-bound", dest="spread_bound")

    report = command("report", [run], "render a saved JSON result")
    report.add_argument("path")
    return parser
