import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from dotenv import dotenv_values
from loguru import logger
from pydantic import ValidationError

from mengercurv.actions import (
    DorronsoroAction,
    EnergyAction,
    KnotAction,
    ReportAction,
    SeminormAction,
    VerifyAction,
)
from mengercurv.actions._resolve import resolve_domain
from mengercurv.cli.parser import build_parser
from mengercurv.cli.schemes import BOOLEAN_FIELDS, RunConfig
from mengercurv.client import MengerClient
from mengercurv.core.exceptions import (
    ArgumentError,
    ConfigError,
    DiagnosticError,
    MengerError,
    UnsupportedOperationError,
)
from mengercurv.core.schemes import CommandResult
from mengercurv.helpers.report import highlighted, to_json, write_csv, write_json
from mengercurv.validators import RunConfigValidator

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INVALID = 2
EXIT_FLAGGED = 3

# Positional parts of a run never come from a config file.
POSITIONAL_FIELDS = ("command", "experiment", "path")


def _key(name: str) -> str:
    return name.strip().lstrip("-").replace("-", "_").lower()


def _line_of(path: Path, key: str) -> Optional[int]:
    for number, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        name = line.split("=", 1)[0].replace("export ", "")
        if "=" in line and _key(name) == key:
            return number
    return None


def read_config_file(path: Path) -> Dict[str, Any]:
    """
    Key-value pairs of a ``--config`` file, keys normalized to field names.

    :raises ConfigError: When the file is missing or names an unknown key.
    """
    if not path.is_file():
        raise ConfigError(f"no such file: {path}", "config")
    values = {}
    for name, value in dotenv_values(path).items():
        key = _key(name)
        if key not in RunConfig.model_fields or key in POSITIONAL_FIELDS:
            raise ConfigError(f"{path}:{_line_of(path, key)}: unknown key {name!r}", key)
        if key in BOOLEAN_FIELDS:
            value = (value or "").lower() in ("1", "true", "yes", "on")
        values[key] = value
    return values


def load_config(argv: List[str]) -> RunConfig:
    """
    Parses the command line, merging a ``--config`` file under the flags.

    :raises ConfigError: Naming the offending field, and the file line when
        the bad value came from the file.
    """
    given = vars(build_parser().parse_args(argv))
    from_file: Dict[str, Any] = {}
    if "config" in given:
        config_path = Path(given["config"])
        from_file = read_config_file(config_path)
    try:
        return RunConfig.model_validate({**from_file, **given})
    except ValidationError as e:
        error = e.errors()[0]
        field = str(error["loc"][0]) if error["loc"] else None
        message = error["msg"]
        if field in from_file and field not in given:
            message = f"{config_path}:{_line_of(config_path, field)}: {message}"
        raise ConfigError(message, field) from e


def execute(config: RunConfig, client: MengerClient) -> CommandResult:
    """Validates the exponents and runs the action of the command."""
    n = resolve_domain(config).dimension
    params = RunConfigValidator(config).validate(n)
    if config.command == "energy":
        return EnergyAction(client).run(config, params)
    if config.command == "seminorm":
        return SeminormAction(client).run(config, params)
    if config.command == "dorronsoro":
        return DorronsoroAction(client).run(config, params)
    if config.command == "knot":
        return KnotAction(client).run(config)
    return VerifyAction(client).run(config, params)


def _stem(config: RunConfig) -> str:
    return config.command if config.experiment is None else f"{config.command}-{config.experiment}"


def emit(result: CommandResult, config: RunConfig) -> None:
    """JSON on stdout; result files in ``--out`` in the chosen formats."""
    text = to_json(result)
    print(highlighted(text) if sys.stdout.isatty() else text)
    if config.out is None:
        return
    config.out.mkdir(parents=True, exist_ok=True)
    stem = _stem(config)
    if config.format in ("json", "both"):
        write_json(result, config.out / f"{stem}.json")
    if config.format in ("csv", "both"):
        write_csv(result.rows, config.out / f"{stem}.csv")


def _report(config: RunConfig, client: MengerClient) -> int:
    rendered = ReportAction(client).run(config)
    print(rendered.text)
    if config.out is not None and config.format in ("csv", "both"):
        config.out.mkdir(parents=True, exist_ok=True)
        write_csv(rendered.result.rows, config.out / f"{config.path.stem}.csv")
    return EXIT_OK


def run(argv: Optional[List[str]] = None) -> int:
    """
    Runs one command and returns the process exit code.

    0 on success, 2 on invalid configuration or arguments, 3 when the result
    is flagged (a refinement diagnostic or a failed verification), 1 on
    unexpected computation failures.
    """
    try:
        config = load_config(sys.argv[1:] if argv is None else argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_INVALID
    except ConfigError as e:
        print(f"error: {e.message}", file=sys.stderr)
        return EXIT_INVALID

    client = MengerClient(threads=config.threads, debug=config.debug)
    try:
        if config.command == "report":
            return _report(config, client)
        result = execute(config, client)
    except (ConfigError, ArgumentError, UnsupportedOperationError) as e:
        print(f"error: {e.message}", file=sys.stderr)
        return EXIT_INVALID
    except DiagnosticError as e:
        print(f"diagnostic: {e.message}", file=sys.stderr)
        return EXIT_FLAGGED
    except MengerError as e:
        logger.critical(e.message)
        print(f"failure: {e.message}", file=sys.stderr)
        return EXIT_FAILURE

    emit(result, config)
    return EXIT_FLAGGED if result.flagged else EXIT_OK
