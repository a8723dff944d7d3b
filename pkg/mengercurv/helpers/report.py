import csv
import json
import math
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Union

from pydantic import BaseModel
from pygments import highlight
from pygments.formatters.terminal import TerminalFormatter
from pygments.lexers import JsonLexer

from mengercurv.core.schemes import CommandResult, Estimate


def _plain(value: Any) -> Any:
    """JSON-safe copy: numpy scalars and arrays become floats and lists."""
    if isinstance(value, BaseModel):
        return _plain(value.model_dump())
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if hasattr(value, "tolist"):
        return _plain(value.tolist())
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    return value


class ResultBuilder:
    """
    Class for step-by-step building of a command result.
    """

    def __init__(self, command: str):
        self.fields: Dict[str, Any] = {
            "command": command,
            "diagnostics": [],
            "details": {},
            "rows": [],
        }

    def add_config(self, config: Dict[str, Any]) -> "ResultBuilder":
        """
        Adds the configuration echo.
        """
        self.fields["config"] = _plain(config)
        return self

    def add_estimate(
        self, estimate: Estimate, rows_from: Optional[str] = None
    ) -> "ResultBuilder":
        """
        Adds value, stderr, samples, seed and the estimate's diagnostics.

        ``rows_from`` names a list in the estimate details that becomes the
        CSV rows instead of a detail.
        """
        details = dict(estimate.details)
        if rows_from is not None:
            self.add_rows(details.pop(rows_from, []))
        self.fields.update(
            value=estimate.value,
            stderr=estimate.stderr,
            samples=estimate.samples,
            seed=estimate.seed,
        )
        if not estimate.converged:
            self.fields["converged"] = False
        self.fields["diagnostics"].extend(estimate.diagnostics)
        self.fields["details"].update(_plain(details))
        self.fields["details"].setdefault("mode", estimate.mode)
        if estimate.invalid_sample_count:
            self.fields["details"]["invalid_sample_count"] = estimate.invalid_sample_count
        return self

    def add_value(
        self, value: float, seed: Optional[int] = None, stderr: float = 0.0
    ) -> "ResultBuilder":
        """
        Adds a value computed outside an Estimate, deterministic by default.
        """
        self.fields.update(value=float(value), stderr=float(stderr), seed=seed)
        return self

    def add_details(self, **details) -> "ResultBuilder":
        """
        Adds method-specific numbers.
        """
        self.fields["details"].update(_plain(details))
        return self

    def add_rows(self, rows: Iterable[Dict[str, Any]]) -> "ResultBuilder":
        """
        Adds CSV rows.
        """
        self.fields["rows"].extend(_plain(list(rows)))
        return self

    def add_verdict(self, passed: bool, message: Optional[str] = None) -> "ResultBuilder":
        """
        Adds a pass/fail outcome; a failure carries its message as a diagnostic.
        """
        self.fields["passed"] = bool(passed) and self.fields.get("passed", True) is not False
        if not passed and message:
            self.fields["diagnostics"].append(message)
        return self

    def add_diagnostic(self, message: str, converged: bool = True) -> "ResultBuilder":
        """
        Adds a diagnostic; ``converged=False`` marks the result as flagged.
        """
        self.fields["diagnostics"].append(message)
        if not converged:
            self.fields["converged"] = False
        return self

    def build(self) -> CommandResult:
        """
        Returns the final result.
        """
        return CommandResult(**self.fields)


def to_json(result: CommandResult) -> str:
    return result.model_dump_json(indent=2)


def highlighted(text: str) -> str:
    """JSON text colored for a terminal."""
    return highlight(text, JsonLexer(), TerminalFormatter())


def write_json(result: CommandResult, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_text(to_json(result) + "\n", encoding="utf-8")
    return path


def _cell(value: Any) -> Any:
    if isinstance(value, (dict, list)):
        return json.dumps(value, separators=(",", ":"))
    if isinstance(value, float):
        return repr(value)
    return value


def write_csv(rows: List[Dict[str, Any]], path: Union[str, Path]) -> Optional[Path]:
    """
    Writes rows with the union of their keys as header, in first-seen order.

    Returns None and writes nothing when there are no rows.
    """
    if not rows:
        return None
    header: List[str] = []
    for row in rows:
        header.extend(key for key in row if key not in header)
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as stream:
        writer = csv.DictWriter(stream, fieldnames=header)
        writer.writeheader()
        for row in rows:
            writer.writerow({key: _cell(value) for key, value in row.items()})
    return path


def load_result(path: Union[str, Path]) -> CommandResult:
    return CommandResult.model_validate_json(Path(path).read_text(encoding="utf-8"))
