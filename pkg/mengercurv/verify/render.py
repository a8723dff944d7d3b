"""Aligned-column text for reports and saved results."""

import json
from typing import Any, Dict, List, Optional, Sequence

from mengercurv.core.schemes import CommandResult

SUMMARY_FIELDS = ("value", "stderr", "samples", "seed", "converged", "passed")


def format_cell(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return f"{value:.6g}"
    if isinstance(value, (dict, list)):
        return json.dumps(value, separators=(",", ":"))
    return str(value)


def render_table(
    rows: Sequence[Dict[str, Any]], columns: Optional[List[str]] = None
) -> str:
    """
    Renders rows as a table: numbers right-aligned, text left-aligned.

    Columns default to the union of the row keys in first-seen order; nested
    values are shown as compact JSON.
    """
    if not rows:
        return ""
    if columns is None:
        columns = []
        for row in rows:
            columns.extend(key for key in row if key not in columns)
    cells = [[format_cell(row.get(column)) for column in columns] for row in rows]
    widths = [
        max(len(column), *(len(line[i]) for line in cells))
        for i, column in enumerate(columns)
    ]
    numeric = [
        all(
            isinstance(row[column], (int, float))
            for row in rows
            if row.get(column) is not None
        )
        for column in columns
    ]

    def line(values: List[str]) -> str:
        return "  ".join(
            value.rjust(width) if right else value.ljust(width)
            for value, width, right in zip(values, widths, numeric)
        ).rstrip()

    rule = "  ".join("-" * width for width in widths)
    return "\n".join([line(list(columns)), rule, *(line(values) for values in cells)])


def render_result(result: CommandResult) -> str:
    """Header of summary fields, diagnostics, then the row table."""
    width = max(len(name) for name in ("command", *SUMMARY_FIELDS))
    lines = [f"{'command'.ljust(width)}  {result.command}"]
    for name in SUMMARY_FIELDS:
        value = getattr(result, name)
        if value is not None:
            lines.append(f"{name.ljust(width)}  {format_cell(value)}")
    for key, value in result.details.items():
        if not isinstance(value, (dict, list)):
            lines.append(f"{key.ljust(width)}  {format_cell(value)}")
    for message in result.diagnostics:
        lines.append(f"! {message}")
    if result.rows:
        lines.extend(["", render_table(result.rows)])
    return "\n".join(lines)
