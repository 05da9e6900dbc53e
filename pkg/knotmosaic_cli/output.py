"""Output helpers for the knot mosaic CLI.

Every command builds one JSON-ready payload and hands it to `emit`, which
prints it verbatim under `--json` or as a rich table otherwise.
"""

from __future__ import annotations

import json
from typing import Iterable, Mapping, Sequence

from rich.console import Console
from rich.table import Table

console = Console()

Fields = Sequence[tuple[str, str]]


def print_json(data: object) -> None:
    payload = json.dumps(data, indent=2, sort_keys=True, default=str)
    console.print(payload, markup=False, highlight=False, soft_wrap=True)


def emit(
    payload: Mapping[str, object],
    json_output: bool,
    title: str,
    fields: Fields | None = None,
) -> None:
    """
    Print a command result.

    Args:
        payload: JSON-ready result
        json_output: Print the payload as JSON
        title: Table title
        fields: (payload key, label) pairs to show; all keys by default
    """
    if json_output:
        print_json(payload)
        return
    if fields is None:
        fields = [(key, key.replace("_", " ").capitalize()) for key in payload]
    table = Table(title=title, show_header=False)
    table.add_column("Field", style="bold")
    table.add_column("Value")
    for key, label in fields:
        table.add_row(label, _format_cell(payload.get(key)))
    console.print(table)


def print_rows(
    title: str,
    columns: Sequence[str],
    rows: Iterable[Sequence[object]],
) -> None:
    table = Table(title=title, header_style="bold")
    for column in columns:
        table.add_column(column)
    for row in rows:
        table.add_row(*(_format_cell(cell) for cell in row))
    console.print(table)


def print_text(text: str) -> None:
    """Print preformatted text (mosaics, drawings) without rich markup."""
    console.print(text, markup=False, highlight=False, soft_wrap=True, end="")


def _format_cell(value: object) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, Mapping):
        return ", ".join(f"{k}={v}" for k, v in value.items())
    if isinstance(value, (list, tuple, set, frozenset)):
        return ", ".join(str(v) for v in value) or "-"
    return str(value)
