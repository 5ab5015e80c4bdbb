"""Record writers: JSON lines (default) and CSV tables.

JSON records are written with compact separators and no key sorting, so
parsing a line and re-serializing it the same way reproduces it byte for byte.
"""

import csv
import json
import sys
from collections.abc import Iterator
from contextlib import contextmanager
from dataclasses import dataclass
from dataclasses import field
from pathlib import Path
from typing import Any
from typing import TextIO

__all__ = [
    "CommandOutcome",
    "Table",
    "dumps_record",
    "open_sink",
    "write_error",
    "write_outcome",
]


@dataclass
class Table:
    """Flat rows for CSV output, written under one header."""

    columns: list[str]
    rows: list[dict[str, Any]]


@dataclass
class CommandOutcome:
    """What a subcommand produced: JSON records, their CSV rendering and the verdict."""

    records: list[dict[str, Any]]
    tables: list[Table]
    passed: bool = True
    failed_count: int = 0
    extras: dict[str, Any] = field(default_factory=dict)


def dumps_record(record: dict[str, Any]) -> str:
    return json.dumps(record, separators=(",", ":"), ensure_ascii=False)


@contextmanager
def open_sink(out: Path | None) -> Iterator[TextIO]:
    """stdout, or PATH created/truncated."""
    if out is None:
        yield sys.stdout
        return
    with out.open("w", encoding="utf-8", newline="") as handle:
        yield handle


def _csv_cell(value: Any) -> Any:
    if isinstance(value, bool):
        return "true" if value else "false"
    return value


def write_outcome(sink: TextIO, outcome: CommandOutcome, output_format: str) -> None:
    if output_format == "json":
        for record in outcome.records:
            sink.write(dumps_record(record) + "\n")
        return
    writer = csv.writer(sink, lineterminator="\n")
    for index, table in enumerate(outcome.tables):
        if index:
            sink.write("\n")
        writer.writerow(table.columns)
        for row in table.rows:
            writer.writerow([_csv_cell(row[column]) for column in table.columns])


def write_error(sink: TextIO, kind: str, message: str, **details: Any) -> None:
    """Machine-readable failure record, always a JSON line."""
    sink.write(dumps_record({"error": kind, "message": message, **details}) + "\n")
