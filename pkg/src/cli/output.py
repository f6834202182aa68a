"""CSV and JSON writers for command results."""

import csv
import json
import sys
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Optional, TextIO

SIGNIFICANT_DIGITS = 12


@dataclass
class Table:
    """Column header plus rows of plain values, written as CSV or JSON records."""

    header: list[str]
    rows: list[list[Any]] = field(default_factory=list)

    def records(self) -> list[dict]:
        """One header-keyed dict per row, for JSON output."""
        return [dict(zip(self.header, row)) for row in self.rows]


def format_value(value: Any) -> str:
    """Floats with 12 significant digits; everything else via str()."""
    if isinstance(value, float):
        return f"{value:.{SIGNIFICANT_DIGITS}g}"
    return str(value)


def write_csv(table: Table, stream: TextIO):
    """
    Write a header line and one line per row.

    Args:
        table: Rows to write; floats keep 12 significant digits
        stream: Open text stream
    """
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(table.header)
    for row in table.rows:
        writer.writerow([format_value(value) for value in row])


def write_json(document: Any, stream: TextIO):
    """Indented JSON followed by a newline."""
    json.dump(document, stream, indent=2)
    stream.write('\n')


def write_table(table: Table, output_format: str, stream: TextIO):
    """
    Write a table in the requested format.

    Args:
        table: Result table
        output_format: 'json' for a list of records, anything else for CSV
        stream: Open text stream
    """
    if output_format == 'json':
        write_json(table.records(), stream)
    else:
        write_csv(table, stream)


@contextmanager
def open_output(path: Optional[str]):
    """Yield a text stream for ``path``, or stdout when no path is given."""
    if path is None or path == '-':
        yield sys.stdout
        sys.stdout.flush()
    else:
        with open(path, 'w', newline='') as f:
            yield f
