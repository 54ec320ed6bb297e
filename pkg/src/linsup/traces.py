"""CSV trace files: one row per sweep, provenance in leading '#' comments.

Floats are written with ``repr`` (shortest round-trip form), so identical
runs produce byte-identical files.
"""

import csv

from .solver import RunResult

TRACE_COLUMNS = ["sweep", "objective", "neg_objective", "proximity", "rel_change", "ell_start"]


class TraceSchemaError(ValueError):
    """Raised when a trace file lacks the expected columns."""


def write_trace_csv(
    path,
    result: RunResult,
    provenance: list[str],
    record_neg_objective: bool = True,
) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for line in provenance:
            fh.write(f"# {line}\n")
        writer = csv.writer(fh)
        writer.writerow(TRACE_COLUMNS)
        for entry in result.trace:
            writer.writerow(
                [
                    entry.sweep,
                    repr(entry.objective),
                    repr(-entry.objective) if record_neg_objective else "",
                    repr(entry.proximity),
                    repr(entry.rel_change),
                    "" if entry.ell_start is None else entry.ell_start,
                ]
            )


def read_trace_csv(path) -> dict[str, list]:
    """Parse a trace file into column lists; empty fields become None."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        rows = [row for row in csv.reader(ln for ln in fh if not ln.startswith("#")) if row]
    if not rows or rows[0] != TRACE_COLUMNS:
        found = rows[0] if rows else []
        raise TraceSchemaError(f"expected columns {TRACE_COLUMNS}, found {found}")
    columns: dict[str, list] = {name: [] for name in TRACE_COLUMNS}
    for row in rows[1:]:
        if len(row) != len(TRACE_COLUMNS):
            raise TraceSchemaError(f"row has {len(row)} fields, expected {len(TRACE_COLUMNS)}")
        columns["sweep"].append(int(row[0]))
        for name, value in zip(TRACE_COLUMNS[1:], row[1:]):
            if value == "":
                columns[name].append(None)
            elif name == "ell_start":
                columns[name].append(int(value))
            else:
                columns[name].append(float(value))
    return columns
