"""Typed CSV tables with exact round-trip (str <-> float/int is lossless)."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

SWEEP_HEADER = ("n", "mode", "backend", "trial", "target", "success_prob", "nfev_total", "depth")
SWEEP_TYPES = (int, str, str, int, str, float, int, int)

CURVE_HEADER = ("n", "target", "seed", "nfev_units_sqrtN", "nfev", "success_prob")
CURVE_TYPES = (int, str, int, float, int, float)

TRACE_HEADER = ("nfev", "expectation")
TRACE_TYPES = (int, float)

DEPTH_HEADER = ("n", "ansatz_depth", "grover_logical_depth", "grover_decomposed_depth")
DEPTH_TYPES = (int, int, int, int)

SCHEMAS: dict[str, tuple[tuple[str, ...], tuple[Callable, ...]]] = {
    "sweep": (SWEEP_HEADER, SWEEP_TYPES),
    "curve": (CURVE_HEADER, CURVE_TYPES),
    "trace": (TRACE_HEADER, TRACE_TYPES),
    "depth": (DEPTH_HEADER, DEPTH_TYPES),
}


@dataclass
class Table:
    header: tuple[str, ...]
    rows: list[tuple]

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            self._write(fh)

    def to_csv_text(self) -> str:
        buf = io.StringIO()
        self._write(buf)
        return buf.getvalue()

    def _write(self, fh) -> None:
        writer = csv.writer(fh)
        writer.writerow(self.header)
        for row in self.rows:
            writer.writerow([_render(v) for v in row])

    def to_dicts(self) -> list[dict]:
        return [dict(zip(self.header, row)) for row in self.rows]

    @classmethod
    def read_csv(cls, path, schema: str) -> "Table":
        header, types = SCHEMAS[schema]
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            got = tuple(next(reader))
            if got != header:
                raise ValueError(f"expected header {header}, got {got}")
            rows = [tuple(t(v) for t, v in zip(types, row)) for row in reader]
        return cls(header, rows)


def _render(value) -> str:
    # str() of python ints/floats parses back to an equal value; numpy scalars
    # are converted first so no dtype reprs leak into files
    if hasattr(value, "item"):
        value = value.item()
    return str(value)


def write_table(table: Table, path: str | Path | None) -> str | None:
    """Write to path, or return CSV text when path is None (stdout use)."""
    if path is None:
        return table.to_csv_text()
    table.write_csv(path)
    return None
