"""Deterministic file output: CSV tables and JSON reports.

CSV files are UTF-8 with a header row, '.' decimal separator, and scientific
notation with 17 significant digits, which round-trips doubles losslessly.
JSON uses sorted keys and Python's shortest round-trip float repr. Files are
written atomically (temp file + rename) so partially written artifacts never
appear under the target name.
"""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

from .core import VerificationReport

__all__ = [
    "format_float",
    "write_text_atomic",
    "write_csv",
    "write_field_csv",
    "write_json",
    "read_csv",
    "load_report",
    "save_report",
]

FLOAT_FORMAT = "%.16e"


def format_float(x: float) -> str:
    return FLOAT_FORMAT % float(x)


def write_text_atomic(path: str | Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _cell(value: Any) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format_float(value)


def write_csv(path: str | Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    lines = [",".join(header)]
    lines.extend(",".join(_cell(v) for v in row) for row in rows)
    write_text_atomic(path, "\n".join(lines) + "\n")


def write_field_csv(path: str | Path, header: Sequence[str], columns: Sequence[np.ndarray]) -> None:
    """Fast all-float table writer: columns are equal-length 1D arrays."""
    table = np.column_stack([np.asarray(c, dtype=float).ravel() for c in columns])
    lines = [",".join(header)]
    fmt = ",".join([FLOAT_FORMAT] * table.shape[1])
    lines.extend(fmt % tuple(row) for row in table)
    write_text_atomic(path, "\n".join(lines) + "\n")


def write_json(path: str | Path, payload: Mapping[str, Any]) -> None:
    write_text_atomic(path, json.dumps(payload, sort_keys=True, indent=2) + "\n")


def read_csv(path: str | Path) -> tuple[list[str], list[list[str]]]:
    with open(path, "r", encoding="utf-8") as fh:
        lines = [line.rstrip("\n") for line in fh if line.strip()]
    header = lines[0].split(",")
    return header, [line.split(",") for line in lines[1:]]


def save_report(path: str | Path, report: VerificationReport) -> None:
    write_json(path, report.to_dict())


def load_report(path: str | Path) -> VerificationReport:
    """Re-read a report; pass/fail flags are re-derived and cross-checked."""
    with open(path, "r", encoding="utf-8") as fh:
        return VerificationReport.from_dict(json.load(fh))
