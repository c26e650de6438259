# rapprox/cli/report.py
from __future__ import annotations

import csv
import json
import logging
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence, TextIO

logger = logging.getLogger("cli")


@dataclass(frozen=True)
class Report:
    """What a command hands back: a JSON body, optional CSV rows, and a verdict."""

    data: dict
    rows: Optional[list[dict]] = None
    columns: tuple[str, ...] = ()
    ok: bool = True


def _default(obj: Any) -> Any:
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (set, frozenset, tuple)):
        return list(obj)
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _open(out: Optional[str]) -> tuple[TextIO, bool]:
    if out is None or out == "-":
        return sys.stdout, False
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    return path.open("w", newline=""), True


def write_json(data: Any, out: Optional[str] = None) -> None:
    """Keys sorted, so repeated runs give byte-identical files."""
    fh, owned = _open(out)
    try:
        json.dump(data, fh, sort_keys=True, indent=2, default=_default)
        fh.write("\n")
    finally:
        if owned:
            fh.close()
            logger.info(f"wrote {out}")


def write_csv(rows: Iterable[dict], columns: Sequence[str], out: Optional[str] = None) -> None:
    fh, owned = _open(out)
    try:
        writer = csv.DictWriter(fh, fieldnames=list(columns), extrasaction="ignore")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)
    finally:
        if owned:
            fh.close()
            logger.info(f"wrote {out}")


def emit(report: Report, fmt: str = "json", out: Optional[str] = None) -> None:
    """CSV when asked for and the command has rows to give; JSON otherwise."""
    if fmt == "csv":
        if report.rows is None:
            logger.warning("this command has no tabular output; writing JSON")
        else:
            write_csv(report.rows, report.columns, out)
            return
    write_json(report.data, out)
