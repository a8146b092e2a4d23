"""Result rows and their CSV serialization."""

from __future__ import annotations

import csv
import io
from dataclasses import astuple, dataclass, fields
from typing import Optional

COLUMNS = (
    "experiment", "user", "engine", "mode", "sweep_var", "sweep_value", "n_elements",
    "snr_db", "k", "L", "eps2", "plos", "ber", "ci_low", "ci_high", "trials", "seed",
)


@dataclass(frozen=True)
class ResultRow:
    experiment: str
    user: str
    engine: str
    mode: str
    sweep_var: str
    sweep_value: float
    n_elements: int
    snr_db: float
    k: float
    L: int
    eps2: float
    plos: float
    ber: float
    ci_low: Optional[float] = None
    ci_high: Optional[float] = None
    trials: Optional[int] = None
    seed: Optional[int] = None

    def __post_init__(self):
        if not 0.0 <= self.ber <= 1.0:
            raise ValueError(f"ber out of range: {self.ber!r}")

    def sort_key(self):
        return (self.experiment, self.user, self.sweep_value, self.engine, self.mode)


assert tuple(f.name for f in fields(ResultRow)) == COLUMNS

_INT_FIELDS = {"n_elements", "L", "trials", "seed"}
_STR_FIELDS = {"experiment", "user", "engine", "mode", "sweep_var"}


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    return f"{value:.10g}"


def format_csv(rows) -> str:
    rows = sorted(rows, key=ResultRow.sort_key)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in rows:
        writer.writerow([_fmt(v) for v in astuple(row)])
    return buf.getvalue()


def emit_csv(rows, path) -> None:
    """Write ``rows`` sorted by (experiment, user, sweep value) to ``path``."""
    rows = list(rows)
    if not rows:
        raise ValueError("no rows to write")
    text = format_csv(rows)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _parse_field(name, text):
    if text == "":
        return None
    if name in _STR_FIELDS:
        return text
    if name in _INT_FIELDS:
        return int(text)
    return float(text)


def parse_csv(text: str) -> list[ResultRow]:
    reader = csv.reader(io.StringIO(text))
    header = tuple(next(reader))
    if header != COLUMNS:
        raise ValueError(f"unexpected CSV header {header!r}")
    return [ResultRow(*(_parse_field(n, v) for n, v in zip(COLUMNS, rec))) for rec in reader if rec]


def read_csv(path) -> list[ResultRow]:
    with open(path, encoding="utf-8") as fh:
        return parse_csv(fh.read())
