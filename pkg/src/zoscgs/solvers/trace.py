"""Per-iteration run log and its CSV form."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

__all__ = ["TraceRow", "RunTrace", "CSV_HEADER", "SolverResult"]

CSV_HEADER = ("k", "directions", "evaluations", "lmo_calls", "f_value", "gap")


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


@dataclass(frozen=True)
class TraceRow:
    k: int
    directions: int
    evaluations: int
    lmo_calls: int
    f_value: float
    gap: float


@dataclass
class RunTrace:
    """Rows are cumulative counts; row ``k = 0`` is the starting point."""

    method: str = ""
    label: str = ""
    rows: list[TraceRow] = field(default_factory=list)
    truncated_inner: int = 0

    def append(self, *args) -> None:
        self.rows.append(TraceRow(*args))

    def __len__(self):
        return len(self.rows)

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.rows])

    @property
    def final_gap(self) -> float:
        return self.rows[-1].gap

    def to_csv_text(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for r in self.rows:
            writer.writerow([r.k, r.directions, r.evaluations, r.lmo_calls, _fmt(r.f_value), _fmt(r.gap)])
        return buf.getvalue()

    def write_csv(self, path) -> Path:
        path = Path(path)
        path.write_text(self.to_csv_text(), encoding="utf-8")
        return path

    @classmethod
    def read_csv(cls, path, method: str = "", label: str = "") -> "RunTrace":
        path = Path(path)
        trace = cls(method=method or path.stem.split("_")[0], label=label or path.stem)
        with path.open(encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            header = tuple(next(reader))
            if header != CSV_HEADER:
                raise ValueError(f"{path}: unexpected header {header}")
            for row in reader:
                trace.append(int(row[0]), int(row[1]), int(row[2]), int(row[3]), float(row[4]), float(row[5]))
        return trace


@dataclass
class SolverResult:
    x: np.ndarray
    trace: RunTrace
    stop_reason: str
