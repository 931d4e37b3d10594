"""CSV series and trace files."""

from __future__ import annotations

import csv
import math
from pathlib import Path

from rcga.harness.sweep import SweepResult

CSV_HEADER = ("K", "mean_iterations", "std_iterations", "success_rate")

SERIES_NAMES = {
    "r-onemax": "rOneMax",
    "g-onemax": "GOneMax",
    "r-onemax-at": "rOneMaxAt",
    "g-onemax-at": "GOneMaxAt",
}


def fmt6(v: float) -> str:
    """Six significant digits, trailing zeros kept (``1234.50``)."""
    if math.isnan(v):
        return "nan"
    return format(v, "#.6g")


def series_filename(result: SweepResult, r: int) -> str:
    return f"{SERIES_NAMES[result.spec.fitness_kind.value]}-n{result.spec.n}-r{r}.csv"


def emit_csv(result: SweepResult, out_dir) -> list[Path]:
    """Write one CSV per r series; rows in ascending K."""
    if not result.cells:
        raise ValueError("empty sweep result")
    out_dir = Path(out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise OSError(f"cannot create output directory {out_dir}: {e}") from e
    paths = []
    for r in sorted({r for r, _ in result.cells}):
        path = out_dir / series_filename(result, r)
        lines = [",".join(CSV_HEADER)]
        for c in result.series(r):
            lines.append(",".join([str(c.K), fmt6(c.mean_iterations), fmt6(c.std_iterations), fmt6(c.success_rate)]))
        try:
            with open(path, "w", encoding="utf-8", newline="") as f:
                f.write("\n".join(lines) + "\n")
        except OSError as e:
            raise OSError(f"cannot write {path}: {e}") from e
        paths.append(path)
    return paths


def read_csv(path) -> list[tuple[int, float, float, float]]:
    with open(path, encoding="utf-8", newline="") as f:
        reader = csv.reader(f)
        header = tuple(next(reader))
        if header != CSV_HEADER:
            raise ValueError(f"{path}: unexpected header {header}")
        return [(int(k), float(m), float(s), float(p)) for k, m, s, p in reader]


def write_trace(trace, path) -> None:
    """One ``t,fx,fy,swapped,phi`` line per step; full traces follow each
    with ``d,i,j,+1|-1`` lines for the count changes."""
    path = Path(path)
    try:
        with open(path, "w", encoding="utf-8") as f:
            f.write("# t,fx,fy,swapped,phi\n")
            for rec in trace:
                f.write(f"{rec.t},{rec.fx},{rec.fy},{int(rec.swapped)},{float(rec.phi):.10g}\n")
                for i, j, d in rec.delta or ():
                    f.write(f"d,{i},{j},{d:+d}\n")
    except OSError as e:
        raise OSError(f"cannot write trace {path}: {e}") from e
