"""Parameter sweeps over (r, K) and their aggregation."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from rcga.algorithm import RunConfig, RunStatus, run
from rcga.core import ModelParams
from rcga.fitness import FitnessFunction, FitnessKind
from rcga.seeds import derive_trial_seed

WORKERS_ENV = "RCGA_WORKERS"


@dataclass(frozen=True)
class KRange:
    start: int
    stop: int
    step: int = 1

    def __post_init__(self) -> None:
        if self.start < 1 or self.step < 1 or self.stop < self.start:
            raise ValueError(f"invalid K range {self}")

    @classmethod
    def parse(cls, text: str) -> "KRange":
        """``start:stop[:step]`` (inclusive) or a single value."""
        parts = [int(p) for p in text.split(":")]
        if len(parts) == 1:
            return cls(parts[0], parts[0], 1)
        if len(parts) in (2, 3):
            return cls(*parts)
        raise ValueError(f"cannot parse K range {text!r}")

    def values(self) -> list[int]:
        return list(range(self.start, self.stop + 1, self.step))


@dataclass(frozen=True)
class SweepSpec:
    n: int
    r_list: tuple[int, ...]
    k_range: KRange
    fitness_kind: FitnessKind
    repetitions: int
    master_seed: int
    max_iterations: int | None = None  # None: default cap per cell
    stagnation_check: bool = True

    def __post_init__(self) -> None:
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")
        if not self.r_list or min(self.r_list) < 2:
            raise ValueError("r_list must contain values >= 2")
        object.__setattr__(self, "r_list", tuple(self.r_list))

    def cells(self) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
        """Runnable and skipped (r, K) pairs; K must be a multiple of r."""
        ok, skipped = [], []
        for r in self.r_list:
            for K in self.k_range.values():
                (skipped if K % r else ok).append((r, K))
        return ok, skipped


@dataclass
class CellStats:
    r: int
    K: int
    repetitions: int
    success_count: int
    stagnation_count: int
    cap_count: int
    success_iterations: np.ndarray = field(repr=False)

    @property
    def all_failed(self) -> bool:
        return self.success_count == 0

    @property
    def mean_iterations(self) -> float:
        return float(self.success_iterations.mean()) if self.success_count else math.nan

    @property
    def std_iterations(self) -> float:
        if self.success_count == 0:
            return math.nan
        if self.success_count == 1:
            return 0.0
        return float(self.success_iterations.std(ddof=1))

    @property
    def success_rate(self) -> float:
        return self.success_count / self.repetitions


@dataclass
class SweepResult:
    spec: SweepSpec
    cells: dict[tuple[int, int], CellStats]
    skipped: list[tuple[int, int]]

    def series(self, r: int) -> list[CellStats]:
        return [c for (rr, _), c in sorted(self.cells.items()) if rr == r]


def trial_fitness(spec: SweepSpec, r: int, trial: int) -> FitnessFunction:
    """Fitness for one trial; ``_at`` kinds get a random optimum that depends
    on (master seed, r, trial) only, so it is shared along a K series."""
    if spec.fitness_kind in (FitnessKind.R_ONEMAX_AT, FitnessKind.G_ONEMAX_AT):
        seed = derive_trial_seed(spec.master_seed, r, 0, trial)
        return FitnessFunction.with_random_optimum(spec.fitness_kind, spec.n, r, seed)
    return FitnessFunction(spec.fitness_kind, spec.n, r)


def run_cell(spec: SweepSpec, r: int, K: int) -> CellStats:
    params = ModelParams(spec.n, r, K)
    counts = {s: 0 for s in RunStatus}
    its = []
    for trial in range(spec.repetitions):
        cfg = RunConfig(
            params, trial_fitness(spec, r, trial),
            seed=derive_trial_seed(spec.master_seed, r, K, trial),
            max_iterations=spec.max_iterations,
            stagnation_check=spec.stagnation_check,
        )
        out = run(cfg)
        counts[out.status] += 1
        if out.status is RunStatus.OPTIMUM_SAMPLED:
            its.append(out.iterations)
    return CellStats(
        r, K, spec.repetitions,
        counts[RunStatus.OPTIMUM_SAMPLED], counts[RunStatus.STAGNATED], counts[RunStatus.CAP_REACHED],
        np.array(its, dtype=np.int64),
    )


def default_workers() -> int:
    env = os.environ.get(WORKERS_ENV)
    return int(env) if env else (os.cpu_count() or 1)


def sweep(spec: SweepSpec, workers: int | None = None, progress=None) -> SweepResult:
    """Run every valid (r, K) cell.  ``progress`` is called with each finished
    ``CellStats`` (in completion order); the result is in canonical order."""
    ok, skipped = spec.cells()
    if not ok:
        raise ValueError("sweep has no valid (r, K) cell")
    workers = workers or default_workers()
    results: dict[tuple[int, int], CellStats] = {}
    if workers <= 1:
        for r, K in ok:
            results[(r, K)] = cell = run_cell(spec, r, K)
            if progress:
                progress(cell)
    else:
        # the run loop releases the GIL
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = {pool.submit(run_cell, spec, r, K): (r, K) for r, K in ok}
            for fut, key in futures.items():
                results[key] = cell = fut.result()
                if progress:
                    progress(cell)
    return SweepResult(spec, {k: results[k] for k in sorted(results)}, skipped)


def minimizer(cells: list[CellStats]) -> CellStats | None:
    """Cell with the smallest mean iterations among cells with a success."""
    done = [c for c in cells if not c.all_failed]
    return min(done, key=lambda c: (c.mean_iterations, c.K)) if done else None
