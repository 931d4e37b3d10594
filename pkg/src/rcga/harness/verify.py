"""The verification suite behind ``rcga verify``."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from rcga.analysis.bounds import (
    BoundQuery,
    bound_collision_probability,
    bound_neutral_concentration,
    collision_probability_exact,
)
from rcga.analysis.probes import dominance_probe, martingale_probe, potential_drift_probe, random_snapshot
from rcga.fitness import FitnessKind
from rcga.harness.sweep import KRange, SweepSpec, sweep

PRESETS = {
    "paper-defaults": dict(
        martingale=dict(n=10, r=4, K=80, T=200, trials=2000),
        concentrated=dict(n=10, r=4, K=800, T=200, trials=2000),
        collision_snapshots=100,
        drift_snapshots=20, drift_steps=10_000,
        dominance=dict(n=5, r=3, K=30, T=100, trials=5000),
    ),
    "quick": dict(
        martingale=dict(n=10, r=4, K=80, T=200, trials=300),
        concentrated=dict(n=10, r=4, K=800, T=200, trials=300),
        collision_snapshots=20,
        drift_snapshots=4, drift_steps=2000,
        dominance=dict(n=5, r=3, K=30, T=100, trials=800),
    ),
}

CONCENTRATED_MAX_RATE = 0.08


@dataclass
class CheckResult:
    name: str
    passed: bool
    text: str


def check_martingale(n, r, K, T, trials, seed) -> CheckResult:
    rep = martingale_probe(n, r, K, 0, T, trials, seed)
    return CheckResult("martingale", rep.passed(), rep.to_text())


def check_concentrated(n, r, K, T, trials, seed) -> CheckResult:
    rep = martingale_probe(n, r, K, 0, T, trials, seed)
    bound = bound_neutral_concentration(BoundQuery(n, r, K, T))
    worst = float(rep.exceedance.max())
    ok = rep.passed() and worst < CONCENTRATED_MAX_RATE
    text = rep.to_text() + f"\nmax_exceedance: {worst:.6g}\nrequired_below: {CONCENTRATED_MAX_RATE}\nbound: {bound:.6g}"
    return CheckResult("concentration", ok, text)


def check_collision(snapshots: int, seed: int, max_n: int = 12) -> CheckResult:
    """Exact P[D_i = 0] against its lower bound at random frequency vectors."""
    rng = np.random.default_rng(seed)
    worst_margin = math.inf
    for _ in range(snapshots):
        n = int(rng.integers(1, max_n + 1))
        freqs = rng.random(n)
        i = int(rng.integers(n))
        margin = collision_probability_exact(freqs, i) - bound_collision_probability(freqs, i)
        worst_margin = min(worst_margin, margin)
    ok = worst_margin >= 0
    text = f"probe: collision\nsnapshots: {snapshots}\nmin_exact_minus_bound: {worst_margin:.6g}\nresult: {'pass' if ok else 'FAIL'}"
    return CheckResult("collision", ok, text)


def check_potential_drift(snapshots: int, steps: int, seed: int) -> CheckResult:
    rng = np.random.default_rng(seed)
    lines, ok = [], True
    for k in range(snapshots):
        rep = potential_drift_probe(random_snapshot(rng), steps, seed + k + 1)
        ok &= rep.passed()
        lines.append(
            f"snapshot_{k}: phi={rep.phi:.6g} s={rep.s:.6g} K={rep.K} mean_drop={rep.mean_drop:.6g} "
            f"stderr={rep.stderr:.6g} bound={rep.bound:.6g} {'pass' if rep.passed() else 'FAIL'}"
        )
    head = f"probe: potential-drift\nsnapshots: {snapshots}\nsteps: {steps}"
    return CheckResult("potential-drift", ok, "\n".join([head, *lines, f"result: {'pass' if ok else 'FAIL'}"]))


def check_dominance(n, r, K, T, trials, seed) -> CheckResult:
    rep = dominance_probe(n, r, K, T, trials, seed)
    return CheckResult("dominance", rep.passed(), rep.to_text())


def run_verification(preset: str = "paper-defaults", seed: int = 1) -> list[CheckResult]:
    p = PRESETS[preset]
    return [
        check_martingale(**p["martingale"], seed=seed),
        check_concentrated(**p["concentrated"], seed=seed),
        check_collision(p["collision_snapshots"], seed),
        check_potential_drift(p["drift_snapshots"], p["drift_steps"], seed),
        check_dominance(**p["dominance"], seed=seed),
    ]


def conjecture_K(c: float, n: int, r: int) -> int:
    """``ceil(c r sqrt(n) ln r ln n)`` rounded up to a multiple of r."""
    raw = math.ceil(c * r * math.sqrt(n) * math.log(r) * math.log(n))
    return r * math.ceil(raw / r)


def conjecture_probe(n_list=(100, 200, 400), r: int = 3, reps: int = 20, seed: int = 1,
                     c_list=(1, 2, 4), workers: int | None = None) -> list[dict]:
    """G-OneMax runs at K on the conjectured scale, with mean iterations
    normalized by ``K sqrt(n) ln r``.  A diagnostic only: roughly constant
    ratios along n are consistent with the conjectured order, nothing more."""
    if reps < 1:
        raise ValueError("reps must be >= 1")
    rows = []
    for c in c_list:
        for n in n_list:
            K = conjecture_K(c, n, r)
            spec = SweepSpec(n, (r,), KRange(K, K), FitnessKind.G_ONEMAX, reps, seed)
            cell = sweep(spec, workers).cells[(r, K)]
            mean = cell.mean_iterations
            rows.append(dict(
                c=c, n=n, K=K, success_rate=cell.success_rate, mean_iterations=mean,
                ratio=mean / (K * math.sqrt(n) * math.log(r)),
            ))
    return rows


def format_conjecture(rows: list[dict]) -> str:
    out = ["c,n,K,success_rate,mean_iterations,ratio  (non-conclusive diagnostic)"]
    for row in rows:
        out.append(f"{row['c']},{row['n']},{row['K']},{row['success_rate']:.3f},"
                   f"{row['mean_iterations']:.6g},{row['ratio']:.6g}")
    return "\n".join(out)
