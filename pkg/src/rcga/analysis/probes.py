"""Monte Carlo probes of the drift results.

Every trial gets its own generator seeded by ``derive_trial_seed``, and
results are folded in trial order, so a report depends only on its inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from rcga import _kernel
from rcga.analysis.bounds import BoundQuery, bound_neutral_concentration, bound_potential_drift
from rcga.core import FrequencyMatrix, ModelParams, init_uniform
from rcga.fitness import FitnessFunction
from rcga.seeds import derive_trial_seed

MEAN_SIGMAS = 4.0
RATE_SIGMAS = 3.0
DIST_ALPHA = 1e-3


def _run_fixed(counts, K, fitness: FitnessFunction, steps: int, rng, watch: int = -1):
    """Run exactly ``steps`` iterations in place; returns (wmin, wmax) of the watched row."""
    r = counts.shape[1]
    if watch >= 0:
        wmin = counts[watch].copy()
        wmax = counts[watch].copy()
    else:
        wmin = wmax = np.zeros(r, np.int64)
    _kernel.run_kernel(
        counts, K, fitness.code, fitness.target, fitness.weights, fitness.max_value,
        steps, False, False, rng, watch, wmin, wmax,
    )
    return wmin, wmax


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "pass" if v else "FAIL"
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


@dataclass
class MartingaleReport:
    n: int
    r: int
    K: int
    T: int
    trials: int
    neutral_position: int
    mean_drift: np.ndarray
    stderr: np.ndarray
    exceedance: np.ndarray
    bound: float

    @property
    def rate_tolerance(self) -> float:
        return self.bound + RATE_SIGMAS * math.sqrt(self.bound * (1 - self.bound) / self.trials)

    def drift_ok(self) -> np.ndarray:
        return np.abs(self.mean_drift) <= MEAN_SIGMAS * self.stderr

    def exceedance_ok(self) -> np.ndarray:
        return self.exceedance <= self.rate_tolerance

    def passed(self) -> bool:
        return bool(self.drift_ok().all() and self.exceedance_ok().all())

    def to_text(self) -> str:
        lines = [
            "probe: martingale",
            f"n: {self.n}", f"r: {self.r}", f"K: {self.K}", f"T: {self.T}",
            f"trials: {self.trials}", f"neutral_position: {self.neutral_position}",
            f"bound: {self.bound:.6g}", f"rate_tolerance: {self.rate_tolerance:.6g}",
        ]
        for j in range(self.r):
            lines.append(
                f"value_{j}: mean_drift={self.mean_drift[j]:.6g} stderr={self.stderr[j]:.6g} "
                f"exceedance={self.exceedance[j]:.6g} drift={_fmt(self.drift_ok()[j])} "
                f"concentration={_fmt(self.exceedance_ok()[j])}"
            )
        lines.append(f"result: {_fmt(self.passed())}")
        return "\n".join(lines)


def martingale_probe(n: int, r: int, K: int, neutral_position: int, T: int, trials: int,
                     seed: int) -> MartingaleReport:
    """Run r-OneMax with one neutral position for ``T`` steps, ``trials`` times,
    and measure the drift and spread of that position's frequencies."""
    params = ModelParams(n, r, K)
    fitness = FitnessFunction.r_onemax(n, r).with_neutral(neutral_position)
    start = K // r
    final = np.empty((trials, r), np.int64)
    dev = np.empty((trials, r), np.int64)
    for k in range(trials):
        counts = init_uniform(params).counts
        rng = np.random.default_rng(derive_trial_seed(seed, r, K, k))
        wmin, wmax = _run_fixed(counts, K, fitness, T, rng, neutral_position)
        final[k] = counts[neutral_position]
        dev[k] = np.maximum(wmax - start, start - wmin)
    drift = (final - start) / K
    mean = drift.mean(axis=0)
    se = drift.std(axis=0, ddof=1) / math.sqrt(trials) if trials > 1 else np.zeros(r)
    # |p_t - p_0| >= 1/(2r)  <=>  2 r |c_t - c_0| >= K
    exceed = (2 * r * dev >= K).mean(axis=0)
    bound = bound_neutral_concentration(BoundQuery(n, r, K, max(T, 1))) if T > 0 else 0.0
    return MartingaleReport(n, r, K, T, trials, neutral_position, mean, se, exceed, bound)


def ks_one_sided_tolerance(m: int, k: int, alpha: float = DIST_ALPHA) -> float:
    """Critical value of the one-sided two-sample KS statistic (asymptotic)."""
    return math.sqrt(-math.log(alpha) / 2.0 * (m + k) / (m * k))


@dataclass
class DominanceReport:
    n: int
    r: int
    K: int
    T: int
    trials: int
    grid: np.ndarray  # counts k; frequency k / K
    cdf_preferring: np.ndarray
    cdf_neutral: np.ndarray

    @property
    def tolerance(self) -> float:
        return ks_one_sided_tolerance(self.trials, self.trials)

    @property
    def max_violation(self) -> float:
        return float(np.max(self.cdf_preferring - self.cdf_neutral))

    def passed(self) -> bool:
        return self.max_violation <= self.tolerance

    def to_text(self) -> str:
        lines = [
            "probe: dominance",
            f"n: {self.n}", f"r: {self.r}", f"K: {self.K}", f"T: {self.T}", f"trials: {self.trials}",
            f"max_violation: {self.max_violation:.6g}", f"tolerance: {self.tolerance:.6g}",
            f"result: {_fmt(self.passed())}",
            "cdf:",
            "frequency,preferring,neutral",
        ]
        for k, a, b in zip(self.grid, self.cdf_preferring, self.cdf_neutral):
            lines.append(f"{k / self.K:.6g},{a:.6g},{b:.6g}")
        return "\n".join(lines)


def dominance_probe(n: int, r: int, K: int, T: int, trials: int, seed: int) -> DominanceReport:
    """Compare p[0, r-1] after ``T`` steps on r-OneMax (position 0 weakly
    prefers r-1) against the same run with position 0 made neutral.

    The preferring frequency should stochastically dominate, i.e. its CDF
    should lie below the neutral one everywhere.
    """
    params = ModelParams(n, r, K)
    pref = FitnessFunction.r_onemax(n, r)
    neutral = pref.with_neutral(0)
    fp = np.empty(trials, np.int64)
    fq = np.empty(trials, np.int64)
    for k in range(trials):
        for fitness, out, idx in ((pref, fp, 2 * k), (neutral, fq, 2 * k + 1)):
            counts = init_uniform(params).counts
            _run_fixed(counts, K, fitness, T, np.random.default_rng(derive_trial_seed(seed, r, K, idx)))
            out[k] = counts[0, r - 1]
    grid = np.arange(K + 1)
    cdf_p = np.searchsorted(np.sort(fp), grid, side="right") / trials
    cdf_q = np.searchsorted(np.sort(fq), grid, side="right") / trials
    return DominanceReport(n, r, K, T, trials, grid, cdf_p, cdf_q)


def exact_single_position_chain(K: int, T: int, preferring: bool) -> np.ndarray:
    """Exact distribution of the count of value 1 after ``T`` steps for
    ``n = 1``, ``r = 2``, starting from ``K / 2``.

    With a preference for value 1 the count rises whenever the two samples
    differ (probability ``2p(1-p)``); when neutral it moves up or down with
    probability ``p(1-p)`` each.
    """
    if K % 2:
        raise ValueError("K must be even for r = 2")
    dist = np.zeros(K + 1)
    dist[K // 2] = 1.0
    c = np.arange(K + 1)
    p = c / K
    move = p * (1 - p)
    for _ in range(T):
        nxt = np.zeros_like(dist)
        if preferring:
            nxt[1:] += dist[:-1] * 2 * move[:-1]
            nxt += dist * (1 - 2 * move)
        else:
            nxt[1:] += dist[:-1] * move[:-1]
            nxt[:-1] += dist[1:] * move[1:]
            nxt += dist * (1 - 2 * move)
        dist = nxt
    return dist


@dataclass
class PotentialDriftReport:
    phi: float
    s: float
    K: int
    steps: int
    mean_drop: float
    stderr: float
    bound: float

    def passed(self) -> bool:
        return self.mean_drop >= self.bound - MEAN_SIGMAS * self.stderr

    def to_text(self) -> str:
        return "\n".join([
            "probe: potential-drift",
            f"phi: {self.phi:.6g}", f"s: {self.s:.6g}", f"K: {self.K}", f"steps: {self.steps}",
            f"mean_drop: {self.mean_drop:.6g}", f"stderr: {self.stderr:.6g}",
            f"bound: {self.bound:.6g}", f"result: {_fmt(self.passed())}",
        ])


def potential_drift_probe(model: FrequencyMatrix, steps: int, seed: int) -> PotentialDriftReport:
    """Average the one-step drop of the r-OneMax potential from a fixed model
    over ``steps`` independent single steps."""
    n, r, K = model.n, model.r, model.K
    fitness = FitnessFunction.r_onemax(n, r)
    top0 = int(model.counts[:, -1].sum())
    phi = n - top0 / K
    s = float(model.counts[:, -1].min()) / K
    rng = np.random.default_rng(seed)
    drops = np.empty(steps)
    for k in range(steps):
        counts = model.counts.copy()
        _run_fixed(counts, K, fitness, 1, rng)
        drops[k] = (int(counts[:, -1].sum()) - top0) / K
    se = drops.std(ddof=1) / math.sqrt(steps)
    return PotentialDriftReport(phi, s, K, steps, float(drops.mean()), float(se),
                                bound_potential_drift(phi, s, K))


def random_snapshot(rng: np.random.Generator, max_n: int = 30, max_r: int = 6,
                    max_units: int = 50) -> FrequencyMatrix:
    """A random model with every p[i, r-1] >= 1/K and potential >= 1/2."""
    while True:
        n = int(rng.integers(2, max_n + 1))
        r = int(rng.integers(2, max_r + 1))
        K = r * int(rng.integers(2, max_units + 1))
        counts = np.zeros((n, r), np.int64)
        for i in range(n):
            top = int(rng.integers(1, K + 1))
            counts[i, r - 1] = top
            if K - top:
                counts[i, : r - 1] = rng.multinomial(K - top, np.full(r - 1, 1 / (r - 1)))
        model = FrequencyMatrix(counts, K)
        if n - counts[:, -1].sum() / K >= 0.5:
            return model
