"""Closed-form drift and runtime bounds, evaluated for comparison with runs.

Probability-valued bounds are clamped to [0, 1]; outside that range they are
vacuous anyway.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np


@dataclass(frozen=True)
class BoundQuery:
    n: int
    r: int
    K: int
    T: int

    def __post_init__(self) -> None:
        if min(self.n, self.r, self.K, self.T) < 1:
            raise ValueError("n, r, K and T must all be positive")


def _clamp(p: float) -> float:
    return min(1.0, max(0.0, p))


def bound_neutral_concentration(q: BoundQuery) -> float:
    """Upper bound on P[max_{t<=T} |p_t - p_0| >= 1/(2r)] at a neutral position:
    ``2 exp(-K^2 / (8 T r^2))``."""
    return _clamp(2.0 * math.exp(-q.K**2 / (8.0 * q.T * q.r**2)))


def bound_weak_preference(q: BoundQuery) -> float:
    """Upper bound on P[min_{t<=T} p_t <= p_0 - 1/(2r)] for the frequency of a
    weakly preferred value.  Same closed form as the neutral bound, but the
    event is one-sided."""
    return _clamp(2.0 * math.exp(-q.K**2 / (8.0 * q.T * q.r**2)))


def _others_variance(freqs: Sequence[float], i: int) -> float:
    p = np.asarray(freqs, dtype=float)
    if np.any(p < 0) or np.any(p > 1):
        raise ValueError("frequencies must lie in [0, 1]")
    v = p * (1 - p)
    return float(v.sum() - v[i])


def bound_collision_probability(freqs: Sequence[float], i: int) -> float:
    """Lower bound on P[D_i = 0] given the frequencies of value r-1 at every
    position (``freqs[i]`` itself is ignored)."""
    sigma2 = _others_variance(freqs, i)
    return 4.0 / (9.0 * (2.0 * math.sqrt(3.0 * sigma2) + 1.0))


def bound_single_frequency_drift(p: float, freqs: Sequence[float], i: int, K: int) -> float:
    """Lower bound on the expected one-step change of ``p = p[i, r-1]``;
    requires ``1/K <= p <= 1 - 1/K``."""
    if not (1.0 / K <= p <= 1.0 - 1.0 / K):
        raise ValueError(f"frequency {p} outside [1/K, 1 - 1/K] for K={K}")
    sigma2 = _others_variance(freqs, i)
    return 8.0 * p * (1 - p) / (9.0 * K * (2.0 * math.sqrt(3.0 * sigma2) + 1.0))


def bound_potential_drift(phi: float, s: float, K: int) -> float:
    """Lower bound ``2 s sqrt(phi) / (15 K)`` on the expected one-step drop of
    the potential, valid when every p[i, r-1] >= s and phi >= 1/2."""
    if phi < 0.5:
        raise ValueError(f"potential {phi} < 1/2")
    if s <= 0:
        raise ValueError("frequency floor s must be positive")
    return 2.0 * s * math.sqrt(phi) / (15.0 * K)


def runtime_bound_shape(n: int, r: int, K: int) -> float:
    """``K sqrt(n) log r log n`` (natural logs), the high-probability runtime
    order for large enough K."""
    return K * math.sqrt(n) * math.log(r) * math.log(n)


def poisson_binomial_pmf(probs: Sequence[float]) -> np.ndarray:
    """PMF of a sum of independent Bernoulli(p_k), by convolution over terms."""
    pmf = np.array([1.0])
    for p in probs:
        nxt = np.zeros(len(pmf) + 1)
        nxt[:-1] = pmf * (1 - p)
        nxt[1:] += pmf * p
        pmf = nxt
    return pmf


def collision_probability_exact(freqs: Sequence[float], i: int) -> float:
    """Exact P[D_i = 0] = sum_k P[X = k]^2 with X the number of r-1 entries
    among the positions other than ``i``."""
    p = [f for k, f in enumerate(freqs) if k != i]
    pmf = poisson_binomial_pmf(p)
    return float(np.dot(pmf, pmf))
