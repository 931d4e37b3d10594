"""Frequency-matrix model of the r-valued compact GA.

Frequencies are stored as integer counts in units of ``1/K``, so a row of the
model always sums to exactly ``K`` and every frequency is a multiple of
``1/K``.  Positions are 0-based throughout the package.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np


class InvalidConfigError(ValueError):
    """Raised for model parameters the algorithm cannot run with."""


@dataclass(frozen=True)
class ModelParams:
    n: int
    r: int
    K: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidConfigError(f"n must be >= 1, got {self.n}")
        if self.r < 2:
            raise InvalidConfigError(f"r must be >= 2, got {self.r}")
        if self.K < 1:
            raise InvalidConfigError(f"K must be >= 1, got {self.K}")
        if self.K % self.r:
            raise InvalidConfigError(
                f"K={self.K} is not a multiple of r={self.r}; 1/r must be a multiple of 1/K"
            )


@dataclass
class FrequencyMatrix:
    """An ``n x r`` grid of counts; frequency ``p[i, j] = counts[i, j] / K``."""

    counts: np.ndarray
    K: int

    def __post_init__(self) -> None:
        self.counts = np.array(self.counts, dtype=np.int64, copy=True)
        if self.counts.ndim != 2 or self.counts.shape[1] < 2 or self.counts.shape[0] < 1:
            raise InvalidConfigError(f"counts must be an n x r array with r >= 2, got shape {self.counts.shape}")
        self.check()

    @classmethod
    def from_frequencies(cls, rows, K: int) -> "FrequencyMatrix":
        """Build a model from exact frequencies (anything ``Fraction`` accepts)."""
        counts = []
        for row in rows:
            crow = []
            for p in row:
                c = Fraction(p) * K
                if c.denominator != 1:
                    raise InvalidConfigError(f"frequency {p} is not a multiple of 1/{K}")
                crow.append(int(c))
            counts.append(crow)
        return cls(np.array(counts), K)

    @property
    def n(self) -> int:
        return self.counts.shape[0]

    @property
    def r(self) -> int:
        return self.counts.shape[1]

    @property
    def params(self) -> ModelParams:
        return ModelParams(self.n, self.r, self.K)

    def frequencies(self) -> np.ndarray:
        return self.counts / self.K

    def frequency(self, i: int, j: int) -> Fraction:
        return Fraction(int(self.counts[i, j]), self.K)

    def copy(self) -> "FrequencyMatrix":
        return FrequencyMatrix(self.counts, self.K)

    def check(self) -> None:
        """Assert the row-sum and range invariants (exact integer arithmetic)."""
        if np.any(self.counts < 0) or np.any(self.counts > self.K):
            raise AssertionError("frequency count outside [0, K]")
        if np.any(self.counts.sum(axis=1) != self.K):
            raise AssertionError("frequency row does not sum to 1")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FrequencyMatrix):
            return NotImplemented
        return self.K == other.K and np.array_equal(self.counts, other.counts)


def init_uniform(params: ModelParams) -> FrequencyMatrix:
    if params.K % params.r:
        raise InvalidConfigError(f"K={params.K} is not a multiple of r={params.r}")
    return FrequencyMatrix(np.full((params.n, params.r), params.K // params.r, dtype=np.int64), params.K)


def validate_individual(x, n: int, r: int) -> np.ndarray:
    x = np.asarray(x, dtype=np.int64)
    if x.shape != (n,):
        raise ValueError(f"individual must have length {n}, got shape {x.shape}")
    if np.any(x < 0) or np.any(x >= r):
        raise ValueError(f"individual entries must lie in 0..{r - 1}")
    return x


def sample(model: FrequencyMatrix, rng: np.random.Generator, size: int | None = None) -> np.ndarray:
    """Sample one individual (or ``size`` of them) from the model.

    Each position consumes one uniform double ``u`` in position order and
    takes the value ``j`` whose cumulative count interval contains
    ``floor(u * K)``.  Values with count 0 are never drawn.  The compiled
    run loop uses the same rule, so both consume the generator identically.
    """
    shape = (model.n,) if size is None else (size, model.n)
    m = np.floor(rng.random(shape) * model.K).astype(np.int64)
    cum = np.cumsum(model.counts[:, :-1], axis=1)
    return (m[..., None] >= cum).sum(axis=-1).astype(np.int64)


def update(model: FrequencyMatrix, winner, loser) -> FrequencyMatrix:
    """Shift ``1/K`` of mass from the loser's value to the winner's at every
    position where the two differ.  Returns a new model."""
    winner = validate_individual(winner, model.n, model.r)
    loser = validate_individual(loser, model.n, model.r)
    counts = model.counts.copy()
    idx = np.flatnonzero(winner != loser)
    # a sampled value has count >= 1, so this never goes negative
    assert np.all(counts[idx, loser[idx]] >= 1), "update would make a count negative"
    counts[idx, winner[idx]] += 1
    counts[idx, loser[idx]] -= 1
    return FrequencyMatrix(counts, model.K)
