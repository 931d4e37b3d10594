"""The r-valued OneMax family.

All fitness values are exact Python/numpy integers.  ``FitnessFunction`` can
additionally mark positions as *ignored*; such a position is neutral, which
the drift probes rely on.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from rcga.core import validate_individual


class FitnessKind(enum.Enum):
    R_ONEMAX = "r-onemax"
    G_ONEMAX = "g-onemax"
    R_ONEMAX_AT = "r-onemax-at"
    G_ONEMAX_AT = "g-onemax-at"


def eval_r_onemax(x, r: int) -> int:
    """Number of positions holding the top value ``r - 1``."""
    return int(np.count_nonzero(np.asarray(x) == r - 1))


def eval_g_onemax(x) -> int:
    return int(np.sum(np.asarray(x, dtype=np.int64)))


def hamming_distance(a, b) -> int:
    return int(np.count_nonzero(np.asarray(a) != np.asarray(b)))


def ring_distance(a, b, r: int) -> int:
    """Sum over positions of the cyclic distance between values mod ``r``."""
    d = np.abs(np.asarray(a, dtype=np.int64) - np.asarray(b, dtype=np.int64))
    return int(np.sum(np.minimum(d, r - d)))


def eval_r_onemax_at(a, b) -> int:
    return len(a) - hamming_distance(a, b)


def eval_g_onemax_at(a, b, r: int) -> int:
    return len(a) * (r - 1) - ring_distance(a, b, r)


def format_optimum(a) -> str:
    return ",".join(str(int(v)) for v in a)


def parse_optimum(text: str) -> tuple[int, ...]:
    return tuple(int(v) for v in text.split(","))


# kernel encodings of the per-position contribution
MATCH, LINEAR, RING = 0, 1, 2


@dataclass(frozen=True)
class FitnessFunction:
    kind: FitnessKind
    n: int
    r: int
    optimum: tuple[int, ...] | None = None
    ignored: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.kind in (FitnessKind.R_ONEMAX_AT, FitnessKind.G_ONEMAX_AT):
            if self.optimum is None:
                raise ValueError(f"{self.kind.value} needs an optimum string")
            a = validate_individual(self.optimum, self.n, self.r)
            object.__setattr__(self, "optimum", tuple(int(v) for v in a))
        elif self.optimum is not None:
            raise ValueError(f"{self.kind.value} has the fixed optimum all-(r-1)s")
        if any(not 0 <= i < self.n for i in self.ignored):
            raise ValueError("ignored position out of range")
        object.__setattr__(self, "ignored", frozenset(self.ignored))

    @classmethod
    def r_onemax(cls, n: int, r: int) -> "FitnessFunction":
        return cls(FitnessKind.R_ONEMAX, n, r)

    @classmethod
    def g_onemax(cls, n: int, r: int) -> "FitnessFunction":
        return cls(FitnessKind.G_ONEMAX, n, r)

    @classmethod
    def with_random_optimum(cls, kind: FitnessKind, n: int, r: int, seed: int) -> "FitnessFunction":
        """An ``_at`` variant whose optimum is drawn uniformly from ``seed``."""
        if kind not in (FitnessKind.R_ONEMAX_AT, FitnessKind.G_ONEMAX_AT):
            raise ValueError(f"{kind.value} has no configurable optimum")
        a = np.random.default_rng(seed).integers(0, r, size=n)
        return cls(kind, n, r, tuple(int(v) for v in a))

    def with_neutral(self, position: int) -> "FitnessFunction":
        """Same function with ``position`` excluded from the sum."""
        return FitnessFunction(self.kind, self.n, self.r, self.optimum, self.ignored | {position})

    @property
    def target(self) -> np.ndarray:
        """The per-position value every maximizer must hold."""
        if self.optimum is None:
            return np.full(self.n, self.r - 1, dtype=np.int64)
        return np.array(self.optimum, dtype=np.int64)

    @property
    def weights(self) -> np.ndarray:
        w = np.ones(self.n, dtype=np.int64)
        if self.ignored:
            w[list(self.ignored)] = 0
        return w

    @property
    def code(self) -> int:
        return {
            FitnessKind.R_ONEMAX: MATCH,
            FitnessKind.R_ONEMAX_AT: MATCH,
            FitnessKind.G_ONEMAX: LINEAR,
            FitnessKind.G_ONEMAX_AT: RING,
        }[self.kind]

    @property
    def max_value(self) -> int:
        active = self.n - len(self.ignored)
        return active if self.code == MATCH else active * (self.r - 1)

    def evaluate(self, x) -> int:
        x = validate_individual(x, self.n, self.r)
        if self.ignored:
            keep = self.weights.astype(bool)
            x, target = x[keep], self.target[keep]
        else:
            target = self.target
        if self.kind is FitnessKind.R_ONEMAX:
            return eval_r_onemax(x, self.r)
        if self.kind is FitnessKind.G_ONEMAX:
            return eval_g_onemax(x)
        if self.kind is FitnessKind.R_ONEMAX_AT:
            return eval_r_onemax_at(target, x)
        return eval_g_onemax_at(target, x, self.r)

    __call__ = evaluate

    def is_optimal(self, x) -> bool:
        return self.evaluate(x) == self.max_value

    def describe(self) -> str:
        s = self.kind.value
        if self.optimum is not None:
            s += f"[a={format_optimum(self.optimum)}]"
        if self.ignored:
            s += f"[neutral={','.join(map(str, sorted(self.ignored)))}]"
        return s
