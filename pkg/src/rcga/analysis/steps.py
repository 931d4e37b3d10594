"""Per-step instrumentation: the D_i statistic and rw/biased classification."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

import numpy as np


class StepTag(enum.Enum):
    RW = "rw"
    BIASED = "biased"


def compute_potential(model, target=None) -> Fraction:
    """``n - sum_i p[i, target_i]`` as an exact rational; ``target`` defaults
    to ``r - 1`` at every position."""
    if target is None:
        top = int(model.counts[:, -1].sum())
    else:
        top = int(model.counts[np.arange(model.n), np.asarray(target)].sum())
    return Fraction(model.n * model.K - top, model.K)


def compute_D(x, y, i: int, r: int) -> int:
    """Difference in the number of ``r - 1`` entries of ``x`` and ``y``,
    over every position except ``i`` (0-based)."""
    x = np.asarray(x)
    y = np.asarray(y)
    if not 0 <= i < len(x):
        raise IndexError(f"position {i} out of range for n={len(x)}")
    hx = x == r - 1
    hy = y == r - 1
    return int(hx.sum() - hy.sum() - (int(hx[i]) - int(hy[i])))


def compute_all_D(x, y, target) -> np.ndarray:
    """D_i for every position at once, counting matches against ``target``
    (all ``r - 1`` for r-OneMax)."""
    hx = (np.asarray(x) == target).astype(np.int64)
    hy = (np.asarray(y) == target).astype(np.int64)
    return (hx.sum() - hy.sum()) - (hx - hy)


def classify(d: int) -> StepTag:
    return StepTag.BIASED if d in (-1, 0) else StepTag.RW


def classify_step(D) -> tuple[StepTag, ...]:
    return tuple(classify(int(d)) for d in D)


@dataclass(frozen=True)
class StepRecord:
    """One iteration.  ``x``/``y`` are as sampled, before any swap.

    At summary trace level only ``t``, the fitnesses, ``swapped`` and ``phi``
    are filled in.
    """

    t: int
    fx: int
    fy: int
    swapped: bool
    phi: Fraction
    x: np.ndarray | None = None
    y: np.ndarray | None = None
    D: np.ndarray | None = None
    tags: tuple[StepTag, ...] | None = None
    delta: tuple[tuple[int, int, int], ...] | None = None

    @property
    def winner(self):
        return self.y if self.swapped else self.x

    @property
    def loser(self):
        return self.x if self.swapped else self.y
