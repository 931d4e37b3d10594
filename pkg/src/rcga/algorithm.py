"""The r-cGA main loop."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace

import numpy as np

from rcga import _kernel
from rcga.analysis.steps import StepRecord, classify_step, compute_all_D, compute_potential
from rcga.core import FrequencyMatrix, InvalidConfigError, ModelParams, init_uniform, sample, update
from rcga.fitness import FitnessFunction


class RunStatus(enum.Enum):
    OPTIMUM_SAMPLED = "optimum-sampled"
    CAP_REACHED = "iteration-cap-reached"
    STAGNATED = "stagnated"


_STATUS = {
    _kernel.OPTIMUM_SAMPLED: RunStatus.OPTIMUM_SAMPLED,
    _kernel.CAP_REACHED: RunStatus.CAP_REACHED,
    _kernel.STAGNATED: RunStatus.STAGNATED,
}


class TraceLevel(enum.Enum):
    OFF = "off"
    SUMMARY = "summary"
    FULL = "full"


def default_max_iterations(n: int, r: int, K: int) -> int:
    """``50 K sqrt(n) (1 + log2 r)(1 + log2 n)``, rounded up."""
    return math.ceil(50 * K * math.sqrt(n) * (1 + math.log2(r)) * (1 + math.log2(n)))


@dataclass
class RunConfig:
    params: ModelParams
    fitness: FitnessFunction
    seed: int = 0
    max_iterations: int | None = None
    trace_level: TraceLevel = TraceLevel.OFF
    stagnation_check: bool = True
    stop_on_optimum: bool = True
    initial_model: FrequencyMatrix | None = None

    def __post_init__(self) -> None:
        if self.max_iterations is None:
            self.max_iterations = default_max_iterations(self.params.n, self.params.r, self.params.K)
        if self.max_iterations < 1:
            raise InvalidConfigError("max_iterations must be >= 1")
        if (self.fitness.n, self.fitness.r) != (self.params.n, self.params.r):
            raise InvalidConfigError("fitness dimensions do not match the model parameters")
        if self.initial_model is not None and (
            self.initial_model.n, self.initial_model.r, self.initial_model.K
        ) != (self.params.n, self.params.r, self.params.K):
            raise InvalidConfigError("initial model does not match the model parameters")
        self.trace_level = TraceLevel(self.trace_level)


@dataclass
class RunOutcome:
    status: RunStatus
    iterations: int
    final_model: FrequencyMatrix
    trace: list[StepRecord] | None = field(default=None, repr=False)

    @property
    def evaluations(self) -> int:
        return 2 * self.iterations


def step(model: FrequencyMatrix, fitness: FitnessFunction, rng: np.random.Generator,
         t: int = 1, full: bool = True) -> tuple[FrequencyMatrix, StepRecord]:
    """One iteration: sample x and y, swap if f(x) < f(y), update.

    Ties keep x as the winner.  ``t`` only labels the record.
    """
    x = sample(model, rng)
    y = sample(model, rng)
    fx, fy = fitness.evaluate(x), fitness.evaluate(y)
    swapped = fx < fy
    winner, loser = (y, x) if swapped else (x, y)
    new = update(model, winner, loser)
    phi = compute_potential(new, fitness.target)
    if not full:
        return new, StepRecord(t, fx, fy, swapped, phi)
    D = compute_all_D(x, y, fitness.target)
    diff = np.flatnonzero(winner != loser)
    delta = tuple(
        d for i in diff for d in ((int(i), int(winner[i]), 1), (int(i), int(loser[i]), -1))
    )
    return new, StepRecord(t, fx, fy, swapped, phi, x, y, D, classify_step(D), delta)


def _unreachable(model: FrequencyMatrix, fitness: FitnessFunction) -> bool:
    hit = model.counts[np.arange(model.n), fitness.target] == 0
    return bool(np.any(hit & fitness.weights.astype(bool)))


def run(config: RunConfig) -> RunOutcome:
    """Run the r-cGA until the optimum is sampled, the iteration cap is hit,
    or (with ``stagnation_check``) a value every maximizer needs has
    frequency 0 somewhere.

    The optimum test looks at both fresh samples before the update, and the
    iteration that samples it is counted.
    """
    params = config.params
    model = init_uniform(params) if config.initial_model is None else config.initial_model.copy()
    rng = np.random.default_rng(config.seed)
    fitness = config.fitness

    if config.trace_level is TraceLevel.OFF:
        counts = model.counts.copy()
        empty = np.zeros(params.r, np.int64)
        status, t = _kernel.run_kernel(
            counts, params.K, fitness.code, fitness.target, fitness.weights, fitness.max_value,
            config.max_iterations, config.stop_on_optimum, config.stagnation_check,
            rng, -1, empty, empty,
        )
        return RunOutcome(_STATUS[status], int(t), FrequencyMatrix(counts, params.K))

    full = config.trace_level is TraceLevel.FULL
    trace: list[StepRecord] = []
    max_value = fitness.max_value
    t = 0
    while t < config.max_iterations:
        t += 1
        new, rec = step(model, fitness, rng, t, full)
        trace.append(rec)
        if config.stop_on_optimum and max_value in (rec.fx, rec.fy):
            # the update of the final iteration is never applied
            trace[-1] = replace(rec, phi=compute_potential(model, fitness.target), delta=() if full else None)
            return RunOutcome(RunStatus.OPTIMUM_SAMPLED, t, model, trace)
        model = new
        if config.stagnation_check and _unreachable(model, fitness):
            return RunOutcome(RunStatus.STAGNATED, t, model, trace)
    return RunOutcome(RunStatus.CAP_REACHED, t, model, trace)
