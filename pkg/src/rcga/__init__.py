"""r-valued compact genetic algorithm on generalized OneMax."""

from rcga.core import (
    FrequencyMatrix,
    InvalidConfigError,
    ModelParams,
    init_uniform,
    sample,
    update,
)
from rcga.fitness import FitnessFunction, FitnessKind
from rcga.algorithm import RunConfig, RunOutcome, RunStatus, TraceLevel, run, step

__version__ = "0.1.0"
