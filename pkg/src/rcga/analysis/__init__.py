from rcga.analysis.steps import (
    StepRecord,
    StepTag,
    classify,
    classify_step,
    compute_all_D,
    compute_D,
    compute_potential,
)
from rcga.analysis.bounds import (
    BoundQuery,
    bound_collision_probability,
    bound_neutral_concentration,
    bound_potential_drift,
    bound_single_frequency_drift,
    bound_weak_preference,
    collision_probability_exact,
    poisson_binomial_pmf,
    runtime_bound_shape,
)
from rcga.analysis.probes import (
    DominanceReport,
    MartingaleReport,
    PotentialDriftReport,
    dominance_probe,
    exact_single_position_chain,
    martingale_probe,
    potential_drift_probe,
)
