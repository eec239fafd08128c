"""SMS-EMOA with greedy, stochastic and aging population updates on the
OJZJ/mOJZJ jump benchmarks, plus the seeded experiment harness."""

from .algorithms import (
    AGING,
    CLASSIC,
    STOCHASTIC_UPDATE,
    CoverageTracker,
    RunResult,
    Strategy,
    aging_step,
    bitwise_mutation,
    classic_step,
    initial_population,
    iteration_cap,
    milestone_profiles,
    run_until_covered,
    spu_step,
    step,
)
from .benchmarks import (
    MOJZJ,
    OJZJ,
    ParetoFrontTarget,
    ProblemSpec,
    analytic_pareto_front,
    evaluate,
    make_individual,
    max_antichain_bound,
    mojzj_eval,
    ojzj_eval,
)
from .core import (
    BitString,
    DimensionMismatch,
    Individual,
    ObjectiveVector,
    Population,
    strictly_dominates,
    weakly_dominates,
)
from .harness import (
    ExperimentConfig,
    RunRecord,
    SummaryRow,
    default_parameters,
    read_records,
    run_experiment,
    summarize,
    sweep_preset,
)
from .hypervolume import (
    grid_hypervolume_oracle,
    hv_contribution,
    hypervolume,
    min_contribution_set,
)
from .ranking import FrontPartition, fast_non_dominated_sort

__version__ = "0.1.0"

__all__ = [
    "AGING", "CLASSIC", "MOJZJ", "OJZJ", "STOCHASTIC_UPDATE",
    "BitString", "CoverageTracker", "DimensionMismatch", "ExperimentConfig",
    "FrontPartition", "Individual", "ObjectiveVector", "ParetoFrontTarget",
    "Population", "ProblemSpec", "RunRecord", "RunResult", "Strategy",
    "SummaryRow", "aging_step", "analytic_pareto_front", "bitwise_mutation",
    "classic_step", "default_parameters", "evaluate",
    "fast_non_dominated_sort", "grid_hypervolume_oracle", "hv_contribution",
    "hypervolume", "initial_population", "iteration_cap", "make_individual",
    "max_antichain_bound", "milestone_profiles", "min_contribution_set",
    "mojzj_eval", "ojzj_eval", "read_records", "run_experiment",
    "run_until_covered", "spu_step", "step", "strictly_dominates",
    "summarize", "sweep_preset", "weakly_dominates",
]
