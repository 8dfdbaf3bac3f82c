"""Fixed-budget identification of the top-m feasible arms in a
constrained bandit: the phased accept-or-reject selector, two baselines,
closed-form error bounds, and a reproducible Monte-Carlo harness."""

from .backend import BACKEND_NAME, available_backends
from .baselines import BaselineKind, run_successive_saa, run_uniform_top_m
from .bounds import (
    BoundReport,
    RankingBoundInput,
    bound_report,
    proof_two_term_bound,
    ranking_bound_input,
    ranking_lower_bound,
    theorem1_bound,
)
from .distributions import ArmDistribution
from .engine import (
    PhaseRecord,
    RunOutcome,
    ZetaReport,
    ZetaViolation,
    check_zeta,
    empirical_gap,
    outcome_to_dict,
    run_csar,
)
from .harness import (
    ALGORITHMS,
    CSV_COLUMNS,
    CellResult,
    ExperimentConfig,
    TrialAggregate,
    TrialRecord,
    derive_trial_seed,
    emit_csv,
    load_config,
    read_aggregates,
    run_cell,
    run_experiment,
)
from .instance import (
    BanditInstance,
    ComplexityProfile,
    RankMap,
    epsilon_classification,
    ground_truth,
    rank,
)
from .sampling import RandomStream, SampleDraw
from .schedule import PhaseSchedule, harmonic_number, make_schedule

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "ArmDistribution",
    "BACKEND_NAME",
    "BanditInstance",
    "BaselineKind",
    "BoundReport",
    "CSV_COLUMNS",
    "CellResult",
    "ComplexityProfile",
    "ExperimentConfig",
    "PhaseRecord",
    "PhaseSchedule",
    "RandomStream",
    "RankMap",
    "RankingBoundInput",
    "RunOutcome",
    "SampleDraw",
    "TrialAggregate",
    "TrialRecord",
    "ZetaReport",
    "ZetaViolation",
    "available_backends",
    "bound_report",
    "check_zeta",
    "derive_trial_seed",
    "emit_csv",
    "empirical_gap",
    "epsilon_classification",
    "ground_truth",
    "harmonic_number",
    "load_config",
    "make_schedule",
    "outcome_to_dict",
    "proof_two_term_bound",
    "rank",
    "ranking_bound_input",
    "ranking_lower_bound",
    "read_aggregates",
    "run_cell",
    "run_csar",
    "run_experiment",
    "run_successive_saa",
    "run_uniform_top_m",
    "theorem1_bound",
    "__version__",
]
