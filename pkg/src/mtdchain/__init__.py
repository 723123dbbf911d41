"""Higher-order Markov chains in mixture transition distribution form.

Fit per-lag transition matrices and LP-estimated lag weights to a
categorical outcome sequence, predict and simulate from the fitted model,
and rank model orders by prediction accuracy.
"""

from .assessment import AssessmentConfig, AssessmentReport, rank_orders, run_assessment
from .chain import (
    WDL,
    Distribution,
    FrequencyMatrix,
    Sequence,
    StateSpace,
    TransitionMatrix,
    count_frequencies,
    empirical_distribution,
    normalize,
    parse_sequence,
)
from .lp import LinearProgram, LpSolution, LpStatus, solve_lp
from .model import (
    MtdModel,
    fit,
    load_model,
    predict_distribution,
    sample_next,
    save_model,
    simulate,
    stationary_distribution,
)

__version__ = "0.1.0"

__all__ = [
    "AssessmentConfig", "AssessmentReport", "Distribution", "FrequencyMatrix", "LinearProgram",
    "LpSolution", "LpStatus", "MtdModel", "Sequence", "StateSpace", "TransitionMatrix", "WDL",
    "count_frequencies", "empirical_distribution", "fit", "load_model", "normalize",
    "parse_sequence", "predict_distribution", "rank_orders", "run_assessment", "sample_next",
    "save_model", "simulate", "solve_lp", "stationary_distribution",
]
