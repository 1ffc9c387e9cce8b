"""Rate bounds and a two-block chaining simulator for primitive relay channels.

The erasure closed forms live in :mod:`relaybounds.erasure_bounds`, the
finite-alphabet evaluators in :mod:`relaybounds.general_bounds`, and the
Monte-Carlo scheme simulator in :mod:`relaybounds.chain_sim`.  The ``point``,
``sweep`` and ``simulate`` console commands are in :mod:`relaybounds.cli`.
"""

from .chain_sim import (
    ChainLedger,
    ChainSimConfig,
    ChainSimOutcome,
    ThresholdEstimate,
    estimate_threshold,
    simulate_pair,
)
from .erasure_bounds import (
    BoundReport,
    CFRegimeError,
    DegenerateDenominatorError,
    DFOptimalRegimeError,
    ErasureRelayParams,
    RateRegimeError,
    best_lower_bound,
    cf_optimized,
    cf_rate_at,
    cut_set,
    decode_forward,
    direct_transmission,
    improved_cut_set,
    new_rate_at,
    new_rate_optimized,
    partial_decode_forward,
    wz_description_rate,
)
from .general_bounds import (
    AugmentedRelayModel,
    ChainingSchedule,
    PrimitiveRelayModel,
    cf_general_rate,
    chained_rate,
    chaining_schedule,
    erasure_model,
    pdcf_bruteforce_erasure,
    pdcf_rate,
)
from .info_measures import (
    JointTable,
    Kernel,
    Pmf,
    binary_entropy,
    chain_joint,
    circ,
    conditional_entropy,
    conditional_mutual_information,
    entropy,
    mutual_information,
)
from .scalar_opt import SearchResult, SearchSpec, maximize

__version__ = "0.1.0"

__all__ = [
    "AugmentedRelayModel",
    "BoundReport",
    "CFRegimeError",
    "ChainLedger",
    "ChainSimConfig",
    "ChainSimOutcome",
    "ChainingSchedule",
    "DFOptimalRegimeError",
    "DegenerateDenominatorError",
    "ErasureRelayParams",
    "JointTable",
    "Kernel",
    "Pmf",
    "PrimitiveRelayModel",
    "RateRegimeError",
    "SearchResult",
    "SearchSpec",
    "ThresholdEstimate",
    "best_lower_bound",
    "binary_entropy",
    "cf_general_rate",
    "cf_optimized",
    "cf_rate_at",
    "chain_joint",
    "chained_rate",
    "chaining_schedule",
    "circ",
    "conditional_entropy",
    "conditional_mutual_information",
    "cut_set",
    "decode_forward",
    "direct_transmission",
    "entropy",
    "erasure_model",
    "estimate_threshold",
    "improved_cut_set",
    "maximize",
    "mutual_information",
    "new_rate_at",
    "new_rate_optimized",
    "partial_decode_forward",
    "pdcf_bruteforce_erasure",
    "pdcf_rate",
    "simulate_pair",
    "wz_description_rate",
]
