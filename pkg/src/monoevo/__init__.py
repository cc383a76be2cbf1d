"""Evolve monotone Boolean functions with high nonlinearity.

Core pieces: truth-table property computations (Walsh-Hadamard spectrum,
nonlinearity, balancedness, monotonicity), exact threshold/majority baselines
and monotone nonlinearity bounds, three genome encodings (TT, TTw, GP), the
penalized fitness functions, and a steady-state evolutionary engine with a
batch experiment harness.
"""

from .baselines import (KNOWN_BALANCED_NL, KNOWN_GENERAL_BOUND,
                        KNOWN_IMBALANCED_NL, MonotoneBound,
                        covering_radius_bound, majority_table,
                        majority_threshold, monotone_upper_bound,
                        simple_monotone_bound, threshold_nonlinearity_exact,
                        threshold_symmetry_holds, threshold_table)
from .boolfunc import (MonotonicityReport, TruthTable, WalshSpectrum,
                       balancedness_deficit, is_balanced, monotonicity_report,
                       nonlinearity, walsh_transform)
from .encodings import (EncodingOps, GpGenome, GpNode, gp_crossover, gp_decode,
                        gp_mutate, gp_random, parse_gp_genome, to_prefix,
                        tt_crossover, tt_mutate, tt_random, ttw_crossover,
                        ttw_mutate, ttw_random)
from .engine import EaConfig, RunRecord, derive_run_seed, run, run_batch
from .fitness import (FitnessReport, evaluate, fitness_balanced,
                      fitness_imbalanced, penalty_variant)

__all__ = [
    "EaConfig", "EncodingOps", "FitnessReport", "GpGenome", "GpNode",
    "KNOWN_BALANCED_NL", "KNOWN_GENERAL_BOUND", "KNOWN_IMBALANCED_NL",
    "MonotoneBound", "MonotonicityReport", "RunRecord", "TruthTable",
    "WalshSpectrum", "balancedness_deficit", "covering_radius_bound",
    "derive_run_seed", "evaluate", "fitness_balanced", "fitness_imbalanced",
    "gp_crossover", "gp_decode", "gp_mutate", "gp_random", "is_balanced",
    "majority_table", "majority_threshold", "monotone_upper_bound",
    "monotonicity_report", "nonlinearity", "parse_gp_genome",
    "penalty_variant", "run", "run_batch", "simple_monotone_bound",
    "threshold_nonlinearity_exact", "threshold_symmetry_holds",
    "threshold_table", "to_prefix", "tt_crossover", "tt_mutate", "tt_random",
    "ttw_crossover", "ttw_mutate", "ttw_random", "walsh_transform",
]

__version__ = "0.1.0"
