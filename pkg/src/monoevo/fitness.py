"""Penalty variants and the composite fitness functions.

Search targets monotone functions; the monotonicity violation count enters the
fitness as a negative term, and the spectral reward (nonlinearity plus the
fraction of spectrum positions NOT attaining the maximum) is added only once
the function is feasible. Feasible functions therefore always outrank
infeasible ones, and the integer part of a feasible fitness is exactly the
nonlinearity.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _kernels
from .boolfunc import MonotonicityReport, TruthTable

SCENARIOS = ("balanced", "imbalanced")
VARIANTS = ("fit1", "fit2", "fit3")
_VARIANT_CODE = {"fit1": 1, "fit2": 2, "fit3": 3}


@dataclass(frozen=True)
class FitnessReport:
    """Everything the composite fitness saw: the raw and normalized penalty,
    the balancedness deficit, and (for feasible functions only) the
    nonlinearity and the count of spectrum maxima."""

    scenario: str
    variant: str
    penalty_raw: int
    penalty_value: float
    bal_deficit: int
    nonlinearity: int | None
    max_vals_count: int | None
    fitness: float


def penalty_variant(report: MonotonicityReport, variant: str) -> float:
    """fit1: the raw count; fit2: count / max_possible; fit3: count /
    max_possible**2. All are 0 when max_possible is 0 (such functions cannot
    violate monotonicity)."""
    if variant not in _VARIANT_CODE:
        raise ValueError(f"unknown penalty variant {variant!r}")
    if report.violations == 0:
        return 0.0
    if variant == "fit1":
        return float(report.violations)
    if variant == "fit2":
        return report.violations / report.max_possible
    return report.violations / report.max_possible ** 2


def _evaluate(tt: TruthTable, scenario: str, variant: str) -> FitnessReport:
    balanced = scenario == "balanced"
    fitness, viol, maxp, weight, nl, maxvals = _kernels.evaluate_bits(
        tt.bits, tt.n, balanced, _VARIANT_CODE[variant])
    viol = int(viol)
    report = MonotonicityReport(viol, int(maxp))
    return FitnessReport(
        scenario=scenario,
        variant=variant,
        penalty_raw=viol,
        penalty_value=penalty_variant(report, variant),
        bal_deficit=abs(int(weight) - (tt.size >> 1)),
        nonlinearity=int(nl) if nl >= 0 else None,
        max_vals_count=int(maxvals) if maxvals >= 0 else None,
        fitness=float(fitness),
    )


def fitness_balanced(tt: TruthTable) -> FitnessReport:
    """Balanced scenario: -violations - bal_deficit, plus the spectral reward
    nl + (2**n - #max_vals)/2**n once both are zero."""
    return _evaluate(tt, "balanced", "fit1")


def fitness_imbalanced(tt: TruthTable, variant: str = "fit1") -> FitnessReport:
    """Imbalanced scenario: -penalty_variant, plus the spectral reward once the
    raw violation count is zero (feasibility is variant-independent)."""
    if variant not in _VARIANT_CODE:
        raise ValueError(f"unknown penalty variant {variant!r}")
    return _evaluate(tt, "imbalanced", variant)


def evaluate(tt: TruthTable, scenario: str, variant: str = "fit1") -> FitnessReport:
    """Dispatch on scenario; the balanced scenario always uses the raw count."""
    if scenario == "balanced":
        return fitness_balanced(tt)
    if scenario == "imbalanced":
        return fitness_imbalanced(tt, variant)
    raise ValueError(f"unknown scenario {scenario!r}")
