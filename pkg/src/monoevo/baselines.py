"""Exact analytical references: threshold/majority functions and monotone bounds.

The closed-form threshold nonlinearity and the two families of upper bounds on
the nonlinearity of monotone functions serve as oracles for the evolved results
and as rows of the reference table emitted by the CLI.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .boolfunc import TruthTable, index_popcounts


def threshold_table(n: int, d: int) -> TruthTable:
    """Truth table of the threshold function: 1 exactly when weight(x) >= d.

    d ranges over [1, n+1]; d = n+1 gives the all-zeros function, d = 1 the
    n-ary OR.
    """
    if not 1 <= d <= n + 1:
        raise ValueError(f"threshold d must be in [1, {n + 1}], got {d}")
    bits = (index_popcounts(n) >= d).astype(np.uint8)
    return TruthTable(n, bits)


def majority_threshold(n: int) -> int:
    """The d for which the threshold function is the majority function.

    Majority outputs 1 when strictly more than half of the inputs are set:
    d = (n+1)/2 for odd n, d = n/2 + 1 for even n.
    """
    return (n + 1) // 2 if n % 2 else n // 2 + 1


def majority_table(n: int) -> TruthTable:
    return threshold_table(n, majority_threshold(n))


def threshold_nonlinearity_exact(n: int, d: int) -> int:
    """Closed-form nonlinearity of the threshold function with parameters (n, d).

    Central threshold (2d = n+1):  2**(n-1) - C(n-1, (n-1)/2);
    2d > n+1:  sum_{k=d..n} C(n, k);  2d < n+1:  sum_{k=0..d-1} C(n, k).
    """
    if not 1 <= d <= n:
        raise ValueError(f"threshold d must be in [1, {n}], got {d}")
    if 2 * d == n + 1:
        return (1 << (n - 1)) - math.comb(n - 1, (n - 1) // 2)
    if 2 * d > n + 1:
        return sum(math.comb(n, k) for k in range(d, n + 1))
    return sum(math.comb(n, k) for k in range(d))


def threshold_symmetry_holds(n: int, d: int) -> bool:
    """Check that the nonlinearity profile is symmetric under d -> n - d + 1."""
    return threshold_nonlinearity_exact(n, d) == threshold_nonlinearity_exact(n, n - d + 1)


@dataclass(frozen=True)
class MonotoneBound:
    """Upper bound 2**(n-1) - sqrt(M)/2 on the nonlinearity of monotone functions.

    M = min(A, B, C) for even n and min(B, C) for odd n, with A, B, C the three
    exact integer quantities below. bound_floor is the largest integer
    nonlinearity consistent with the real-valued bound.
    """

    n: int
    a: int | None
    b: int
    c: int
    m: int
    bound: float
    bound_floor: int


def _bound_term_a(n: int) -> int:
    half = n // 2
    total = (1 << n) + ((1 << half) - 2) ** 2
    for j in range(1, (n + 3) // 4):  # strict j < n/4
        inner = (1 << half) - 2 * sum(math.comb(half, i) for i in range(j + 1))
        total += 2 * math.comb(half, j) * inner * inner
    return total


def _bound_term_b(n: int) -> int:
    best = None
    for k in range(1, n // 2 + 1):
        if (n + k) % 2:
            continue
        half = (n + k) // 2
        term = 1 << (n + k)
        for j in range((n + k) // 4 + 1, (n - k) // 2 + 1):
            inner = (1 << half) - 2 * sum(math.comb(half, i) for i in range(half - j + 1))
            term += math.comb((n - k) // 2, j) * inner * inner
        if best is None or term < best:
            best = term
    assert best is not None
    return best


def _bound_term_c(n: int) -> int:
    k = n // 2 if n % 2 == 0 else (n - 1) // 2
    return (2 * math.comb(n - 1, k)) ** 2


def monotone_upper_bound(n: int) -> MonotoneBound:
    """The M-based nonlinearity bound for monotone functions, exact integers inside."""
    if n < 2:
        raise ValueError(f"the bound needs n >= 2, got {n}")
    a = _bound_term_a(n) if n % 2 == 0 else None
    b = _bound_term_b(n)
    c = _bound_term_c(n)
    m = min(x for x in (a, b, c) if x is not None)
    bound = (1 << (n - 1)) - math.sqrt(m) / 2
    # floor(2^(n-1) - sqrt(m)/2) = 2^(n-1) - ceil(sqrt(m)/2), kept in exact integers
    ceil_half_sqrt = math.isqrt(m) // 2
    while 4 * ceil_half_sqrt * ceil_half_sqrt < m:
        ceil_half_sqrt += 1
    return MonotoneBound(n, a, b, c, m, bound, (1 << (n - 1)) - ceil_half_sqrt)


def simple_monotone_bound(n: int) -> int:
    """The parity-specific bounds 2**(n-1) - 2**((n-1)/2) (odd n >= 5) and
    2**(n-1) - 2**(n/2) (even n >= 10); outside those ranges the theorems do
    not apply."""
    if n % 2 == 1 and n >= 5:
        return (1 << (n - 1)) - (1 << ((n - 1) // 2))
    if n % 2 == 0 and n >= 10:
        return (1 << (n - 1)) - (1 << (n // 2))
    raise ValueError(f"simple monotone bound applies to odd n >= 5 or even n >= 10, got {n}")


def covering_radius_bound(n: int) -> float:
    """The unrestricted upper bound 2**(n-1) - 2**(n/2 - 1) for any Boolean function."""
    return (1 << (n - 1)) - 2.0 ** (n / 2 - 1)


# Best known nonlinearities from the literature, reported alongside the computed
# rows for context (not recomputed here).
KNOWN_BALANCED_NL = {5: 12, 6: 26, 7: 56, 8: 116, 9: 240, 10: 492, 11: 992, 12: 2010, 13: 4036, 14: 8120}
KNOWN_IMBALANCED_NL = {5: 12, 6: 28, 7: 56, 8: 120, 9: 242, 10: 496, 11: 996, 12: 2016, 13: 4040, 14: 8128}
KNOWN_GENERAL_BOUND = {5: 12, 6: 28, 7: 58, 8: 120, 9: 244, 10: 496, 11: 1000, 12: 2016, 13: 4050, 14: 8128}
