"""Boolean functions as truth tables: spectra, nonlinearity, balancedness, monotonicity.

Index convention (used everywhere in this package): the truth table entry at
index i is f(x) for the input x whose integer encoding is i, where bit j of i
(least significant bit first) is the value of variable x_{j+1}. This is the
lexicographic order of input vectors once x_1 is taken as the fastest-varying
coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels

MAX_VARIABLES = 20


def _as_bit_array(bits) -> np.ndarray:
    arr = np.asarray(bits, dtype=np.uint8)
    if arr.ndim != 1:
        raise ValueError("truth table bits must be one-dimensional")
    if arr.size and arr.max() > 1:
        raise ValueError("truth table bits must be 0/1")
    return arr


@dataclass(frozen=True, eq=False)
class TruthTable:
    """Output vector of an n-variable Boolean function, length 2**n."""

    n: int
    bits: np.ndarray

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VARIABLES:
            raise ValueError(f"n must be in [1, {MAX_VARIABLES}], got {self.n}")
        object.__setattr__(self, "bits", _as_bit_array(self.bits))
        if self.bits.size != 1 << self.n:
            raise ValueError(
                f"expected {1 << self.n} truth table entries, got {self.bits.size}"
            )

    def __eq__(self, other):
        if not isinstance(other, TruthTable):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.bits, other.bits)

    @property
    def size(self) -> int:
        return 1 << self.n

    @property
    def weight(self) -> int:
        """Hamming weight of the output vector."""
        return int(self.bits.sum())

    @classmethod
    def from_text(cls, text: str) -> "TruthTable":
        """Parse the two-line text format: first line n, second line 2**n '0'/'1' chars."""
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if len(lines) != 2:
            raise ValueError("expected two non-empty lines: n and the bit string")
        try:
            n = int(lines[0])
        except ValueError as exc:
            raise ValueError(f"first line is not an integer: {lines[0]!r}") from exc
        row = lines[1]
        if set(row) - {"0", "1"}:
            raise ValueError("bit string may only contain '0' and '1'")
        bits = np.frombuffer(row.encode(), dtype=np.uint8) - ord("0")
        return cls(n, bits)

    def to_text(self) -> str:
        return f"{self.n}\n{''.join('1' if b else '0' for b in self.bits)}\n"


@dataclass(frozen=True, eq=False)
class WalshSpectrum:
    """Walsh-Hadamard coefficients W(a), indexed by the mask a (same convention)."""

    n: int
    coeffs: np.ndarray

    def __eq__(self, other):
        if not isinstance(other, WalshSpectrum):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.coeffs, other.coeffs)

    @property
    def max_abs(self) -> int:
        return int(np.abs(self.coeffs).max())

    @property
    def max_abs_count(self) -> int:
        """Number of spectrum positions attaining max |W(a)|."""
        return int(np.count_nonzero(np.abs(self.coeffs) == self.max_abs))


@dataclass(frozen=True)
class MonotonicityReport:
    """Counts from the upward one-bit-flip scan over the function's support.

    violations: pairs (u, v) with f(u) = 1, v = u with a single 0-bit set to 1,
    and f(v) = 0. max_possible: the total number of candidate pairs, i.e. the
    sum of (n - weight(u)) over the support.
    """

    violations: int
    max_possible: int

    @property
    def is_monotone(self) -> bool:
        return self.violations == 0


def walsh_transform(tt: TruthTable) -> WalshSpectrum:
    """Walsh-Hadamard spectrum via the in-place butterfly, O(n * 2**n)."""
    return WalshSpectrum(tt.n, _kernels.spectrum_of(tt.bits))


def nonlinearity(spec: WalshSpectrum) -> int:
    """Distance to the nearest affine function: 2**(n-1) - max|W|/2."""
    return (1 << (spec.n - 1)) - spec.max_abs // 2


def is_balanced(spec: WalshSpectrum) -> bool:
    """A function is balanced exactly when W(0) = 0."""
    return int(spec.coeffs[0]) == 0


def balancedness_deficit(tt: TruthTable) -> int:
    """Number of output bits that must change to reach weight 2**(n-1)."""
    return abs(tt.weight - (tt.size >> 1))


def monotonicity_report(tt: TruthTable) -> MonotonicityReport:
    viol, maxp, _ = _kernels.monotone_counts(tt.bits, tt.n)
    return MonotonicityReport(int(viol), int(maxp))


@lru_cache(maxsize=None)
def index_popcounts(n: int) -> np.ndarray:
    """Hamming weight of every index 0 .. 2**n - 1 (read-only uint8 array)."""
    idx = np.arange(1 << n, dtype=np.uint32)
    counts = np.zeros(1 << n, dtype=np.uint8)
    for j in range(n):
        counts += ((idx >> j) & 1).astype(np.uint8)
    counts.setflags(write=False)
    return counts


def monotone_counts_batch(tables: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized (violations, max_possible) for a (m, 2**n) batch of truth tables."""
    tables = np.asarray(tables, dtype=np.uint8)
    m, size = tables.shape
    if size != 1 << n:
        raise ValueError(f"expected row length {1 << n}, got {size}")
    viol = np.zeros(m, dtype=np.int64)
    for j in range(n):
        step = 1 << j
        blocks = tables.reshape(m, -1, 2 * step)
        low = blocks[:, :, :step]
        high = blocks[:, :, step:]
        viol += np.sum(low & (1 - high), axis=(1, 2), dtype=np.int64)
    weights = tables.sum(axis=1, dtype=np.int64)
    support_popcount = tables @ index_popcounts(n).astype(np.int64)
    maxp = n * weights - support_popcount
    return viol, maxp
