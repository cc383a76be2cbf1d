import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from monoevo import (TruthTable, balancedness_deficit, is_balanced,
                     majority_table, monotonicity_report, nonlinearity,
                     threshold_table, walsh_transform)
from monoevo.boolfunc import index_popcounts, monotone_counts_batch

from oracles import (naive_walsh, naive_walsh_batch, is_monotone_pairs,
                     permute_variables, violations_pairs)


@st.composite
def truth_tables(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    value = draw(st.integers(0, (1 << (1 << n)) - 1))
    bits = np.array([(value >> i) & 1 for i in range(1 << n)], dtype=np.uint8)
    return TruthTable(n, bits)


# --- construction and the text format ---------------------------------------

def test_table_validation():
    with pytest.raises(ValueError):
        TruthTable(0, np.zeros(1, np.uint8))
    with pytest.raises(ValueError):
        TruthTable(3, np.zeros(7, np.uint8))
    with pytest.raises(ValueError):
        TruthTable(2, np.array([0, 1, 2, 0]))


def test_text_round_trip():
    tt = TruthTable(3, np.array([0, 1, 1, 0, 1, 0, 0, 1], np.uint8))
    assert TruthTable.from_text(tt.to_text()) == tt
    with pytest.raises(ValueError):
        TruthTable.from_text("3\n0101")
    with pytest.raises(ValueError):
        TruthTable.from_text("x\n01010101")
    with pytest.raises(ValueError):
        TruthTable.from_text("3\n0101010a")


# --- Walsh transform ---------------------------------------------------------

def test_walsh_constant_zero():
    spec = walsh_transform(TruthTable(3, np.zeros(8, np.uint8)))
    assert spec.coeffs.tolist() == [8, 0, 0, 0, 0, 0, 0, 0]


def test_walsh_projection():
    # f(x) = x_1 under the LSB-first convention
    tt = TruthTable(2, np.array([0, 1, 0, 1], np.uint8))
    spec = walsh_transform(tt)
    assert np.abs(spec.coeffs).tolist() == [0, 4, 0, 0]
    assert spec.coeffs.tolist() == naive_walsh(tt.bits).tolist()


def test_walsh_matches_naive_random_n6():
    rng = np.random.default_rng(7)
    for _ in range(20):
        bits = rng.integers(0, 2, 64, dtype=np.uint8)
        fast = walsh_transform(TruthTable(6, bits)).coeffs
        assert fast.tolist() == naive_walsh(bits).tolist()


def test_walsh_exhaustive_n3():
    for value in range(256):
        bits = np.array([(value >> i) & 1 for i in range(8)], dtype=np.uint8)
        fast = walsh_transform(TruthTable(3, bits)).coeffs
        assert fast.tolist() == naive_walsh(bits).tolist()


@given(truth_tables())
@settings(max_examples=60, deadline=None)
def test_parseval_and_parity(tt):
    coeffs = walsh_transform(tt).coeffs.astype(np.int64)
    assert int((coeffs ** 2).sum()) == 1 << (2 * tt.n)
    assert np.all(coeffs % 2 == (1 << tt.n) % 2)


# --- nonlinearity ------------------------------------------------------------

def test_nonlinearity_constant():
    for n in (1, 3, 5):
        assert nonlinearity(walsh_transform(TruthTable(n, np.zeros(1 << n, np.uint8)))) == 0


@pytest.mark.parametrize("n, expected", [(5, 10), (7, 44)])
def test_nonlinearity_majority(n, expected):
    assert nonlinearity(walsh_transform(majority_table(n))) == expected


@given(truth_tables(max_n=7))
@settings(max_examples=40, deadline=None)
def test_nonlinearity_invariances(tt):
    rng = np.random.default_rng(tt.weight + tt.n)
    nl = nonlinearity(walsh_transform(tt))
    assert 0 <= nl <= (1 << (tt.n - 1)) - 2 ** (tt.n / 2 - 1)
    complemented = TruthTable(tt.n, 1 - tt.bits)
    assert nonlinearity(walsh_transform(complemented)) == nl
    perm = rng.permutation(tt.n)
    permuted = TruthTable(tt.n, permute_variables(tt.bits, tt.n, perm))
    assert nonlinearity(walsh_transform(permuted)) == nl


# --- balancedness ------------------------------------------------------------

def test_balancedness():
    proj = TruthTable(4, np.tile(np.array([0, 1], np.uint8), 8))
    assert is_balanced(walsh_transform(proj))
    assert balancedness_deficit(proj) == 0
    ones = TruthTable(4, np.ones(16, np.uint8))
    assert not is_balanced(walsh_transform(ones))
    assert balancedness_deficit(ones) == 8
    assert balancedness_deficit(majority_table(6)) == 10  # 32 - (15 + 6 + 1)


@given(truth_tables())
@settings(max_examples=40, deadline=None)
def test_balanced_iff_w0_zero(tt):
    assert is_balanced(walsh_transform(tt)) == (tt.weight == tt.size // 2)


# --- monotonicity ------------------------------------------------------------

def test_threshold_functions_are_monotone():
    for n in range(1, 9):
        for d in range(1, n + 2):
            assert monotonicity_report(threshold_table(n, d)).violations == 0


def test_not_x1_counts():
    tt = TruthTable(2, np.array([1, 0, 1, 0], np.uint8))
    rep = monotonicity_report(tt)
    assert (rep.violations, rep.max_possible) == (2, 3)
    assert not rep.is_monotone


def test_monotonicity_exhaustive_n_le_3():
    for n in (1, 2, 3):
        for value in range(1 << (1 << n)):
            bits = np.array([(value >> i) & 1 for i in range(1 << n)], dtype=np.uint8)
            rep = monotonicity_report(TruthTable(n, bits))
            assert rep.is_monotone == is_monotone_pairs(bits, n)
            assert rep.violations == violations_pairs(bits, n)


@given(truth_tables(max_n=8))
@settings(max_examples=40, deadline=None)
def test_monotonicity_matches_pair_count(tt):
    rep = monotonicity_report(tt)
    assert rep.violations == violations_pairs(tt.bits, tt.n)
    assert 0 <= rep.violations <= rep.max_possible
    expected_maxp = sum(tt.n - bin(u).count("1") for u in range(tt.size) if tt.bits[u])
    assert rep.max_possible == expected_maxp


@given(truth_tables(max_n=8))
@settings(max_examples=40, deadline=None)
def test_monotonicity_permutation_invariant(tt):
    rng = np.random.default_rng(17)
    perm = rng.permutation(tt.n)
    permuted = TruthTable(tt.n, permute_variables(tt.bits, tt.n, perm))
    assert monotonicity_report(permuted).violations == monotonicity_report(tt).violations


@given(truth_tables(max_n=8), st.integers(0, 10 ** 6))
@settings(max_examples=40, deadline=None)
def test_single_flip_changes_violations_by_at_most_n(tt, pos_seed):
    pos = pos_seed % tt.size
    flipped_bits = tt.bits.copy()
    flipped_bits[pos] ^= 1
    before = monotonicity_report(tt).violations
    after = monotonicity_report(TruthTable(tt.n, flipped_bits)).violations
    assert abs(after - before) <= tt.n


# --- batch helpers -----------------------------------------------------------

def test_index_popcounts():
    counts = index_popcounts(4)
    assert counts.tolist() == [bin(i).count("1") for i in range(16)]


def test_monotone_counts_batch_matches_scalar():
    rng = np.random.default_rng(3)
    tables = rng.integers(0, 2, (50, 64), dtype=np.uint8)
    viol, maxp = monotone_counts_batch(tables, 6)
    for row, v, m in zip(tables, viol, maxp):
        rep = monotonicity_report(TruthTable(6, row))
        assert (rep.violations, rep.max_possible) == (v, m)


def test_naive_batch_matches_naive():
    rng = np.random.default_rng(5)
    tables = rng.integers(0, 2, (10, 32), dtype=np.uint8)
    batch = naive_walsh_batch(tables, 5)
    for row, spec in zip(tables, batch):
        assert spec.tolist() == naive_walsh(row).tolist()
