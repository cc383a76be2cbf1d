import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from monoevo import (MonotonicityReport, TruthTable, fitness_balanced,
                     fitness_imbalanced, gp_decode, gp_random, majority_table,
                     penalty_variant)
from monoevo.fitness import evaluate

from oracles import naive_walsh

NOT_X1 = TruthTable(2, np.array([1, 0, 1, 0], np.uint8))


@st.composite
def truth_tables(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    value = draw(st.integers(0, (1 << (1 << n)) - 1))
    bits = np.array([(value >> i) & 1 for i in range(1 << n)], dtype=np.uint8)
    return TruthTable(n, bits)


# --- penalty variants -----------------------------------------------------------

def test_variants_zero_when_monotone():
    rep = MonotonicityReport(0, 40)
    for v in ("fit1", "fit2", "fit3"):
        assert penalty_variant(rep, v) == 0.0
    # max_possible 0 forces violations 0; still defined as 0
    empty = MonotonicityReport(0, 0)
    for v in ("fit1", "fit2", "fit3"):
        assert penalty_variant(empty, v) == 0.0


def test_variants_not_x1():
    rep = MonotonicityReport(2, 3)
    assert penalty_variant(rep, "fit1") == 2.0
    assert penalty_variant(rep, "fit2") == pytest.approx(2 / 3)
    assert penalty_variant(rep, "fit3") == pytest.approx(2 / 9)
    with pytest.raises(ValueError):
        penalty_variant(rep, "fit4")


# --- balanced scenario ------------------------------------------------------------

def test_balanced_majority5():
    # MAJ_5 is balanced and monotone with nl 10; the naive spectrum gives the
    # number of maximal positions, fixing the fractional reward exactly
    maj5 = majority_table(5)
    spectrum = naive_walsh(maj5.bits)
    count = int((np.abs(spectrum) == np.abs(spectrum).max()).sum())
    assert count == 6
    rep = fitness_balanced(maj5)
    assert rep.nonlinearity == 10
    assert rep.max_vals_count == count
    assert rep.fitness == 10 + (32 - count) / 32 == 10.8125
    assert 10 < rep.fitness < 11


def test_balanced_all_zeros_n5():
    rep = fitness_balanced(TruthTable(5, np.zeros(32, np.uint8)))
    assert rep.penalty_raw == 0
    assert rep.bal_deficit == 16
    assert rep.fitness == -16
    assert rep.nonlinearity is None and rep.max_vals_count is None


def test_balanced_not_x1():
    rep = fitness_balanced(NOT_X1)
    assert rep.penalty_raw == 2
    assert rep.bal_deficit == 0
    assert rep.fitness == -2
    assert rep.nonlinearity is None


# --- imbalanced scenario ------------------------------------------------------------

def test_imbalanced_all_ones_n4():
    rep = fitness_imbalanced(TruthTable(4, np.ones(16, np.uint8)), "fit1")
    assert rep.penalty_raw == 0
    assert rep.nonlinearity == 0
    assert rep.max_vals_count == 1  # W(0) = -16 is the unique extremum
    assert rep.fitness == 0.9375


def test_imbalanced_majority7():
    maj7 = majority_table(7)
    spectrum = naive_walsh(maj7.bits)
    count = int((np.abs(spectrum) == np.abs(spectrum).max()).sum())
    assert count == 8
    rep = fitness_imbalanced(maj7, "fit1")
    assert rep.nonlinearity == 44
    assert rep.fitness == 44 + (128 - count) / 128


def test_imbalanced_not_x1_fit3():
    rep = fitness_imbalanced(NOT_X1, "fit3")
    assert rep.fitness == pytest.approx(-2 / 9)
    assert rep.penalty_value == pytest.approx(2 / 9)
    assert rep.nonlinearity is None


def test_unknown_names_rejected():
    with pytest.raises(ValueError):
        fitness_imbalanced(NOT_X1, "fit0")
    with pytest.raises(ValueError):
        evaluate(NOT_X1, "semi-balanced")


# --- structural invariants -----------------------------------------------------------

@given(truth_tables())
@settings(max_examples=80, deadline=None)
def test_feasible_scores_in_nl_window_infeasible_below_zero(tt):
    for scenario in ("balanced", "imbalanced"):
        for variant in ("fit1", "fit2", "fit3") if scenario == "imbalanced" else ("fit1",):
            rep = evaluate(tt, scenario, variant)
            feasible = rep.penalty_raw == 0 and (
                scenario == "imbalanced" or rep.bal_deficit == 0)
            if feasible:
                assert rep.nonlinearity is not None
                assert rep.nonlinearity <= rep.fitness < rep.nonlinearity + 1
                assert math.floor(rep.fitness) == rep.nonlinearity
                assert 1 <= rep.max_vals_count <= tt.size
            else:
                assert rep.fitness < 0
                assert rep.nonlinearity is None and rep.max_vals_count is None


@given(truth_tables())
@settings(max_examples=50, deadline=None)
def test_variants_agree_on_feasibility_and_sign(tt):
    reps = {v: fitness_imbalanced(tt, v) for v in ("fit1", "fit2", "fit3")}
    signs = {v: reps[v].fitness >= 0 for v in reps}
    assert len(set(signs.values())) == 1
    # feasible functions are scored identically across variants
    if reps["fit1"].penalty_raw == 0:
        assert reps["fit1"].fitness == reps["fit2"].fitness == reps["fit3"].fitness


def test_variant_ranking_matches_design():
    # same max_possible: all variants rank identically; different max_possible:
    # fit2/fit3 may disagree with fit1 (this is the point of the normalization)
    a = MonotonicityReport(4, 20)
    b = MonotonicityReport(6, 20)
    for v in ("fit1", "fit2", "fit3"):
        assert penalty_variant(a, v) < penalty_variant(b, v)
    c = MonotonicityReport(4, 10)   # fewer possible violations
    d = MonotonicityReport(5, 40)
    assert penalty_variant(c, "fit1") < penalty_variant(d, "fit1")
    assert penalty_variant(c, "fit2") > penalty_variant(d, "fit2")


@given(st.integers(0, 10 ** 9), st.integers(2, 6))
@settings(max_examples=40, deadline=None)
def test_fitness_pure_function_of_decoded_table(seed, n):
    rng = np.random.default_rng(seed)
    genome = gp_random(n, rng)
    table = gp_decode(genome)
    reread = TruthTable.from_text(table.to_text())
    for scenario, variant in (("balanced", "fit1"), ("imbalanced", "fit2")):
        assert evaluate(table, scenario, variant) == evaluate(reread, scenario, variant)
