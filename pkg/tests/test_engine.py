import dataclasses

import numpy as np
import pytest

from monoevo import (EaConfig, TruthTable, derive_run_seed, run, run_batch,
                     parse_gp_genome, gp_decode)
from monoevo.engine import tournament_indices


def small_config(**overrides):
    base = dict(n=4, encoding="TT", scenario="imbalanced", variant="fit1",
                population_size=20, evaluation_budget=2_000, seed=99)
    base.update(overrides)
    return EaConfig(**base)


def record_key(record):
    """Everything that must be identical across re-executions (not wall time)."""
    return (record.config, record.best_fitness, record.best_nonlinearity,
            record.best_genome, record.evaluations_used, tuple(record.trajectory))


# --- config validation -----------------------------------------------------------

def test_config_validation():
    with pytest.raises(ValueError):
        small_config(population_size=2).validate()
    with pytest.raises(ValueError):
        small_config(mutation_probability=1.5).validate()
    with pytest.raises(ValueError):
        small_config(encoding="LGP").validate()
    with pytest.raises(ValueError):
        small_config(scenario="both").validate()
    with pytest.raises(ValueError):
        small_config(scenario="balanced", variant="fit2").validate()
    small_config(scenario="balanced", variant="fit1").validate()


def test_invalid_config_rejected_before_work():
    with pytest.raises(ValueError):
        run(small_config(population_size=1))


# --- basic run behavior -----------------------------------------------------------

def test_zero_budget_runs_initialization_only():
    record = run(small_config(evaluation_budget=0))
    assert record.evaluations_used == 20
    assert record.trajectory[0][0] == 20
    assert record.best_fitness == record.trajectory[-1][1]


def test_budget_accounting_and_trajectory():
    record = run(small_config())
    assert record.evaluations_used == 2_000
    steps = [e for e, _ in record.trajectory]
    values = [f for _, f in record.trajectory]
    assert steps == sorted(steps)
    assert values == sorted(values)  # best-so-far never decreases
    assert record.best_fitness == values[-1]
    assert record.best_report.fitness == record.best_fitness


def test_run_finds_feasible_quickly_at_n4():
    record = run(small_config(evaluation_budget=20_000))
    assert record.best_nonlinearity is not None
    assert record.best_fitness >= record.best_nonlinearity


def test_best_genome_serialization_round_trip():
    record = run(small_config(evaluation_budget=3_000))
    table = TruthTable.from_text(record.best_genome)
    assert table.n == 4
    gp_record = run(small_config(encoding="GP", evaluation_budget=3_000))
    decoded = gp_decode(parse_gp_genome(gp_record.best_genome, n=4))
    assert decoded.n == 4


def test_determinism_same_seed():
    a = run(small_config())
    b = run(small_config())
    assert record_key(a) == record_key(b)


def test_different_seeds_differ():
    a = run(small_config(seed=1))
    b = run(small_config(seed=2))
    assert record_key(a) != record_key(b)


@pytest.mark.parametrize("encoding", ["TT", "TTw", "GP"])
def test_all_encodings_run(encoding):
    record = run(small_config(encoding=encoding, evaluation_budget=1_500))
    assert record.evaluations_used == 1_500
    assert record.config.encoding == encoding


def test_ttw_balanced_run_yields_balanced_best():
    record = run(small_config(encoding="TTw", scenario="balanced",
                              evaluation_budget=3_000))
    table = TruthTable.from_text(record.best_genome)
    assert table.weight == 8


def test_gp_respects_depth_through_run():
    from monoevo.encodings import tree_depth
    record = run(small_config(encoding="GP", evaluation_budget=2_000,
                              max_tree_depth=5))
    genome = parse_gp_genome(record.best_genome, n=4)
    assert tree_depth(genome.root) <= 5


# --- batches ----------------------------------------------------------------------

def test_derive_run_seed_is_stable_and_spread():
    seeds = [derive_run_seed(123, i) for i in range(100)]
    assert seeds == [derive_run_seed(123, i) for i in range(100)]
    assert len(set(seeds)) == 100
    assert derive_run_seed(124, 0) != derive_run_seed(123, 0)


def test_run_batch_matches_individual_runs():
    cfg = small_config(evaluation_budget=1_000)
    batch = run_batch(cfg, runs=3)
    for i, record in enumerate(batch):
        single = run(dataclasses.replace(cfg, seed=derive_run_seed(cfg.seed, i)))
        assert record_key(single) == record_key(record)


def test_run_batch_parallelism_invariant():
    cfg = small_config(evaluation_budget=1_500)
    serial = run_batch(cfg, runs=2, parallelism=1)
    parallel = run_batch(cfg, runs=2, parallelism=2)
    assert [record_key(r) for r in serial] == [record_key(r) for r in parallel]


def test_run_batch_rejects_zero_runs():
    with pytest.raises(ValueError):
        run_batch(small_config(), runs=0)


# --- tournament -------------------------------------------------------------------

def test_tournament_indices_distinct_and_uniform():
    rng = np.random.default_rng(0)
    pop = 15
    trials = 30_000
    counts = np.zeros(pop)
    for _ in range(trials):
        t = tournament_indices(rng, pop)
        assert len(set(t)) == 3
        counts[list(t)] += 1
    expected = trials * 3 / pop
    sigma = np.sqrt(trials * (3 / pop) * (1 - 3 / pop))
    assert np.all(np.abs(counts - expected) <= 4 * sigma)
