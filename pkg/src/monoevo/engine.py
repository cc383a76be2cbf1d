"""Steady-state evolutionary algorithm with 3-tournament elimination.

Each iteration draws three distinct individuals, eliminates the worst of the
three, crosses over the two survivors, mutates the child with a fixed
probability, and evaluates it into the vacated slot. Runs are deterministic
given (config, seed); batches derive per-run seeds from the base seed through
numpy's SeedSequence spawn keys, so results do not depend on the degree of
parallelism.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import _kernels
from .encodings import GP_DEFAULT_MAX_DEPTH, EncodingOps
from .fitness import _VARIANT_CODE, SCENARIOS, VARIANTS, FitnessReport, evaluate


@dataclass(frozen=True)
class EaConfig:
    n: int
    encoding: str
    scenario: str
    variant: str = "fit1"
    population_size: int = 500
    evaluation_budget: int = 1_000_000
    mutation_probability: float = 0.5
    seed: int = 0
    max_tree_depth: int = GP_DEFAULT_MAX_DEPTH

    def validate(self) -> None:
        if not 1 <= self.n <= 20:
            raise ValueError(f"n must be in [1, 20], got {self.n}")
        if self.encoding.lower() not in ("tt", "ttw", "gp"):
            raise ValueError(f"unknown encoding {self.encoding!r}")
        if self.scenario not in SCENARIOS:
            raise ValueError(f"unknown scenario {self.scenario!r}")
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.scenario == "balanced" and self.variant != "fit1":
            raise ValueError("the balanced scenario uses the raw penalty (fit1) only")
        if self.population_size < 3:
            raise ValueError("population_size must be at least 3")
        if self.evaluation_budget < 0:
            raise ValueError("evaluation_budget must be nonnegative")
        if not 0.0 <= self.mutation_probability <= 1.0:
            raise ValueError("mutation_probability must be in [0, 1]")
        if self.max_tree_depth < 2:
            raise ValueError("max_tree_depth must be at least 2")


@dataclass
class RunRecord:
    config: EaConfig
    best_fitness: float
    best_nonlinearity: int | None
    best_genome: str
    genome_format: str
    best_report: FitnessReport
    evaluations_used: int
    trajectory: list = field(default_factory=list)  # (evaluations, best-so-far)
    wall_time: float = 0.0


def tournament_indices(rng: np.random.Generator, population_size: int) -> tuple:
    """Three distinct population indices, uniformly."""
    while True:
        a = int(rng.integers(0, population_size))
        b = int(rng.integers(0, population_size))
        c = int(rng.integers(0, population_size))
        if a != b and a != c and b != c:
            return a, b, c


def run(config: EaConfig) -> RunRecord:
    """Execute one run; deterministic given the config (including its seed)."""
    config.validate()
    started = time.perf_counter()
    rng = np.random.default_rng(config.seed)
    ops = EncodingOps(config.encoding, config.n, config.max_tree_depth)
    balanced = config.scenario == "balanced"
    variant_code = _VARIANT_CODE[config.variant]
    n = config.n
    eval_bits = _kernels.evaluate_bits

    pop_size = config.population_size
    population = [ops.random(rng) for _ in range(pop_size)]
    fit = [0.0] * pop_size
    decode_bits = ops.decode_bits if ops.encoding == "GP" else None
    best_fit = -np.inf
    best_genome = None
    for i in range(pop_size):
        bits = decode_bits(population[i]) if decode_bits else population[i]
        f = eval_bits(bits, n, balanced, variant_code)[0]
        fit[i] = f
        if f > best_fit:
            best_fit = f
            best_genome = population[i]
    evaluations = pop_size
    trajectory = [(evaluations, best_fit)]

    p_mut = config.mutation_probability
    budget = config.evaluation_budget
    crossover = ops.crossover
    mutate = ops.mutate
    pick = tournament_indices
    while evaluations < budget:
        a, b, c = pick(rng, pop_size)
        worst = a
        if fit[b] < fit[worst] or (fit[b] == fit[worst] and b < worst):
            worst = b
        if fit[c] < fit[worst] or (fit[c] == fit[worst] and c < worst):
            worst = c
        first, second = (k for k in (a, b, c) if k != worst)
        if rng.random() < 0.5:
            first, second = second, first
        child = crossover(population[first], population[second], rng)
        if rng.random() < p_mut:
            child = mutate(child, rng)
        bits = decode_bits(child) if decode_bits else child
        f = eval_bits(bits, n, balanced, variant_code)[0]
        evaluations += 1
        population[worst] = child
        fit[worst] = f
        if f > best_fit:
            best_fit = f
            best_genome = child
            trajectory.append((evaluations, f))

    report = evaluate(ops.decode(best_genome), config.scenario, config.variant)
    return RunRecord(
        config=config,
        best_fitness=float(best_fit),
        best_nonlinearity=report.nonlinearity,
        best_genome=ops.serialize(best_genome),
        genome_format=ops.genome_format,
        best_report=report,
        evaluations_used=evaluations,
        trajectory=trajectory,
        wall_time=time.perf_counter() - started,
    )


def derive_run_seed(base_seed: int, index: int) -> int:
    """Per-run seed: first 64-bit word of SeedSequence(base_seed, spawn_key=(index,))."""
    ss = np.random.SeedSequence(entropy=base_seed, spawn_key=(index,))
    return int(ss.generate_state(1, np.uint64)[0])


def batch_configs(config: EaConfig, runs: int) -> list[EaConfig]:
    return [replace(config, seed=derive_run_seed(config.seed, i)) for i in range(runs)]


def run_batch(config: EaConfig, runs: int, parallelism: int = 1) -> list[RunRecord]:
    """Independent runs with derived seeds; parallelism only affects wall time."""
    if runs < 1:
        raise ValueError("runs must be at least 1")
    configs = batch_configs(config, runs)
    if parallelism <= 1:
        return [run(c) for c in configs]
    with ProcessPoolExecutor(max_workers=parallelism) as pool:
        return list(pool.map(run, configs))
