"""Experiment orchestration: config files, batch execution, CSV/JSON artifacts,
the fixed-weight penalty sampler, and the analytical reference table.

A run config is a YAML file with top-level keys and a list of cells:

    seed: 42
    runs: 30
    budget: 1000000
    parallelism: 2
    population_size: 500
    cells:
      - {n: 5, encoding: TT, scenario: imbalanced, variant: fit1}
      - {n: 6, encoding: TT, scenario: balanced}

Artifacts written to the output directory: runs.csv (one row per run, flushed
as each run completes), summary.csv (per-cell aggregates), best_matrix.csv
(best nonlinearity per cell and size, "-" where no run found a monotone
function), and details/*.json (trajectory and best genome per run).
"""

from __future__ import annotations

import csv
import json
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np
import yaml

from . import baselines
from .boolfunc import (TruthTable, balancedness_deficit, monotone_counts_batch,
                       monotonicity_report, nonlinearity, walsh_transform)
from .encodings import parse_gp_genome, gp_decode
from .engine import EaConfig, RunRecord, batch_configs, run
from .fitness import VARIANTS, fitness_balanced, fitness_imbalanced


class ExperimentConfigError(ValueError):
    """Raised for unusable experiment configuration files."""


@dataclass(frozen=True)
class ExperimentCell:
    n: int
    encoding: str
    scenario: str
    variant: str = "fit1"

    def label(self) -> str:
        if self.scenario == "balanced":
            return f"bal: {self.encoding}"
        return f"imb: {self.encoding}, {self.variant}"

    def key(self) -> str:
        return f"n{self.n}_{self.encoding}_{self.scenario}_{self.variant}"


@dataclass
class ExperimentConfig:
    cells: list[ExperimentCell] = field(default_factory=list)
    runs: int = 30
    budget: int = 1_000_000
    seed: int = 0
    parallelism: int = 1
    population_size: int = 500
    mutation_probability: float = 0.5
    max_tree_depth: int = 8

    def ea_config(self, cell: ExperimentCell) -> EaConfig:
        cfg = EaConfig(
            n=cell.n,
            encoding=cell.encoding,
            scenario=cell.scenario,
            variant=cell.variant,
            population_size=self.population_size,
            evaluation_budget=self.budget,
            mutation_probability=self.mutation_probability,
            seed=self.seed,
            max_tree_depth=self.max_tree_depth,
        )
        cfg.validate()
        return cfg


def load_experiment_config(path) -> ExperimentConfig:
    try:
        raw = yaml.safe_load(Path(path).read_text())
    except (OSError, yaml.YAMLError) as exc:
        raise ExperimentConfigError(f"cannot read config {path}: {exc}") from exc
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise ExperimentConfigError("config must be a mapping")
    known = {"cells", "runs", "budget", "seed", "parallelism", "population_size",
             "mutation_probability", "max_tree_depth"}
    unknown = set(raw) - known
    if unknown:
        raise ExperimentConfigError(f"unknown config keys: {sorted(unknown)}")
    cells = []
    for entry in raw.get("cells", []) or []:
        if not isinstance(entry, dict) or "n" not in entry or "encoding" not in entry \
                or "scenario" not in entry:
            raise ExperimentConfigError(
                f"each cell needs n, encoding, scenario (and optional variant): {entry}")
        extra = set(entry) - {"n", "encoding", "scenario", "variant"}
        if extra:
            raise ExperimentConfigError(f"unknown cell keys: {sorted(extra)}")
        cells.append(ExperimentCell(int(entry["n"]), str(entry["encoding"]),
                                    str(entry["scenario"]),
                                    str(entry.get("variant", "fit1"))))
    cfg = ExperimentConfig(cells=cells)
    for key in known - {"cells"}:
        if key in raw:
            setattr(cfg, key, type(getattr(cfg, key))(raw[key]))
    try:
        for cell in cfg.cells:
            cfg.ea_config(cell)
    except ValueError as exc:
        raise ExperimentConfigError(str(exc)) from exc
    if cfg.runs < 1:
        raise ExperimentConfigError("runs must be at least 1")
    if cfg.parallelism < 1:
        raise ExperimentConfigError("parallelism must be at least 1")
    return cfg


RUN_CSV_COLUMNS = [
    "n", "encoding", "scenario", "variant", "run_index", "seed", "budget",
    "population_size", "evaluations", "best_fitness", "penalty_raw",
    "penalty_value", "bal_deficit", "nonlinearity", "max_vals", "wall_time_s",
    "detail_file",
]


def _run_row(cell: ExperimentCell, index: int, record: RunRecord, detail: str) -> dict:
    rep = record.best_report
    return {
        "n": cell.n,
        "encoding": cell.encoding,
        "scenario": cell.scenario,
        "variant": cell.variant,
        "run_index": index,
        "seed": record.config.seed,
        "budget": record.config.evaluation_budget,
        "population_size": record.config.population_size,
        "evaluations": record.evaluations_used,
        "best_fitness": repr(record.best_fitness),
        "penalty_raw": rep.penalty_raw,
        "penalty_value": repr(rep.penalty_value),
        "bal_deficit": rep.bal_deficit,
        "nonlinearity": "" if rep.nonlinearity is None else rep.nonlinearity,
        "max_vals": "" if rep.max_vals_count is None else rep.max_vals_count,
        "wall_time_s": f"{record.wall_time:.3f}",
        "detail_file": detail,
    }


def record_detail_dict(record: RunRecord) -> dict:
    return {
        "config": asdict(record.config),
        "best_fitness": record.best_fitness,
        "best_nonlinearity": record.best_nonlinearity,
        "best_genome": record.best_genome,
        "genome_format": record.genome_format,
        "best_report": asdict(record.best_report),
        "evaluations_used": record.evaluations_used,
        "trajectory": [[int(e), float(f)] for e, f in record.trajectory],
    }


def run_experiment(config: ExperimentConfig, out_dir) -> dict:
    """Execute the whole matrix, streaming artifacts; returns summary rows."""
    out = Path(out_dir)
    details_dir = out / "details"
    details_dir.mkdir(parents=True, exist_ok=True)
    cell_records: dict[ExperimentCell, list[RunRecord]] = {}

    with open(out / "runs.csv", "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=RUN_CSV_COLUMNS)
        writer.writeheader()
        fh.flush()
        pool = (ProcessPoolExecutor(max_workers=config.parallelism)
                if config.parallelism > 1 else None)
        try:
            for cell in config.cells:
                configs = batch_configs(config.ea_config(cell), config.runs)
                records = pool.map(run, configs) if pool else map(run, configs)
                done = []
                for index, record in enumerate(records):
                    detail_name = f"details/{cell.key()}_run{index}.json"
                    with open(out / detail_name, "w") as dfh:
                        json.dump(record_detail_dict(record), dfh, indent=1)
                    writer.writerow(_run_row(cell, index, record, detail_name))
                    fh.flush()
                    done.append(record)
                cell_records[cell] = done
        finally:
            if pool:
                pool.shutdown()

    summary_rows = [summarize_cell(cell, recs) for cell, recs in cell_records.items()]
    with open(out / "summary.csv", "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(summary_rows[0]) if summary_rows
                                else ["n"])
        writer.writeheader()
        writer.writerows(summary_rows)
    write_best_matrix(out / "best_matrix.csv", cell_records)
    return {"cells": len(cell_records), "summary": summary_rows}


def summarize_cell(cell: ExperimentCell, records: list[RunRecord]) -> dict:
    nls = [r.best_nonlinearity for r in records if r.best_nonlinearity is not None]
    return {
        "n": cell.n,
        "encoding": cell.encoding,
        "scenario": cell.scenario,
        "variant": cell.variant,
        "runs": len(records),
        "feasible_runs": len(nls),
        "feasibility_rate": f"{len(nls) / len(records):.4f}" if records else "",
        "best_nl": max(nls) if nls else "-",
        "median_nl": statistics.median(nls) if nls else "-",
        "min_nl": min(nls) if nls else "-",
    }


def write_best_matrix(path, cell_records: dict) -> None:
    """Best nonlinearity per (scenario row, n column); "-" marks cells where no
    run found a monotone function."""
    sizes = sorted({cell.n for cell in cell_records})
    rows: dict[str, dict[int, object]] = {}
    for cell, records in cell_records.items():
        nls = [r.best_nonlinearity for r in records if r.best_nonlinearity is not None]
        rows.setdefault(cell.label(), {})[cell.n] = max(nls) if nls else "-"
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["configuration"] + sizes)
        for label in sorted(rows):
            writer.writerow([label] + [rows[label].get(nn, "") for nn in sizes])


# ---------------------------------------------------------------------------
# Fixed-weight penalty sampling (plot-ready data for the weight-bias panels)

@dataclass(frozen=True)
class PenaltyStats:
    weight: int
    mean: float
    min: float
    max: float
    stddev: float


def _variant_values(viol: np.ndarray, maxp: np.ndarray, variant: str) -> np.ndarray:
    if variant == "fit1":
        return viol.astype(float)
    safe = np.where(maxp > 0, maxp, 1).astype(float)
    if variant == "fit2":
        return np.where(maxp > 0, viol / safe, 0.0)
    if variant == "fit3":
        return np.where(maxp > 0, viol / safe ** 2, 0.0)
    raise ValueError(f"unknown penalty variant {variant!r}")


def sample_penalties(n: int, samples_per_weight: int, variant: str,
                     rng: np.random.Generator,
                     weights=None) -> list[PenaltyStats]:
    """For each Hamming weight, draw uniform random functions of exactly that
    weight and summarize the chosen penalty variant."""
    if n > 16:
        raise ValueError("penalty sampling is meant for n <= 16")
    if variant not in VARIANTS:
        raise ValueError(f"unknown penalty variant {variant!r}")
    size = 1 << n
    if weights is None:
        weights = range(size + 1)
    out = []
    for w in weights:
        if not 0 <= w <= size:
            raise ValueError(f"weight {w} out of range [0, {size}]")
        template = np.zeros((samples_per_weight, size), dtype=np.uint8)
        template[:, :w] = 1
        tables = rng.permuted(template, axis=1)
        viol, maxp = monotone_counts_batch(tables, n)
        values = _variant_values(viol, maxp, variant)
        out.append(PenaltyStats(
            weight=int(w),
            mean=float(values.mean()),
            min=float(values.min()),
            max=float(values.max()),
            stddev=float(values.std(ddof=0)),
        ))
    return out


# ---------------------------------------------------------------------------
# Reference table (exact majority values, bounds, and literature constants)

REFERENCE_COLUMNS = [
    "n", "majority_d", "nl_majority", "simple_monotone_bound",
    "covering_radius_bound", "bound_A", "bound_B", "bound_C", "bound_M",
    "monotone_bound", "monotone_bound_floor", "known_balanced_nl",
    "known_imbalanced_nl", "known_general_bound",
]


def reference_rows(n_from: int, n_to: int) -> list[dict]:
    if n_from < 2 or n_to < n_from:
        raise ValueError("need 2 <= n_from <= n_to")
    rows = []
    for n in range(n_from, n_to + 1):
        bound = baselines.monotone_upper_bound(n)
        try:
            simple = baselines.simple_monotone_bound(n)
        except ValueError:
            simple = ""
        rows.append({
            "n": n,
            "majority_d": baselines.majority_threshold(n),
            "nl_majority": baselines.threshold_nonlinearity_exact(
                n, baselines.majority_threshold(n)),
            "simple_monotone_bound": simple,
            "covering_radius_bound": f"{baselines.covering_radius_bound(n):.2f}",
            "bound_A": "" if bound.a is None else bound.a,
            "bound_B": bound.b,
            "bound_C": bound.c,
            "bound_M": bound.m,
            "monotone_bound": f"{bound.bound:.4f}",
            "monotone_bound_floor": bound.bound_floor,
            "known_balanced_nl": baselines.KNOWN_BALANCED_NL.get(n, ""),
            "known_imbalanced_nl": baselines.KNOWN_IMBALANCED_NL.get(n, ""),
            "known_general_bound": baselines.KNOWN_GENERAL_BOUND.get(n, ""),
        })
    return rows


# ---------------------------------------------------------------------------
# Function-file analysis (the verification path for any claimed function)

def load_function_file(path) -> tuple[TruthTable, str]:
    """Read a truth-table text file, a GP prefix expression, or a run-detail
    JSON; returns the decoded table and a short description of the source."""
    text = Path(path).read_text().strip()
    if not text:
        raise ValueError(f"{path}: empty file")
    if text.startswith("{"):
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: invalid JSON: {exc}") from exc
        genome = payload.get("best_genome")
        fmt = payload.get("genome_format")
        if not isinstance(genome, str) or fmt not in ("truth-table", "gp-prefix"):
            raise ValueError(f"{path}: JSON lacks best_genome/genome_format")
        if fmt == "gp-prefix":
            n = payload.get("config", {}).get("n")
            genome_obj = parse_gp_genome(genome, n=n)
            return gp_decode(genome_obj), "gp expression from run detail"
        return TruthTable.from_text(genome), "truth table from run detail"
    first = text.splitlines()[0].strip()
    try:
        int(first)
    except ValueError:
        genome_obj = parse_gp_genome(text)
        return gp_decode(genome_obj), "gp expression"
    return TruthTable.from_text(text), "truth table"


def analyze_table(tt: TruthTable) -> dict:
    """Full property report: structure, spectrum, and all fitness values."""
    spec = walsh_transform(tt)
    mono = monotonicity_report(tt)
    deficit = balancedness_deficit(tt)
    imb = {v: fitness_imbalanced(tt, v) for v in VARIANTS}
    return {
        "n": tt.n,
        "weight": tt.weight,
        "balanced": deficit == 0,
        "bal_deficit": deficit,
        "violations": mono.violations,
        "max_possible": mono.max_possible,
        "monotone": mono.is_monotone,
        "nonlinearity": nonlinearity(spec),
        "max_vals": spec.max_abs_count,
        "fitness_balanced": fitness_balanced(tt).fitness,
        "fitness_imbalanced_fit1": imb["fit1"].fitness,
        "fitness_imbalanced_fit2": imb["fit2"].fitness,
        "fitness_imbalanced_fit3": imb["fit3"].fitness,
    }


def write_csv(path, rows: list[dict], columns: list[str]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=columns)
        writer.writeheader()
        writer.writerows(rows)
