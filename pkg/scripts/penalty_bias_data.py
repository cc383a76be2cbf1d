#!/usr/bin/env python3
"""Sample the three penalty variants across all Hamming weights and write one
CSV per variant — the data behind the weight-bias comparison plots."""

import argparse
import sys

import numpy as np

from monoevo.experiment import sample_penalties, write_csv


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=6)
    parser.add_argument("--samples", type=int, default=200)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--prefix", default="penalty", help="output file prefix")
    args = parser.parse_args()
    for variant in ("fit1", "fit2", "fit3"):
        rng = np.random.default_rng(args.seed)
        stats = sample_penalties(args.n, args.samples, variant, rng)
        rows = [{"weight": s.weight, "mean": s.mean, "min": s.min,
                 "max": s.max, "stddev": s.stddev} for s in stats]
        path = f"{args.prefix}_{variant}_n{args.n}.csv"
        write_csv(path, rows, ["weight", "mean", "min", "max", "stddev"])
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
