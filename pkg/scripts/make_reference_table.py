#!/usr/bin/env python3
"""Emit the analytical reference table (majority nonlinearities, monotone
bounds with their A/B/C/M components, literature values) as CSV."""

import argparse
import sys

from monoevo.experiment import REFERENCE_COLUMNS, reference_rows, write_csv


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-from", type=int, default=5)
    parser.add_argument("--n-to", type=int, default=14)
    parser.add_argument("--out", default="reference.csv")
    args = parser.parse_args()
    rows = reference_rows(args.n_from, args.n_to)
    write_csv(args.out, rows, REFERENCE_COLUMNS)
    print(f"wrote {args.out} ({len(rows)} rows)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
