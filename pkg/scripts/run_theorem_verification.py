#!/usr/bin/env python3
"""Classify a perturbation disk around f_a(t) and check that no cell is
Misiurewicz-like (bounded critical orbits with all fixed points repelling).

Writes the grid as CSV and PPM next to the chosen output base name.
"""

import argparse
import sys

from per1lab import verify_theorem, write_csv, write_ppm


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--t", type=float, default=2.0,
                    help="critical Ecalle height selecting the base map")
    ap.add_argument("--a", type=float, default=None,
                    help="base parameter directly (contrast runs)")
    ap.add_argument("--radius", type=float, default=1e-4)
    ap.add_argument("--n", type=int, default=64)
    ap.add_argument("--epsilon", type=float, default=0.005)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", default="theorem_disk")
    args = ap.parse_args()

    t = None if args.a is not None else args.t
    report, grid = verify_theorem(t=t, a=args.a, radius=args.radius,
                                  n=args.n, epsilon=args.epsilon,
                                  jobs=args.jobs)
    write_csv(grid, args.out + ".csv")
    write_ppm(grid, args.out + ".ppm")
    print(report.render())
    print(f"grid written to {args.out}.csv / {args.out}.ppm")
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
