#!/usr/bin/env python3
"""Render the escape structure of the complex slice parameter plane:
both critical orbits of f_a classified per pixel."""

import argparse
import sys
import time

from per1lab import scan_slice_a, write_csv, write_ppm


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--re-min", type=float, default=-2.2)
    ap.add_argument("--re-max", type=float, default=2.2)
    ap.add_argument("--im-min", type=float, default=-1.8)
    ap.add_argument("--im-max", type=float, default=1.8)
    ap.add_argument("--n", type=int, default=400)
    ap.add_argument("--max-iter", type=int, default=4000)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", default="slice_plane")
    args = ap.parse_args()

    t0 = time.time()
    grid = scan_slice_a((args.re_min, args.re_max),
                        (args.im_min, args.im_max), args.n,
                        jobs=args.jobs, max_iter=args.max_iter)
    write_csv(grid, args.out + ".csv")
    write_ppm(grid, args.out + ".ppm")
    counts = {}
    for row in grid.cells:
        for c in row:
            counts[c.verdict] = counts.get(c.verdict, 0) + 1
    print(f"{args.n}x{args.n} cells in {time.time() - t0:.1f}s: {counts}")
    print(f"wrote {args.out}.csv / {args.out}.ppm")
    return 0


if __name__ == "__main__":
    sys.exit(main())
