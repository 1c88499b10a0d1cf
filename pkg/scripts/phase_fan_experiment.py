#!/usr/bin/env python3
"""Sweep the argument of the perturbation delta over a geometric fan and
tabulate the estimated Im(sigma) against the exact multipliers of the
split fixed points.

The transition from both-repelling to one-attracting happens where
Im(sigma) crosses pi*resit(a); the fan straddles it.
"""

import argparse
import cmath
import math
import sys

from per1lab import (CapturedError, TransitError, estimate_lifted_phase_im,
                     find_parameter_for_height, perturb, resit,
                     return_multiplier_modulus, split_fixed_points)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--t", type=float, default=2.0)
    ap.add_argument("--magnitude", type=float, default=1e-5)
    ap.add_argument("--kmax", type=int, default=16)
    args = ap.parse_args()

    a = find_parameter_for_height(args.t)
    pb = math.pi * resit(a)
    print(f"a({args.t}) = {a:.12f}   pi*resit = {pb:.6f}")
    print(f"{'theta':>12} {'im_sigma':>10} {'excess':>9} {'return|m|':>10} "
          f"{'min|lambda|':>12} {'status':>9}")
    for k in [0] + list(range(1, args.kmax + 1)):
        theta = 0.0 if k == 0 else math.pi / 2 ** k
        pm = perturb(a, args.magnitude * cmath.exp(1j * theta))
        p_plus, p_minus = split_fixed_points(pm)
        min_lam = min(abs(p_plus.multiplier), abs(p_minus.multiplier))
        try:
            est = estimate_lifted_phase_im(pm)
        except (TransitError, CapturedError) as exc:
            print(f"{theta:12.4e} {'-':>10} {'-':>9} {'-':>10} "
                  f"{min_lam:12.8f} {type(exc).__name__:>9}")
            continue
        ret = return_multiplier_modulus(a, est.im_sigma)
        print(f"{theta:12.4e} {est.im_sigma:10.4f} "
              f"{est.im_sigma - pb:+9.4f} {ret:10.3e} {min_lam:12.8f} "
              f"{'ok' if est.reliable else 'unstable':>9}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
