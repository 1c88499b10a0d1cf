"""Command-line entry point.

Exit codes: 0 success / verification PASS, 1 verification FAIL,
2 invalid input, 3 numerical failure (convergence or budget).
"""

from __future__ import annotations

import argparse
import math
import sys

from .config import load_config
from .dynamics import residue_index, residue_index_quadrature, resit
from .errors import NumericalError
from .fatou import (critical_ecalle_height, find_parameter_for_height,
                    horn_multiplier, horn_offset)
from .perturb import (classify_perturbation, estimate_lifted_phase_im,
                      perturb)
from .scan import scan_delta_disk, scan_slice_a, write_csv, write_ppm
from .verify import (verify_cylinder, verify_lemma41, verify_lemma42,
                     verify_theorem)

G = "%.17g"


def _common(parser):
    parser.add_argument("--config", help="path to a key=value config file")
    parser.add_argument("--epsilon", type=float, default=None)
    parser.add_argument("--tol", type=float, default=None)
    parser.add_argument("--escape-radius", type=float, default=None,
                        dest="escape_radius")
    parser.add_argument("--max-iter", type=int, default=None,
                        dest="max_iter")
    parser.add_argument("--output-dir", default=None, dest="output_dir")
    parser.add_argument("--jobs", type=int, default=None)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="per1lab",
        description="Numerical laboratory for the cubic family "
                    "f_a(z) = z + a z^2 + z^3 and its perturbations")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("height", help="critical Ecalle height of f_a")
    p.add_argument("--a", type=float, required=True)
    _common(p)

    p = sub.add_parser("find-a", help="invert the height map t -> a(t)")
    p.add_argument("--height", type=float, required=True)
    _common(p)

    p = sub.add_parser("residue", help="residue index and residu iteratif")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--nodes", type=int, default=1024)
    p.add_argument("--radius", type=float, default=1e-2)
    _common(p)

    p = sub.add_parser("horn", help="horn-map end multiplier")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--diagnostic", action="store_true",
                   help="also measure the cylinder-end offsets")
    _common(p)

    p = sub.add_parser("phase", help="Im of the lifted phase of f_a + delta")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--delta-re", type=float, required=True)
    p.add_argument("--delta-im", type=float, default=0.0)
    _common(p)

    p = sub.add_parser("classify", help="classify a perturbed map")
    p.add_argument("--a", type=float, required=True)
    p.add_argument("--delta-re", type=float, required=True)
    p.add_argument("--delta-im", type=float, default=0.0)
    _common(p)

    p = sub.add_parser("scan-delta", help="classify a delta-disk grid")
    p.add_argument("--a", type=float)
    p.add_argument("--t", type=float,
                   help="use a(t) instead of an explicit a")
    p.add_argument("--radius", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", required=True,
                   help="base path; writes <out>.csv and <out>.ppm")
    p.add_argument("--include-phase", action="store_true")
    _common(p)

    p = sub.add_parser("scan-slice", help="escape scan of the a-plane")
    p.add_argument("--re-min", type=float, required=True)
    p.add_argument("--re-max", type=float, required=True)
    p.add_argument("--im-min", type=float, required=True)
    p.add_argument("--im-max", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out", required=True)
    _common(p)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("which", choices=["lemma41", "lemma42", "cylinder",
                                     "theorem"])
    p.add_argument("--t", type=float, default=None)
    p.add_argument("--a", type=float, default=None)
    p.add_argument("--radius", type=float, default=1e-4)
    p.add_argument("--n", type=int, default=64)
    p.add_argument("--out", default=None,
                   help="for theorem: also write <out>.csv/.ppm of the grid")
    _common(p)
    return parser


def _config_from(args):
    overrides = {key: getattr(args, key, None)
                 for key in ("epsilon", "tol", "escape_radius", "max_iter",
                             "output_dir", "jobs")}
    return load_config(getattr(args, "config", None), overrides)


def _out_base(cfg, out):
    path = cfg.output_dir / out
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def _print_header(cfg, args):
    print(f"# per1lab {args.command}")
    for line in cfg.header_lines():
        print(line)


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from(args)
        _print_header(cfg, args)

        if args.command == "height":
            h = critical_ecalle_height(args.a, min(cfg.tol, 1e-8))
            print(("height=" + G) % h.h)
            print(("re_mismatch=" + G) % h.re_mismatch)
            return 0

        if args.command == "find-a":
            a = find_parameter_for_height(args.height, cfg.tol)
            print(("a=" + G) % a)
            return 0

        if args.command == "residue":
            iota = residue_index(args.a)
            quad = residue_index_quadrature(args.a, args.radius, args.nodes)
            print(("iota=" + G) % iota)
            print(("resit=" + G) % resit(args.a))
            print(("iota_quadrature_re=" + G) % quad.real)
            print(("quadrature_diff=" + G) % abs(quad - iota))
            return 0

        if args.command == "horn":
            print(("multiplier=" + G) % horn_multiplier(args.a))
            if args.diagnostic:
                expected = math.pi * resit(args.a)
                for h in (3.5, -3.5):
                    off = horn_offset(args.a, height=h)
                    print(("offset_im_at_%+g=" % h + G) % off.imag)
                print(("expected_offset_im=" + G) % (-expected))
            return 0

        if args.command == "phase":
            pm = perturb(args.a, complex(args.delta_re, args.delta_im))
            est = estimate_lifted_phase_im(pm, cfg.tol)
            print(("im_sigma=" + G) % est.im_sigma)
            print(("stability=" + G) % est.stability)
            print("transit_length=%d" % est.transit_length)
            print("reliable=%s" % est.reliable)
            return 0

        if args.command == "classify":
            pm = perturb(args.a, complex(args.delta_re, args.delta_im))
            out = classify_perturbation(pm, escape_radius=cfg.escape_radius,
                                        max_iter=cfg.max_iter)
            print("verdict=%s" % out.verdict)
            print("escape_iter_plus=%s" % out.escape_plus)
            print("escape_iter_minus=%s" % out.escape_minus)
            print(("min_multiplier_modulus=" + G)
                  % out.min_multiplier_modulus)
            print("misiurewicz_like=%s" % out.misiurewicz_like)
            for fp in out.fixed_points:
                print(("fixed_point re=" + G + " im=" + G + " mult_mod=" + G)
                      % (fp.location.real, fp.location.imag,
                         abs(fp.multiplier)))
            return 0

        if args.command == "scan-delta":
            if (args.a is None) == (args.t is None):
                raise ValueError("give exactly one of --a or --t")
            a = (args.a if args.a is not None
                 else find_parameter_for_height(args.t, cfg.tol))
            grid = scan_delta_disk(a, args.radius, args.n,
                                   include_phase=args.include_phase,
                                   jobs=cfg.jobs,
                                   escape_radius=cfg.escape_radius,
                                   max_iter=cfg.max_iter, tol=cfg.tol)
            base = _out_base(cfg, args.out)
            write_csv(grid, str(base) + ".csv")
            write_ppm(grid, str(base) + ".ppm")
            print(f"wrote {base}.csv and {base}.ppm")
            return 0

        if args.command == "scan-slice":
            grid = scan_slice_a((args.re_min, args.re_max),
                                (args.im_min, args.im_max), args.n,
                                jobs=cfg.jobs, max_iter=cfg.max_iter)
            base = _out_base(cfg, args.out)
            write_csv(grid, str(base) + ".csv")
            write_ppm(grid, str(base) + ".ppm")
            print(f"wrote {base}.csv and {base}.ppm")
            return 0

        if args.command == "verify":
            if args.which == "lemma41":
                ts = (args.t,) if args.t is not None else (0.5, 1.0, 2.0, 2.3)
                report = verify_lemma41(ts, epsilon=cfg.epsilon,
                                        escape_radius=cfg.escape_radius,
                                        max_iter=cfg.max_iter, tol=cfg.tol)
            elif args.which == "lemma42":
                report = verify_lemma42(args.t if args.t is not None else 2.0,
                                        tol=cfg.tol)
            elif args.which == "cylinder":
                report = verify_cylinder(args.t if args.t is not None else 2.0,
                                         escape_radius=cfg.escape_radius,
                                         tol=cfg.tol)
            else:
                report, grid = verify_theorem(
                    t=args.t, a=args.a, radius=args.radius, n=args.n,
                    epsilon=cfg.epsilon, jobs=cfg.jobs,
                    escape_radius=cfg.escape_radius, max_iter=cfg.max_iter,
                    tol=cfg.tol)
                if args.out:
                    base = _out_base(cfg, args.out)
                    write_csv(grid, str(base) + ".csv")
                    write_ppm(grid, str(base) + ".ppm")
                    print(f"wrote {base}.csv and {base}.ppm")
            print(report.render())
            return 0 if report.passed else 1

        raise ValueError(f"unknown command {args.command}")
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
