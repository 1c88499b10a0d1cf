"""Parameter-space sweeps and their CSV / binary-PPM serialization.

Grids are row-partitioned for parallel work; cell values are pure
functions of the cell parameter, and rows are reassembled in index order,
so outputs are bit-identical across runs and worker counts.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .dynamics import classify_orbit, critical_points, CubicMap
from .errors import NumericalError
from .errors import CapturedError, TransitError
from .perturb import (EGGBEATER_BOUND, PerturbedMap, classify_perturbation,
                      estimate_lifted_phase_im,
                      VERDICT_BOTH_ESCAPE, VERDICT_ONE_ESCAPES,
                      VERDICT_ATTRACTING, VERDICT_PARABOLIC)

SLICE_BOTH_BOUNDED = "BothBounded"
SLICE_ONE_ESCAPES = "OneEscapes"
SLICE_BOTH_ESCAPE = "BothEscape"

SLICE_MAX_ITER_DEFAULT = 10_000

CSV_HEADER = ("re,im,verdict,escape_iter_plus,escape_iter_minus,"
              "min_multiplier_modulus,im_sigma")


@dataclass(frozen=True)
class ScanCell:
    """One classified grid cell, ready for CSV serialization."""

    re: float
    im: float
    verdict: str
    escape_iter_plus: int | None
    escape_iter_minus: int | None
    min_multiplier_modulus: float | None
    im_sigma: float | None
    misiurewicz_like: bool = False


@dataclass(frozen=True)
class ScanGrid:
    """n x n cell grid over a rectangle in parameter space.

    Cell (i, j) sits at center + (hw.re*((2j+1)/n - 1), hw.im*((2i+1)/n - 1))
    where hw = half_width holds the two half-extents; i indexes Im
    ascending.  kind is "delta" or "slice".
    """

    center: complex
    half_width: complex
    resolution: int
    kind: str
    cells: tuple

    def cell_param(self, i: int, j: int) -> complex:
        n = self.resolution
        return complex(
            self.center.real + self.half_width.real * ((2 * j + 1) / n - 1.0),
            self.center.imag + self.half_width.imag * ((2 * i + 1) / n - 1.0))

    def count(self, verdict: str) -> int:
        return sum(1 for row in self.cells for c in row if c.verdict == verdict)

    @property
    def misiurewicz_count(self) -> int:
        return sum(1 for row in self.cells for c in row if c.misiurewicz_like)


def _delta_cell(a, delta, escape_radius, max_iter, include_phase, tol):
    pm = PerturbedMap(a, delta)
    out = classify_perturbation(pm, escape_radius=escape_radius,
                                max_iter=max_iter)
    im_sigma = None
    if include_phase and out.verdict not in (VERDICT_BOTH_ESCAPE,
                                             VERDICT_ONE_ESCAPES):
        try:
            im_sigma = estimate_lifted_phase_im(pm, tol).im_sigma
        except (TransitError, CapturedError, NumericalError):
            im_sigma = None
    return ScanCell(delta.real, delta.imag, out.verdict, out.escape_plus,
                    out.escape_minus, out.min_multiplier_modulus, im_sigma,
                    out.misiurewicz_like)


def _delta_row(args):
    (a, center, hw, n, i, escape_radius, max_iter, include_phase, tol) = args
    row = []
    for j in range(n):
        delta = complex(center.real + hw.real * ((2 * j + 1) / n - 1.0),
                        center.imag + hw.imag * ((2 * i + 1) / n - 1.0))
        row.append(_delta_cell(a, delta, escape_radius, max_iter,
                               include_phase, tol))
    return i, tuple(row)


def _slice_cell(a, escape_radius, max_iter):
    c_plus, c_minus = critical_points(a)
    fa = CubicMap(a, 1.0 + 0j, 0j)
    op = classify_orbit(fa, c_plus, escape_radius, max_iter)
    om = classify_orbit(fa, c_minus, escape_radius, max_iter)
    if op.escaped and om.escaped:
        verdict = SLICE_BOTH_ESCAPE
    elif op.escaped or om.escaped:
        verdict = SLICE_ONE_ESCAPES
    else:
        verdict = SLICE_BOTH_BOUNDED
    return ScanCell(a.real, a.imag, verdict, op.escape_iterate,
                    om.escape_iterate, None, None)


def _slice_row(args):
    (center, hw, n, i, escape_radius, max_iter) = args
    row = []
    for j in range(n):
        a = complex(center.real + hw.real * ((2 * j + 1) / n - 1.0),
                    center.imag + hw.imag * ((2 * i + 1) / n - 1.0))
        row.append(_slice_cell(a, escape_radius, max_iter))
    return i, tuple(row)


def _run_rows(worker, arg_list, jobs):
    if jobs and jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(worker, arg_list))
    else:
        results = [worker(args) for args in arg_list]
    results.sort(key=lambda t: t[0])
    return tuple(row for _i, row in results)


def scan_delta_disk(a: float, radius: float, n: int,
                    include_phase: bool = False, jobs: int = 1,
                    escape_radius: float = 10.0, max_iter: int = 100_000,
                    tol: float = 1e-6) -> ScanGrid:
    """Classify an n x n grid of perturbations delta over the bounding
    square of the disk |delta| <= radius around the base map f_a."""
    if radius <= 0 or n < 1:
        raise ValueError("radius must be positive and n >= 1")
    if radius > EGGBEATER_BOUND:
        raise ValueError(f"radius {radius} beyond the eggbeater bound "
                         f"{EGGBEATER_BOUND}")
    center = 0j
    hw = complex(radius, radius)
    args = [(float(a), center, hw, int(n), i, escape_radius, int(max_iter),
             include_phase, tol) for i in range(n)]
    cells = _run_rows(_delta_row, args, jobs)
    return ScanGrid(center, hw, int(n), "delta", cells)


def scan_slice_a(re_range, im_range, n: int, jobs: int = 1,
                 escape_radius: float | None = None,
                 max_iter: int = SLICE_MAX_ITER_DEFAULT) -> ScanGrid:
    """Escape classification of both critical orbits of f_a over a
    rectangle of complex slice parameters a."""
    re_min, re_max = map(float, re_range)
    im_min, im_max = map(float, im_range)
    if not (re_max > re_min and im_max > im_min and n >= 1):
        raise ValueError("need re_max > re_min, im_max > im_min, n >= 1")
    center = complex((re_min + re_max) / 2.0, (im_min + im_max) / 2.0)
    hw = complex((re_max - re_min) / 2.0, (im_max - im_min) / 2.0)
    if escape_radius is None:
        amax = max(abs(complex(r, i)) for r in (re_min, re_max)
                   for i in (im_min, im_max))
        escape_radius = max(10.0, 2.0 + 2.0 * amax)
    args = [(center, hw, int(n), i, escape_radius, int(max_iter))
            for i in range(n)]
    cells = _run_rows(_slice_row, args, jobs)
    return ScanGrid(center, hw, int(n), "slice", cells)


def _fmt(x):
    if x is None:
        return ""
    if isinstance(x, int):
        return str(x)
    return "%.17g" % x


def csv_lines(grid: ScanGrid):
    yield CSV_HEADER
    for row in grid.cells:
        for c in row:
            yield ",".join((_fmt(c.re), _fmt(c.im), c.verdict,
                            _fmt(c.escape_iter_plus),
                            _fmt(c.escape_iter_minus),
                            _fmt(c.min_multiplier_modulus),
                            _fmt(c.im_sigma)))


def write_csv(grid: ScanGrid, path):
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        for line in csv_lines(grid):
            fh.write(line + "\n")


def _escape_shade(n_escape, darker=0):
    if n_escape is None:
        n_escape = 0
    v = 255 - min(100, (n_escape * 100) // 5000) - darker
    return (v, v, v)


def cell_color(cell: ScanCell):
    """Fixed palette: escape in the white family (darker = slower),
    attracting blue, parabolic green, Misiurewicz-like red, undetermined
    and bounded-without-analysis gray."""
    if cell.misiurewicz_like:
        return (220, 30, 30)
    v = cell.verdict
    if v in (VERDICT_BOTH_ESCAPE, SLICE_BOTH_ESCAPE):
        its = [x for x in (cell.escape_iter_plus, cell.escape_iter_minus)
               if x is not None]
        return _escape_shade(min(its) if its else None)
    if v in (VERDICT_ONE_ESCAPES, SLICE_ONE_ESCAPES):
        its = [x for x in (cell.escape_iter_plus, cell.escape_iter_minus)
               if x is not None]
        return _escape_shade(min(its) if its else None, darker=40)
    if v == VERDICT_ATTRACTING:
        return (40, 80, 220)
    if v == VERDICT_PARABOLIC:
        return (40, 200, 80)
    if v == SLICE_BOTH_BOUNDED:
        return (100, 100, 100)
    return (128, 128, 128)


def ppm_bytes(grid: ScanGrid) -> bytes:
    """Binary P6 pixmap; image row 0 is the top of the picture (max Im)."""
    n = grid.resolution
    out = bytearray(f"P6\n{n} {n}\n255\n".encode("ascii"))
    for i in range(n - 1, -1, -1):
        for cell in grid.cells[i]:
            out.extend(cell_color(cell))
    return bytes(out)


def write_ppm(grid: ScanGrid, path):
    with open(path, "wb") as fh:
        fh.write(ppm_bytes(grid))
