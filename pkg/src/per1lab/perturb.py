"""Eggbeater perturbations g_delta = f_a + delta and their invariants.

The added constant splits the parabolic point at 0 into two simple fixed
points near +-i sqrt(delta/a); orbits from the attracting petal transit
through the gate between them.  Im(sigma), the imaginary part of the
lifted phase of the transit, is estimated with the unperturbed Fatou
coordinates as proxies for the persistent ones (Im is invariant under the
iterate-count ambiguity that makes Re(sigma) convention-bound).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import _kernels
from .dynamics import (CubicMap, classify_orbit, critical_points,
                       fixed_points, resit,
                       ESCAPE_RADIUS_DEFAULT, MAX_ITER_DEFAULT)
from .errors import CapturedError, NumericalError, TransitError
from .fatou import attracting_coordinate, repelling_coordinate

EGGBEATER_BOUND = 1e-3
MULTIPLIER_MARGIN = 1e-6
PARABOLIC_MARGIN = 1e-4
REPELLING_MARGIN = 1e-3
RELIABILITY_THRESHOLD = 0.05
ANNULUS_R1 = 0.03
ANNULUS_R2 = 0.3
BASE_PHASE_TARGET = 5.0
MAX_TRANSIT = 10 ** 7

VERDICT_BOTH_ESCAPE = "BothCriticalEscape"
VERDICT_ONE_ESCAPES = "OneCriticalEscapes"
VERDICT_ATTRACTING = "AttractingFixedPoint"
VERDICT_PARABOLIC = "ParabolicFixedPoint"
VERDICT_UNDETERMINED = "Undetermined"


@dataclass(frozen=True)
class PerturbedMap:
    """g_delta = f_a + delta, as the generic cubic (a, 1, delta)."""

    a: float
    delta: complex

    @property
    def map(self) -> CubicMap:
        return CubicMap(complex(self.a), 1.0 + 0j, complex(self.delta))


def perturb(a: float, delta: complex) -> PerturbedMap:
    """Build g_delta, rejecting perturbations beyond the eggbeater bound."""
    a = float(a)
    delta = complex(delta)
    if not math.isfinite(a):
        raise ValueError("a must be finite")
    if abs(delta) > EGGBEATER_BOUND:
        raise ValueError(f"|delta|={abs(delta):.3e} beyond the eggbeater "
                         f"bound {EGGBEATER_BOUND}")
    return PerturbedMap(a, delta)


def split_fixed_points(pm: PerturbedMap):
    """The two fixed points that split off the parabolic point, ordered by
    decreasing Im.  Errors when the near-origin cluster is ambiguous."""
    if pm.delta == 0:
        raise ValueError("delta=0: the parabolic point has not split")
    radius = 3.0 * math.sqrt(abs(pm.delta))
    near = [fp for fp in fixed_points(pm.map) if abs(fp.location) <= radius]
    if len(near) != 2:
        raise NumericalError(
            f"root clustering ambiguous: {len(near)} fixed points within "
            f"radius {radius:.3e} of 0 (|delta| too large?)")
    near.sort(key=lambda fp: (-fp.location.imag, -fp.location.real))
    return near[0], near[1]


@dataclass(frozen=True)
class PhaseEstimate:
    """Estimated Im(sigma) with transit-orbit diagnostics.

    samples holds (orbit index, orbit point, proxy coordinate value) for
    each reference-annulus point used; stability is the spread of the
    per-sample estimates and gates the reliable flag.
    """

    im_sigma: float
    transit_length: int
    samples: tuple
    stability: float
    reliable: bool


_base_cache: dict = {}


def phase_base_point(a: float, target: float = BASE_PHASE_TARGET):
    """Real point of the unperturbed attracting petal with
    psi_att = target, plus its coordinate value.  Cached per (a, target)."""
    key = (float(a), float(target))
    if key in _base_cache:
        return _base_cache[key]
    lo, hi = -0.95 * a, -1e-3 / a
    z0 = 0.5 * (lo + hi)
    for _ in range(80):
        z0 = 0.5 * (lo + hi)
        v = attracting_coordinate(a, z0, 1e-8)
        if abs(v.value.real - target) < 1e-8:
            break
        if v.value.real < target:
            lo = z0
        else:
            hi = z0
    psi0 = attracting_coordinate(a, z0, 1e-8)
    _base_cache[key] = (z0, psi0.value)
    return z0, psi0.value


def estimate_lifted_phase_im(pm: PerturbedMap, tol: float = 1e-6,
                             r1: float = ANNULUS_R1, r2: float = ANNULUS_R2,
                             n_samples: int = 6,
                             max_transit: int = MAX_TRANSIT,
                             z0: complex | None = None) -> PhaseEstimate:
    """Estimate Im(sigma) of the transit map of g_delta.

    Iterates a base point deep in the unperturbed attracting petal until
    the orbit passes the gate into the reference annulus on the repelling
    side, then reads Im psi_rep at a few consecutive orbit points there.
    Orbits that escape first raise TransitError ("no transit"); orbits
    that spiral into a split fixed point (or exhaust the budget) raise
    CapturedError.
    """
    a = float(pm.a)
    psi0 = None
    if z0 is None:
        z0, psi0 = phase_base_point(a)

    fps = fixed_points(pm.map)
    attracting = [fp for fp in fps if abs(fp.multiplier) < 1.0]
    near = sorted(fps, key=lambda fp: abs(fp.location))[:2]
    gate = abs(near[0].location - near[1].location)
    cap_r2 = (0.25 * gate) ** 2 if attracting else 0.0
    attr1 = attracting[0].location if attracting else 0j
    attr2 = attracting[1].location if len(attracting) > 1 else attr1

    code, n, z = _kernels.transit_search(
        a, pm.delta.real, pm.delta.imag, complex(z0), r1 * r1, r2 * r2,
        ESCAPE_RADIUS_DEFAULT ** 2, attr1, attr2, len(attracting), cap_r2,
        int(max_transit))
    if code == _kernels.ESCAPED:
        raise TransitError(f"no transit: orbit escaped at iterate {n}")
    if code == _kernels.CAPTURED:
        raise CapturedError(f"orbit captured near a split fixed point "
                            f"(iterate {n})")
    if code == _kernels.BUDGET:
        raise CapturedError(f"transit budget {max_transit} exhausted")

    if psi0 is None:
        psi0 = attracting_coordinate(a, z0, 1e-8).value
    transit_length = n
    # walk the whole annulus traverse first and read the coordinate at its
    # outer end, where the proxy sensitivity |d psi/dz| is smallest
    g = pm.map
    points = [(n, z)]
    while len(points) < 256:
        z = g(z)
        n += 1
        az = abs(z)
        if not (z.real > 0 and r1 <= az <= r2):
            break
        points.append((n, z))
    samples = []
    for k, zk in points[-n_samples:]:
        val = repelling_coordinate(a, zk, tol)
        samples.append((k, zk, val.value))
    ims = [v.imag - psi0.imag for (_n, _z, v) in samples]
    mean = sum(ims) / len(ims)
    stability = max(ims) - min(ims)
    return PhaseEstimate(mean, transit_length, tuple(samples), stability,
                         stability < RELIABILITY_THRESHOLD)


def return_multiplier_modulus(a: float, im_sigma: float) -> float:
    """|multiplier| of the upper return germ: e^(-2 pi (Im sigma - pi resit)).

    Below 1 exactly when Im(sigma) > pi resit(a), the attracting-return
    regime.
    """
    return math.exp(-2.0 * math.pi * (im_sigma - math.pi * resit(a)))


@dataclass(frozen=True)
class PerturbationOutcome:
    """Classification of a perturbed map with witnesses."""

    verdict: str
    escape_plus: int | None
    escape_minus: int | None
    fixed_points: tuple
    min_multiplier_modulus: float
    misiurewicz_like: bool


def classify_perturbation(pm: PerturbedMap,
                          escape_radius: float = ESCAPE_RADIUS_DEFAULT,
                          max_iter: int = MAX_ITER_DEFAULT,
                          multiplier_margin: float = MULTIPLIER_MARGIN,
                          parabolic_margin: float = PARABOLIC_MARGIN,
                          repelling_margin: float = REPELLING_MARGIN
                          ) -> PerturbationOutcome:
    """Classify both critical orbits and the exact fixed points of g_delta.

    Verdict precedence: BothCriticalEscape, then a certified attracting or
    parabolic fixed point, then OneCriticalEscapes, else Undetermined.
    misiurewicz_like flags the configuration with both critical orbits
    bounded and every fixed point repelling by margin.
    """
    g = pm.map
    c_plus, c_minus = critical_points(pm.a)
    orb_plus = classify_orbit(g, c_plus, escape_radius, max_iter)
    orb_minus = classify_orbit(g, c_minus, escape_radius, max_iter)

    fps = tuple(fixed_points(g))
    moduli = [abs(fp.multiplier) for fp in fps]
    has_attracting = any(m < 1.0 - multiplier_margin for m in moduli)
    has_parabolic = any(
        abs(fp.multiplier - 1.0) <= parabolic_margin
        or abs(abs(fp.multiplier) - 1.0) <= parabolic_margin
        for fp in fps)
    all_repelling = all(m >= 1.0 + repelling_margin for m in moduli)
    both_bounded = not orb_plus.escaped and not orb_minus.escaped

    if orb_plus.escaped and orb_minus.escaped:
        verdict = VERDICT_BOTH_ESCAPE
    elif has_attracting:
        verdict = VERDICT_ATTRACTING
    elif has_parabolic:
        verdict = VERDICT_PARABOLIC
    elif orb_plus.escaped or orb_minus.escaped:
        verdict = VERDICT_ONE_ESCAPES
    else:
        verdict = VERDICT_UNDETERMINED

    return PerturbationOutcome(
        verdict, orb_plus.escape_iterate, orb_minus.escape_iterate, fps,
        min(moduli), both_bounded and all_repelling)
