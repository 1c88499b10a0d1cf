"""Cubic maps, orbits, fixed points and their residue indices.

The central family is f_a(z) = z + a z^2 + z^3, the slice of monic cubics
with a parabolic fixed point of multiplier 1 at the origin.  Everything
here is closed-form or plainly iterative; no Fatou coordinate machinery.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from . import _kernels
from .errors import NumericalError

SQRT3 = math.sqrt(3.0)

ESCAPE_RADIUS_DEFAULT = 10.0
MAX_ITER_DEFAULT = 100_000
MULTIPLE_ROOT_TOL = 1e-7
INDEX_DEGENERACY_TOL = 1e-9
QUAD_RADIUS_DEFAULT = 1e-2
QUAD_NODES_DEFAULT = 1024

BOUNDED = "Bounded"
ESCAPED = "Escaped"


@dataclass(frozen=True)
class CubicMap:
    """Monic cubic p(z) = z^3 + A z^2 + B z + C."""

    A: complex
    B: complex
    C: complex

    def __call__(self, z: complex) -> complex:
        # Horner composition; no hidden scaling
        return ((z + self.A) * z + self.B) * z + self.C

    def deriv(self, z: complex) -> complex:
        return (3.0 * z + 2.0 * self.A) * z + self.B


def per1_map(a: float) -> CubicMap:
    """The slice member f_a(z) = z + a z^2 + z^3 as a generic cubic."""
    return CubicMap(complex(a), 1.0 + 0j, 0j)


@dataclass(frozen=True)
class Per1Param:
    """Real parameter a of the family f_a(z) = z + a z^2 + z^3."""

    a: float

    def __post_init__(self):
        if not math.isfinite(self.a):
            raise ValueError("parameter a must be finite")

    @property
    def in_interval(self) -> bool:
        """True when a lies in the open interval (0, sqrt 3)."""
        return 0.0 < self.a < SQRT3

    def require_interval(self):
        if not self.in_interval:
            raise ValueError(f"a={self.a} outside (0, sqrt(3))")
        return self

    @property
    def map(self) -> CubicMap:
        return per1_map(self.a)

    def critical_points(self):
        return critical_points(self.a)

    @property
    def residue_index(self) -> float:
        return residue_index(self.a)

    @property
    def resit(self) -> float:
        return resit(self.a)


def critical_points(a: complex):
    """Roots of f_a'(z) = 3 z^2 + 2 a z + 1 = 0, as (c_plus, c_minus).

    Ordered so that Im(c_plus) >= Im(c_minus); for real a in (-sqrt3, sqrt3)
    the two are strict complex conjugates with Im(c_plus) >= 0.  At
    a = +-sqrt3 both equal the double critical point -a/3.
    """
    a = complex(a)
    if a.imag == 0.0 and a.real * a.real <= 3.0:
        # exact conjugate pair for real a in [-sqrt3, sqrt3]
        re = -a.real / 3.0
        im = math.sqrt(3.0 - a.real * a.real) / 3.0
        return complex(re, im), complex(re, -im)
    s = cmath.sqrt(a * a - 3.0)
    # pick the larger root from the formula, recover the other from the
    # product c_plus * c_minus = 1/3 to avoid cancellation
    if abs(-a + s) >= abs(-a - s):
        c1 = (-a + s) / 3.0
    else:
        c1 = (-a - s) / 3.0
    c2 = 1.0 / (3.0 * c1) if c1 != 0 else (-a - s) / 3.0
    if (c1.imag, c1.real) < (c2.imag, c2.real):
        c1, c2 = c2, c1
    return c1, c2


@dataclass(frozen=True)
class OrbitResult:
    """Escape-time verdict for one forward orbit.

    Bounded means the budget elapsed without escape: a numerical verdict,
    not a proof of boundedness.
    """

    verdict: str
    escape_iterate: int | None
    last_point: complex

    @property
    def escaped(self) -> bool:
        return self.verdict == ESCAPED


def classify_orbit(cubic: CubicMap, z0: complex,
                   escape_radius: float = ESCAPE_RADIUS_DEFAULT,
                   max_iter: int = MAX_ITER_DEFAULT) -> OrbitResult:
    """Iterate z0 under the map, reporting escape past the given radius.

    Non-finite intermediates count as Escaped at that iterate, so scans
    are total.
    """
    if escape_radius < 10.0:
        raise ValueError("escape_radius must be >= 10")
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    z0 = complex(z0)
    if not (abs(z0) <= escape_radius):
        return OrbitResult(ESCAPED, 0, z0)
    n, z = _kernels.orbit_escape(complex(cubic.A), complex(cubic.B),
                                 complex(cubic.C), z0,
                                 escape_radius * escape_radius, int(max_iter))
    if n < 0:
        return OrbitResult(BOUNDED, None, z)
    return OrbitResult(ESCAPED, int(n), z)


def cubic_roots(A: complex, B: complex, C: complex):
    """All roots of z^3 + A z^2 + B z + C.

    Depressed-cubic closed form followed by two Newton polish steps on the
    original polynomial.
    """
    A, B, C = complex(A), complex(B), complex(C)
    p = B - A * A / 3.0
    q = 2.0 * A ** 3 / 27.0 - A * B / 3.0 + C
    third = A / 3.0
    if p == 0 and q == 0:
        ts = [0j, 0j, 0j]
    else:
        D = (q / 2.0) ** 2 + (p / 3.0) ** 3
        sD = cmath.sqrt(D)
        u3a = -q / 2.0 + sD
        u3b = -q / 2.0 - sD
        u3 = u3a if abs(u3a) >= abs(u3b) else u3b
        u = u3 ** (1.0 / 3.0)
        omega = complex(-0.5, math.sqrt(3.0) / 2.0)
        ts = []
        for j in range(3):
            uj = u * omega ** j
            vj = -p / (3.0 * uj)
            ts.append(uj + vj)
    roots = []
    for t in ts:
        z = t - third
        for _ in range(2):
            pz = ((z + A) * z + B) * z + C
            dp = (3.0 * z + 2.0 * A) * z + B
            if dp != 0:
                z = z - pz / dp
        roots.append(z)
    roots.sort(key=lambda r: (r.real, r.imag))
    return roots


@dataclass(frozen=True)
class FixedPoint:
    """A fixed point with its multiplier and residue index.

    index is 1/(1 - multiplier); it is None (undefined) when the
    multiplier is within INDEX_DEGENERACY_TOL of 1.  multiple flags roots
    that came out of the solver closer than MULTIPLE_ROOT_TOL to another
    root.
    """

    location: complex
    multiplier: complex
    index: complex | None
    multiple: bool


def fixed_points(cubic: CubicMap):
    """All three fixed points of the cubic (with multiplicity), sorted by
    (Re, Im) of the location."""
    roots = cubic_roots(cubic.A, cubic.B - 1.0, cubic.C)
    out = []
    for i, z in enumerate(roots):
        lam = cubic.deriv(z)
        index = None
        if abs(lam - 1.0) > INDEX_DEGENERACY_TOL:
            index = 1.0 / (1.0 - lam)
        multiple = any(abs(z - roots[j]) < MULTIPLE_ROOT_TOL
                       for j in range(3) if j != i)
        out.append(FixedPoint(z, lam, index, multiple))
    return out


def residue_index(a: float) -> float:
    """Residue fixed-point index of f_a at 0, in closed form: 1/a^2."""
    if a == 0:
        raise ValueError("a=0 is a double parabolic point; 1/a^2 invalid")
    return 1.0 / (a * a)


def resit(a: float) -> float:
    """The residu iteratif 1 - 1/a^2.

    Negative on (0,1) (parabolic-attracting origin), positive on
    (1, sqrt3) (parabolic-repelling).
    """
    if a == 0:
        raise ValueError("a=0 is a double parabolic point")
    return 1.0 - 1.0 / (a * a)


def residue_index_quadrature(a: float, radius: float = QUAD_RADIUS_DEFAULT,
                             nodes: int = QUAD_NODES_DEFAULT) -> complex:
    """Contour integral (1/2 pi i) ∮ dz / (z - f_a(z)) on |z| = radius.

    Trapezoid rule on the circle; exponentially accurate since the only
    other zero of z - f_a(z) is at z = -a, far outside the contour.
    """
    if a == 0:
        raise ValueError("a=0 is a double parabolic point")
    if nodes < 8:
        raise ValueError("need at least 8 quadrature nodes")
    fa = per1_map(a)
    total = 0j
    for k in range(nodes):
        z = radius * cmath.exp(2j * math.pi * k / nodes)
        denom = z - fa(z)
        if denom == 0:
            raise NumericalError("contour hit a zero of z - f_a(z)")
        total += z / denom
    return total / nodes


@dataclass(frozen=True)
class MonicCentered:
    """Chart (c, v) of the centered form z^3 - 3 c^2 z + 2 c^3 + v.

    shift records the conjugacy: the centered coordinate is z + shift.
    Critical points of the centered form are +-c, with Im(c) >= 0.
    """

    c: complex
    v: complex
    shift: complex


def to_monic_centered(cubic: CubicMap) -> MonicCentered:
    """Conjugate away the quadratic term and read off the (c, v) chart."""
    A, B, C = cubic.A, cubic.B, cubic.C
    shift = A / 3.0
    # centered map: w^3 + (B - A^2/3) w + (2A^3/27 - AB/3 + C + A/3)
    const = 2.0 * A ** 3 / 27.0 - A * B / 3.0 + C + A / 3.0
    c = cmath.sqrt(A * A - 3.0 * B) / 3.0
    if c.imag < 0 or (c.imag == 0 and c.real < 0):
        c = -c
    v = const - 2.0 * c ** 3
    return MonicCentered(c, v, shift)


def from_monic_centered(form: MonicCentered) -> CubicMap:
    """Invert to_monic_centered: rebuild the monic cubic in the original
    coordinate."""
    c, v, s = form.c, form.v, form.shift
    A = 3.0 * s
    B = 3.0 * s * s - 3.0 * c * c
    C = s ** 3 - 3.0 * c * c * s + 2.0 * c ** 3 + v - s
    return CubicMap(A, B, C)
