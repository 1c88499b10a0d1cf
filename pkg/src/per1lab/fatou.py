"""Numerical attracting and repelling Fatou coordinates of f_a.

In the chart w = -1/(a z) the map becomes F(w) = w + 1 + b/w + c2/w^2 + ...
with b = 1 - 1/a^2 (the residu iteratif) and c2 = 1 - 2/a^2, so the
coordinate has the asymptotics

    psi(w) = w - b Log(w) + p/w + O(log w / w^2),   p = c2 - b^2 + b/2,

with Log principal (Log(-w) on the repelling side).  The limit formula is
evaluated along the orbit at checkpoints n, 2n, 4n, ... and accelerated by
two Richardson levels for the leading 1/n^2 truncation; the achievable
floor in double precision is a few units in 1e-10 times the value scale.

The normalization is pinned by the limit formula itself (no additive
constant), which makes psi real on the real axis inside each petal and
hence equivariant under complex conjugation.  Only Im(psi) is canonical;
Re(psi) follows this artifact convention.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from . import _kernels
from .dynamics import SQRT3, critical_points, per1_map, resit
from .errors import BasinError, ConvergenceError

ATTRACTING = "attracting"
REPELLING = "repelling"

PETAL_W0 = 20.0
CHECKPOINT_BASE = 64
RESIDUAL_CHECKPOINT_BASE = 96
MAX_CHECKPOINT = 2 ** 20
MAX_PREITER = 200_000
FLOOR_STOP = 3e-10
FLOOR_NOISE = 1e-9

_HEIGHT_BRACKET = (0.05, SQRT3 - 1e-3)


def expansion_coefficients(a: float):
    """(b, p): residu iteratif and the 1/w coefficient of psi."""
    b = resit(a)
    c2 = 1.0 - 2.0 / (a * a)
    p = c2 - b * b + b / 2.0
    return b, p


def petal_entry_scale(a: float) -> float:
    """Half-plane threshold for the petal-entry predicate.

    Grows with the expansion coefficients so the limit formula starts
    where its asymptotic series is under control (matters for small a,
    where |b| ~ 1/a^2 is large).
    """
    b, p = expansion_coefficients(a)
    return max(PETAL_W0, 6.0 * (1.0 + abs(b)), 3.0 * math.sqrt(abs(p)))


def _w(a, z):
    return -1.0 / (a * z)


def in_attracting_petal(a: float, z: complex) -> bool:
    """Entry predicate: w = -1/(az) with Re w > W0(a), |Im w| < Re w."""
    if z == 0:
        return False
    w = _w(a, z)
    W = petal_entry_scale(a)
    return w.real > W and abs(w.imag) < w.real


def in_repelling_petal(a: float, z: complex) -> bool:
    if z == 0:
        return False
    w = _w(a, z)
    W = petal_entry_scale(a)
    return w.real < -W and abs(w.imag) < -w.real


@dataclass(frozen=True)
class FatouValue:
    """A Fatou coordinate value with convergence diagnostics.

    residual is the a-posteriori Abel defect |psi(f_a(z)) - psi(z) - 1|,
    measured with an independently gridded evaluation at f_a(z).
    """

    value: complex
    direction: str
    iterations_used: int
    residual: float


def _check_a(a):
    a = float(a)
    if not (0.0 < a < SQRT3):
        raise ValueError(f"a={a} outside the interval (0, sqrt(3))")
    return a


def _extrapolate(psi_values, tol):
    """Two Richardson levels on checkpoint doubling; returns
    (converged_value_or_None, last_Y, last_dY)."""
    if len(psi_values) < 4:
        return None, None, None
    Ys = []
    for i in range(2, len(psi_values)):
        X1 = (4.0 * psi_values[i - 1] - psi_values[i - 2]) / 3.0
        X2 = (4.0 * psi_values[i] - psi_values[i - 1]) / 3.0
        Ys.append((4.0 * X2 - X1) / 3.0)
    best_dY = math.inf
    best_Y = None
    for i in range(1, len(Ys)):
        dY = abs(Ys[i] - Ys[i - 1])
        scale = max(1.0, abs(Ys[i]))
        if dY < max(tol / 4.0, FLOOR_STOP * scale):
            return Ys[i], Ys[i], dY
        if dY < best_dY:
            best_dY, best_Y = dY, Ys[i]
        elif best_dY < max(tol, FLOOR_NOISE * scale) and dY > 2.0 * best_dY:
            # roundoff noise regime: the best extrapolant already met tol
            return best_Y, Ys[i], dY
    return None, Ys[-1], abs(Ys[-1] - Ys[-2]) if len(Ys) > 1 else None


def _limit_attracting(a, z, tol, n0):
    """Limit-formula value of psi_att at a point already inside the petal.

    Returns (value, orbit_length).  Raises ConvergenceError when the
    checkpoint budget runs out.
    """
    b, p = expansion_coefficients(a)
    psis = []
    n_prev = 0
    n = n0
    zz = z
    while n <= MAX_CHECKPOINT:
        zz = _kernels.advance(a, zz, n - n_prev)
        n_prev = n
        w = _w(a, zz)
        psis.append(w - n - b * cmath.log(w) + p / w)
        val, last_Y, last_dY = _extrapolate(psis, tol)
        if val is not None:
            return val, n
        n *= 2
    raise ConvergenceError("attracting coordinate did not converge",
                           best=psis[-1], residual=last_dY, iterations=n_prev)


def _limit_repelling(a, z, tol, n0):
    """Limit-formula value of psi_rep along the backward orbit from a
    point already inside the repelling petal."""
    b, p = expansion_coefficients(a)
    psis = []
    n_prev = 0
    n = n0
    zz = z
    while n <= MAX_CHECKPOINT:
        code, zz = _kernels.pullback_steps(a, b, zz, n - n_prev)
        if code != _kernels.OK:
            raise ConvergenceError("backward orbit left the repelling petal",
                                   best=zz, iterations=n_prev)
        n_prev = n
        w = _w(a, zz)
        psis.append(w + n - b * cmath.log(-w) + p / w)
        val, last_Y, last_dY = _extrapolate(psis, tol)
        if val is not None:
            return val, n
        n *= 2
    raise ConvergenceError("repelling coordinate did not converge",
                           best=psis[-1], residual=last_dY, iterations=n_prev)


def _into_attracting_petal(a, z, max_preiter):
    code, k, z = _kernels.advance_to_attracting_petal(
        a, complex(z), petal_entry_scale(a), 1e4, int(max_preiter))
    if code == _kernels.ESCAPED:
        raise BasinError("not in parabolic basin (orbit escaped)")
    if code == _kernels.BUDGET:
        raise ConvergenceError("orbit did not reach the attracting petal "
                               f"within {max_preiter} iterates", best=z,
                               iterations=k)
    return k, z


def _into_repelling_petal(a, z, max_preiter):
    b, _ = expansion_coefficients(a)
    code, k, z = _kernels.pullback_to_repelling_petal(
        a, b, complex(z), petal_entry_scale(a), int(max_preiter))
    if code == _kernels.NEWTON_FAIL:
        raise ConvergenceError("backward orbit cannot be continued in the "
                               "repelling petal", best=z, iterations=k)
    if code == _kernels.BUDGET:
        raise ConvergenceError("backward orbit did not reach the repelling "
                               f"petal within {max_preiter} steps", best=z,
                               iterations=k)
    return k, z


def attracting_coordinate(a: float, z: complex, tol: float = 1e-6,
                          max_preiter: int = MAX_PREITER) -> FatouValue:
    """psi_att(z): conjugates f_a to translation by +1 on the attracting
    petal, real-normalized on the negative real axis.

    z may be anywhere in the parabolic basin; it is iterated forward into
    the petal first and the iterate count credited.  The returned residual
    is checked against tol.
    """
    a = _check_a(a)
    z = complex(z)
    if z == 0:
        raise BasinError("the fixed point itself has no Fatou coordinate")
    k, z_petal = _into_attracting_petal(a, z, max_preiter)
    val, n_main = _limit_attracting(a, z_petal, tol, CHECKPOINT_BASE)
    # independent evaluation one step along the orbit, different grid
    val_next, n_res = _limit_attracting(a, per1_map(a)(z_petal), tol,
                                        RESIDUAL_CHECKPOINT_BASE)
    residual = abs(val_next - val - 1.0)
    if residual > tol:
        raise ConvergenceError(
            f"Abel residual {residual:.3e} above tol {tol:.3e}",
            best=val - k, residual=residual, iterations=k + n_main)
    return FatouValue(val - k, ATTRACTING, k + n_main, residual)


def repelling_coordinate(a: float, z: complex, tol: float = 1e-6,
                         max_preiter: int = MAX_PREITER) -> FatouValue:
    """psi_rep(z): Fatou coordinate along the backward orbit on the
    repelling side, real-normalized on the positive real axis."""
    a = _check_a(a)
    z = complex(z)
    if z == 0:
        raise BasinError("the fixed point itself has no Fatou coordinate")
    k, z_petal = _into_repelling_petal(a, z, max_preiter)
    val, n_main = _limit_repelling(a, z_petal, tol, CHECKPOINT_BASE)
    val_next, n_res = _limit_repelling(a, per1_map(a)(z_petal), tol,
                                       RESIDUAL_CHECKPOINT_BASE)
    residual = abs(val_next - val - 1.0)
    if residual > tol:
        raise ConvergenceError(
            f"Abel residual {residual:.3e} above tol {tol:.3e}",
            best=val + k, residual=residual, iterations=k + n_main)
    return FatouValue(val + k, REPELLING, k + n_main, residual)


def repelling_coordinate_inverse(a: float, zeta: complex,
                                 tol: float = 1e-6) -> complex:
    """z with psi_rep(z) = zeta, via the asymptotic inverse deep in the
    petal, damped Newton refinement, and an exact forward push."""
    a = _check_a(a)
    zeta = complex(zeta)
    b, p = expansion_coefficients(a)
    depth = petal_entry_scale(a) + 12.0 + abs(zeta.imag)
    k = max(0, math.ceil(zeta.real + depth))
    zeta0 = zeta - k
    # head inversion of w - b Log(-w) + p/w = zeta0
    w = zeta0
    for _ in range(40):
        w = zeta0 + b * cmath.log(-w) - p / w
    z = -1.0 / (a * w)
    # damped Newton on psi_rep(z) - zeta0
    newton_tol = max(tol / 4.0, 1e-9)
    err = None
    for _ in range(30):
        val, _n = _limit_repelling(a, z, newton_tol, CHECKPOINT_BASE)
        err = val - zeta0
        if abs(err) < newton_tol:
            break
        wz = _w(a, z)
        dpsi = a * wz * wz * (1.0 - b / wz)
        step = err / dpsi
        z_new = z - step
        damping = 0
        while damping < 12:
            val_new, _n = _limit_repelling(a, z_new, newton_tol,
                                           CHECKPOINT_BASE)
            if abs(val_new - zeta0) < abs(err):
                break
            step /= 2.0
            z_new = z - step
            damping += 1
        z = z_new
    else:
        raise ConvergenceError("inverse repelling coordinate: Newton did "
                               "not converge", best=z, residual=abs(err))
    return _kernels.advance(a, z, k)


@dataclass(frozen=True)
class EcalleHeight:
    """Critical Ecalle height and the Re-agreement diagnostic."""

    h: float
    re_mismatch: float


def critical_ecalle_height(a: float, tol: float = 1e-8) -> EcalleHeight:
    """h(a) = Im psi_att(c_plus) - Im psi_att(c_minus) > 0.

    Also asserts that the two critical points share their Re coordinate
    to tol, as the conjugation-symmetric normalization demands.
    """
    a = _check_a(a)
    c_plus, c_minus = critical_points(a)
    vp = attracting_coordinate(a, c_plus, tol)
    vm = attracting_coordinate(a, c_minus, tol)
    re_mismatch = abs(vp.value.real - vm.value.real)
    if re_mismatch > tol:
        raise ConvergenceError(
            f"critical points disagree in Re(psi) by {re_mismatch:.3e}",
            best=vp.value.imag - vm.value.imag, residual=re_mismatch)
    return EcalleHeight(vp.value.imag - vm.value.imag, re_mismatch)


_height_cache: dict = {}


def find_parameter_for_height(t: float, tol: float = 1e-6,
                              bracket=_HEIGHT_BRACKET) -> float:
    """Invert t = h(a) by bisection on the (empirically monotone) height.

    h decreases from +inf to 0 as a runs over (0, sqrt3); only midpoints
    are evaluated, so the extreme bracket ends are never touched.
    """
    t = float(t)
    if t <= 0:
        raise ValueError("height must be positive")
    key = (t, tol, bracket)
    if key in _height_cache:
        return _height_cache[key]
    lo, hi = bracket
    eval_tol = min(1e-8, tol / 10.0)
    a_mid = 0.5 * (lo + hi)
    for _ in range(200):
        a_mid = 0.5 * (lo + hi)
        h = critical_ecalle_height(a_mid, eval_tol).h
        if abs(h - t) < tol:
            _height_cache[key] = a_mid
            return a_mid
        if h > t:
            lo = a_mid
        else:
            hi = a_mid
        if hi - lo < 1e-14:
            break
    raise ConvergenceError(
        f"height {t} out of numerical range on bracket {bracket}",
        best=a_mid)


def horn_multiplier(a: float) -> float:
    """Derivative modulus of the horn germ at the cylinder ends,
    e^(2 pi^2 resit(a)), in closed form."""
    a = _check_a(a)
    return math.exp(2.0 * math.pi * math.pi * resit(a))


def horn_offset(a: float, height: float = 3.5, x: float = 0.25,
                tol: float = 1e-8) -> complex:
    """Diagnostic: measured psi_att((psi_rep)^-1(zeta)) - zeta at
    Im(zeta) = +-height.

    Tends to -i pi resit(a) at the upper end and +i pi resit(a) at the
    lower end as |height| grows; the drift between heights 3 and 4 is a
    practical check of the asymptotic regime.
    """
    a = _check_a(a)
    if abs(height) < 2.0:
        raise ValueError("diagnostic needs |height| >= 2")
    zeta = complex(x, height)
    z = repelling_coordinate_inverse(a, zeta, tol)
    val = attracting_coordinate(a, z, tol)
    return val.value - zeta
