"""Hot orbit loops, compiled with numba when available.

Every kernel has identical semantics with or without the JIT (same source,
same floating-point operation order), so results do not depend on whether
numba is installed.  Status codes returned by the kernels:

    OK / ENTERED  = 0
    ESCAPED       = 1
    BUDGET        = 2
    NEWTON_FAIL   = 3
    CAPTURED      = 4
"""

try:
    from numba import njit

    def _jit(fn):
        return njit(cache=True)(fn)
except ImportError:  # pragma: no cover - numba is a declared dependency
    def _jit(fn):
        return fn

OK = 0
ESCAPED = 1
BUDGET = 2
NEWTON_FAIL = 3
CAPTURED = 4


@_jit
def orbit_escape(A, B, C, z0, r2, max_iter):
    """Iterate z <- ((z+A)z+B)z+C from z0.

    Returns (n, z): n is the first iterate with |z|^2 > r2 (non-finite
    counts as escaped), or -1 if the budget elapsed without escape.
    """
    z = z0
    for n in range(1, max_iter + 1):
        z = ((z + A) * z + B) * z + C
        m = z.real * z.real + z.imag * z.imag
        if not (m <= r2):
            return n, z
    return -1, z


@_jit
def advance(a, z, n):
    """n forward steps of f_a(z) = z + a z^2 + z^3 (no escape checks)."""
    for _ in range(n):
        z = ((z + a) * z + 1.0) * z
    return z


@_jit
def advance_to_attracting_petal(a, z, W, esc_r2, max_steps):
    """Forward-iterate until w = -1/(az) has Re w > W and |Im w| < Re w."""
    k = 0
    while True:
        den = a * z
        m = den.real * den.real + den.imag * den.imag
        if m > 0.0:
            w = -den.conjugate() / m
            if w.real > W and abs(w.imag) < w.real:
                return OK, k, z
        z = ((z + a) * z + 1.0) * z
        k += 1
        mz = z.real * z.real + z.imag * z.imag
        if not (mz <= esc_r2):
            return ESCAPED, k, z
        if k >= max_steps:
            return BUDGET, k, z


@_jit
def pullback_step(a, b, z):
    """One backward step along the branch fixing the repelling petal.

    Seeds from the translated w-chart and polishes with Newton on
    f_a(zeta) = z.  Returns (code, zeta).
    """
    den = a * z
    m = den.real * den.real + den.imag * den.imag
    if m == 0.0:
        return NEWTON_FAIL, z
    w = -den.conjugate() / m
    wn = w - 1.0 - b / w
    zeta = -1.0 / (a * wn)
    for _ in range(40):
        p = ((zeta + a) * zeta + 1.0) * zeta - z
        dp = (3.0 * zeta + 2.0 * a) * zeta + 1.0
        if dp == 0.0:
            return NEWTON_FAIL, zeta
        step = p / dp
        zeta = zeta - step
        if abs(step) <= 1e-15 * (1.0 + abs(zeta)):
            break
    res = ((zeta + a) * zeta + 1.0) * zeta - z
    if abs(res) > 1e-11 * (1.0 + abs(z)):
        return NEWTON_FAIL, zeta
    return OK, zeta


@_jit
def pullback_steps(a, b, z, n):
    """n backward steps; stops early with NEWTON_FAIL on a bad step."""
    for _ in range(n):
        code, z = pullback_step(a, b, z)
        if code != OK:
            return code, z
    return OK, z


@_jit
def pullback_to_repelling_petal(a, b, z, W, max_steps):
    """Pull back until w = -1/(az) has Re w < -W and |Im w| < -Re w."""
    k = 0
    while True:
        den = a * z
        m = den.real * den.real + den.imag * den.imag
        if m > 0.0:
            w = -den.conjugate() / m
            if w.real < -W and abs(w.imag) < -w.real:
                return OK, k, z
        code, z = pullback_step(a, b, z)
        if code != OK:
            return code, k, z
        k += 1
        if k >= max_steps:
            return BUDGET, k, z


@_jit
def transit_search(a, dre, dim, z0, r1sq, r2sq, esc_r2, attr1, attr2,
                   n_attr, cap_r2, max_steps):
    """Iterate the perturbed map until the orbit reaches the repelling
    reference annulus (Re z > 0, r1 <= |z| <= r2), escapes, is captured by
    an attracting fixed point, or runs out of budget.

    Returns (code, n, z) with n the number of steps taken.
    """
    d = complex(dre, dim)
    z = z0
    n = 0
    while n < max_steps:
        z = ((z + a) * z + 1.0) * z + d
        n += 1
        m = z.real * z.real + z.imag * z.imag
        if not (m <= esc_r2):
            return ESCAPED, n, z
        if z.real > 0.0 and r1sq <= m <= r2sq:
            return OK, n, z
        if n_attr > 0:
            u = z - attr1
            if u.real * u.real + u.imag * u.imag < cap_r2:
                return CAPTURED, n, z
            if n_attr > 1:
                u = z - attr2
                if u.real * u.real + u.imag * u.imag < cap_r2:
                    return CAPTURED, n, z
    return BUDGET, n, z
