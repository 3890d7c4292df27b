"""Hot numeric kernels: Gauss-Kronrod rule pieces and the Sommerfeld integrand.

Every function here is numba-compilable numpy code.  With the JIT disabled
(``DECAYKIT_DISABLE_JIT=1``) the very same functions run as vectorised numpy.

The Sommerfeld integrand is called by name from ``sommerfeld_adaptive``
rather than passed in, so the compiled driver can be cached on disk.
"""
import math

import numpy as np

from ._accel import jit

# 15-point Kronrod abscissae on [-1, 1]; odd positions are the 7-point Gauss nodes.
_XGK_HALF = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK_HALF = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG_HALF = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

XGK = np.concatenate((-_XGK_HALF[:-1], _XGK_HALF[::-1]))
WGK = np.concatenate((_WGK_HALF[:-1], _WGK_HALF[::-1]))
WG = np.zeros(15)
WG[1::2] = np.concatenate((_WG_HALF, _WG_HALF[-2::-1]))

MAX_DEPTH = 50
EPS = float(np.finfo(float).eps)
TINY = float(np.finfo(float).tiny)
FOUR_PI = 4.0 * math.pi

# singularity modes
PLAIN, LEFT, RIGHT, BOTH = 0, 1, 2, 3


@jit
def mapped_domain(a, b, mode):
    """Interval of the substitution variable for ``[a, b]``."""
    if mode == LEFT or mode == RIGHT:
        return 0.0, math.sqrt(b - a)
    if mode == BOTH:
        return 0.0, math.pi
    return a, b


@jit
def rule_nodes(lo, hi, a, b, mode, xgk):
    """Abscissae and Jacobians of the 15 Kronrod nodes on panel ``[lo, hi]``.

    LEFT: x = a + t^2; RIGHT: x = b - t^2; BOTH: x = (a+b)/2 - (b-a)/2 cos(t).
    """
    t = 0.5 * (lo + hi) + 0.5 * (hi - lo) * xgk
    if mode == LEFT:
        return a + t * t, 2.0 * t
    if mode == RIGHT:
        return b - t * t, 2.0 * t
    if mode == BOTH:
        h = 0.5 * (b - a)
        return 0.5 * (a + b) - h * np.cos(t), h * np.sin(t)
    return t, np.ones_like(t)


@jit
def one_minus_node(lo, hi, a, b, mode, xgk):
    """``1 - x`` at the Kronrod nodes, without rounding ``x`` first.

    When a singular endpoint sits at 1, ``x = 1 + t**2`` rounds to 1 for
    tiny ``t``; forming ``1 - x`` from the offset keeps it nonzero.
    """
    t = 0.5 * (lo + hi) + 0.5 * (hi - lo) * xgk
    if mode == LEFT:
        return (1.0 - a) - t * t
    if mode == RIGHT:
        return (1.0 - b) + t * t
    if mode == BOTH:
        s = np.sin(0.5 * t)
        return (1.0 - a) - (b - a) * s * s
    return 1.0 - t


@jit
def rule_estimate(y, lo, hi, wgk, wg):
    """Kronrod value and QUADPACK-style error for Jacobian-weighted samples ``y``."""
    hlgth = 0.5 * (hi - lo)
    resk = np.sum(wgk * y)
    resg = np.sum(wg * y)
    reskh = 0.5 * resk
    resabs = np.sum(wgk * np.abs(y)) * abs(hlgth)
    resasc = np.sum(wgk * np.abs(y - reskh)) * abs(hlgth)
    err = abs((resk - resg) * hlgth)
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    if resabs > TINY / (50.0 * EPS):
        err = max(50.0 * EPS * resabs, err)
    return resk * hlgth, err


@jit
def worst_panel(lo, hi, err, depth, n):
    """Index of the largest-error panel that can still be bisected, or -1."""
    mids = 0.5 * (lo[:n] + hi[:n])
    ok = (depth[:n] < MAX_DEPTH) & (lo[:n] < mids) & (mids < hi[:n])
    if not np.any(ok):
        return -1
    return np.argmax(np.where(ok, err[:n], -1.0))


# --------------------------------------------------------------------------
# planar interface
# --------------------------------------------------------------------------

@jit
def sqrt_upper(z):
    """Complex square root on the branch with Im >= 0."""
    s = np.sqrt(z)
    return np.where(s.imag < 0.0, -s, s)


@jit
def _nonzero(d):
    # numba's complex division raises on 0 whatever the error model; a nan
    # denominator instead surfaces as a non-finite-integrand status
    return np.where(d == 0, np.nan + 0j, d)


@jit
def fresnel_gap(u, gap, eps):
    """``(b, rs, rp)`` for transverse wavenumbers ``u = k/q`` with ``gap = 1 - u``.

    Numerators are factored so eps = 1 gives exact zeros and the large-u
    cancellation in ``b - b2`` never happens.
    """
    b = sqrt_upper(gap * (1.0 + u) + 0j)
    b2 = sqrt_upper(eps - u * u)
    rs = (1.0 - eps) / _nonzero((b + b2) ** 2)
    rp = (eps - 1.0) * (eps - (eps + 1.0) * u * u) / _nonzero((eps * b + b2) ** 2)
    return b, rs, rp


@jit
def fresnel(u, eps):
    return fresnel_gap(u, 1.0 - u, eps)


@jit
def sommerfeld(u, gap, qz, eps, comp):
    """Integrand of the normal (comp 0) or in-plane (comp 1) reflection component."""
    b, rs, rp = fresnel_gap(u, gap, eps)
    phase = np.exp(2j * b * qz)
    bb = _nonzero(b)
    if comp == 0:
        return (1j / FOUR_PI) * u ** 3 * phase * rp / bb
    return (1j / (2.0 * FOUR_PI)) * u * phase * (rs / bb - b * rp)


@jit
def sommerfeld_adaptive(qz, eps, comp, a, b, mode, tol, limit):
    """Adaptive GK15 over ``[a, b]`` of :func:`sommerfeld`.

    Returns ``(value, error, evaluations, status)``; status 0 converged,
    1 panel limit, 2 nothing left to bisect, 3 non-finite integrand.
    """
    xgk, wgk, wg = XGK, WGK, WG
    lo = np.empty(limit)
    hi = np.empty(limit)
    val = np.empty(limit, dtype=np.complex128)
    err = np.empty(limit)
    depth = np.zeros(limit, dtype=np.int64)
    lo[0], hi[0] = mapped_domain(a, b, mode)
    x, jac = rule_nodes(lo[0], hi[0], a, b, mode, xgk)
    gap = one_minus_node(lo[0], hi[0], a, b, mode, xgk)
    val[0], err[0] = rule_estimate(sommerfeld(x, gap, qz, eps, comp) * jac, lo[0], hi[0], wgk, wg)
    n = 1
    status = 0
    while True:
        total_err = np.sum(err[:n])
        if not np.isfinite(total_err):
            status = 3
            break
        if total_err <= tol:
            break
        if n >= limit:
            status = 1
            break
        i = worst_panel(lo, hi, err, depth, n)
        if i < 0:
            status = 2
            break
        mid = 0.5 * (lo[i] + hi[i])
        lo[n], hi[n], depth[n] = mid, hi[i], depth[i] + 1
        hi[i] = mid
        depth[i] += 1
        for j in (i, n):
            x, jac = rule_nodes(lo[j], hi[j], a, b, mode, xgk)
            gap = one_minus_node(lo[j], hi[j], a, b, mode, xgk)
            val[j], err[j] = rule_estimate(sommerfeld(x, gap, qz, eps, comp) * jac, lo[j], hi[j], wgk, wg)
        n += 1
    return np.sum(val[:n]), np.sum(err[:n]), 15 * (2 * n - 1), status
