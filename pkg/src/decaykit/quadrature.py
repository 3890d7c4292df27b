"""Adaptive complex quadrature: finite segments and exponentially decaying tails.

The engine is a global-adaptive 7/15-point Gauss-Kronrod scheme (QUADPACK
QAG error heuristics) with bisection of the worst panel.  Inverse square-root
endpoint singularities are removed by a change of variables before the rule
sees the integrand:

* ``"left"``:  x = a + t**2,  t in [0, sqrt(b - a)]
* ``"right"``: x = b - t**2,  t in [0, sqrt(b - a)]
* ``"both"``:  x = (a + b)/2 - (b - a)/2 * cos(theta),  theta in [0, pi]

Error accounting is absolute.  The rule pieces live in ``_kernels`` and are
shared with the compiled Sommerfeld driver; the loop here serves arbitrary
Python callables.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._kernels import (
    BOTH, LEFT, PLAIN, RIGHT, WG, WGK, XGK, mapped_domain, rule_estimate, rule_nodes, worst_panel,
)
from .core import ConvergenceError, InvalidArgumentError

SINGULARITY_MODES = {None: PLAIN, "none": PLAIN, "left": LEFT, "right": RIGHT, "both": BOTH}
DEFAULT_LIMIT = 2000

_TINY = float(np.finfo(float).tiny)
_STATUS_TEXT = {
    1: "panel limit reached",
    2: "panels cannot be refined further",
    3: "non-finite integrand",
}


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    abs_error_estimate: float
    evaluations: int


def _adaptive(f, a, b, mode, tol, limit):
    # Python twin of _kernels.sommerfeld_adaptive for arbitrary callables
    lo = np.empty(limit)
    hi = np.empty(limit)
    val = np.empty(limit, dtype=complex)
    err = np.empty(limit)
    depth = np.zeros(limit, dtype=np.int64)

    def panel(j):
        x, jac = rule_nodes(lo[j], hi[j], a, b, mode, XGK)
        val[j], err[j] = rule_estimate(f(x) * jac, lo[j], hi[j], WGK, WG)

    lo[0], hi[0] = mapped_domain(a, b, mode)
    panel(0)
    n, status = 1, 0
    while True:
        total_err = err[:n].sum()
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
        panel(i)
        panel(n)
        n += 1
    return val[:n].sum(), err[:n].sum(), 15 * (2 * n - 1), status


def _apply(x, g):
    """Evaluate a plain Python integrand on an array of nodes."""
    try:
        y = np.asarray(g(x), dtype=complex)
    except TypeError:
        y = None
    if y is None or y.shape != x.shape:
        y = np.array([complex(g(xi)) for xi in x])
    return y


def _validate(a, b, tol):
    for name, v in (("a", a), ("b", b), ("tol", tol)):
        if not math.isfinite(v):
            raise InvalidArgumentError(f"{name} must be finite, got {v!r}")
    if not a < b:
        raise InvalidArgumentError(f"need a < b, got a={a!r}, b={b!r}")
    if tol <= 0:
        raise InvalidArgumentError(f"tol must be > 0, got {tol!r}")


def _mode(singular):
    try:
        return SINGULARITY_MODES[singular]
    except KeyError:
        raise InvalidArgumentError(f"unknown singularity mode {singular!r}") from None


def _finish(a, b, tol, value, err, nevals, status):
    value = complex(value)
    if status != 0:
        raise ConvergenceError(
            f"integral over [{a}, {b}] did not converge ({_STATUS_TEXT.get(status, status)}): "
            f"estimate={value!r}, error={err:.3g}, tol={tol:.3g}",
            estimate=value, abs_error=float(err), evaluations=int(nevals),
        )
    return QuadratureResult(value, float(err), int(nevals))


def integrate_segment(f, a, b, tol=1e-10, singular=None, *, limit=DEFAULT_LIMIT):
    """Integrate a complex function of one real variable over ``[a, b]``.

    Parameters
    ----------
    f : callable
        ``f(x)`` for an ndarray ``x``; scalar-only callables are accepted but slow.
    a, b : float
        Finite limits, ``a < b``.
    tol : float
        Absolute error target.
    singular : {None, "left", "right", "both"}
        Endpoint(s) carrying an integrable ``1/sqrt`` singularity.

    Raises
    ------
    ConvergenceError
        If ``tol`` is not met within ``limit`` panels; the best estimate is
        attached to the exception.
    """
    mode = _mode(singular)
    a, b, tol = float(a), float(b), float(tol)
    _validate(a, b, tol)
    g = lambda x: _apply(x, f)
    return _finish(a, b, tol, *_adaptive(g, a, b, mode, tol, int(limit)))


TAIL_MIN_EXTENT = 30.0  # decay lengths covered before the stopping test applies
TAIL_MAX_PANELS = 60


def integrate_tail(f, a, decay_scale, tol=1e-10, *, singular_start=False, x_max=None,
                   segment=None, limit=DEFAULT_LIMIT):
    """Integrate ``f`` over ``[a, inf)`` for an integrand decaying like ``exp(-x/decay_scale)``.

    Panels ``[a, a+d], [a+d, a+3d], [a+3d, a+7d], ...`` (``d = decay_scale``)
    are summed until one contributes less than ``tol * (|sum| + tiny)``, once
    at least ``TAIL_MIN_EXTENT`` decay lengths have been covered.  ``x_max``
    is a hard upper cut.  The reported error is the panel errors plus the
    magnitude of the last panel as a truncation bound.

    ``segment(lo, hi, tol, singular) -> QuadratureResult`` replaces the
    per-panel integrator (``f`` is then ignored); the planar module uses it
    to route panels through the compiled Sommerfeld driver.
    """
    a, decay_scale, tol = float(a), float(decay_scale), float(tol)
    if not (math.isfinite(decay_scale) and decay_scale > 0):
        raise InvalidArgumentError(f"decay_scale must be > 0, got {decay_scale!r}")
    if x_max is not None and not x_max > a:
        raise InvalidArgumentError(f"x_max must exceed a, got {x_max!r}")

    total = 0j
    err = 0.0
    nevals = 0
    start, width = a, decay_scale
    last = 0j
    for k in range(TAIL_MAX_PANELS):
        end = start + width
        final = x_max is not None and end >= x_max
        if final:
            end = float(x_max)
        panel_tol = tol * 0.5 ** (k + 1)
        singular = "left" if (k == 0 and singular_start) else None
        try:
            if segment is None:
                res = integrate_segment(f, start, end, panel_tol, singular, limit=limit)
            else:
                res = segment(start, end, panel_tol, singular)
        except ConvergenceError as exc:
            raise ConvergenceError(
                f"tail panel {k} [{start}, {end}] failed: {exc}",
                estimate=total + exc.estimate, abs_error=err + exc.abs_error,
                evaluations=nevals + exc.evaluations,
            ) from None
        total += res.value
        err += res.abs_error_estimate
        nevals += res.evaluations
        last = res.value
        if final:
            return QuadratureResult(total, err, nevals)
        if end - a >= TAIL_MIN_EXTENT * decay_scale and abs(last) <= tol * (abs(total) + _TINY):
            return QuadratureResult(total, err + abs(last), nevals)
        start, width = end, 2.0 * width
    raise ConvergenceError(
        f"tail from {a} not converged after {TAIL_MAX_PANELS} panels",
        estimate=total, abs_error=err + abs(last), evaluations=nevals,
    )
