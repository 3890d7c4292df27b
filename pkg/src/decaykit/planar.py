"""Emitter above an absorbing half-space.

The reflected Green tensor at the emitter is diagonal, with
``R_xx = R_yy`` and ``R_zz``.  Components are handled in the
dimensionless form ``r = R / q`` (``q = omega/c``), with the transverse
wavenumber measured as ``u = k/q`` and ``b = sqrt(1 - u**2)``::

    r_zz = (i/4pi) int_0^inf du u^3 exp(2i b qz) rp(u) / b
    r_xx = -(i/8pi) int_0^inf du u b exp(2i b qz) rp(u)
           + (i/8pi) int_0^inf du (u/b) exp(2i b qz) rs(u)

With this normalisation ``Gamma/Gamma_0 = 1 + 6*pi*Im(w . r)`` and the
first line-shift term is ``6*pi*Re(w . r)``.

Branches: ``b`` is real and nonnegative for ``u <= 1`` and ``+i*sqrt(u**2-1)``
beyond, so evanescent waves decay as ``exp(-2 sqrt(u**2-1) qz)``; the
substrate wavenumber ``sqrt(eps - u**2)`` is taken with Im >= 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels as _k
from .core import (
    ConvergenceError,
    DipoleConfig,
    InvalidArgumentError,
    RateResult,
    _check_finite,
    _check_passive,
    refractive_index,
)
from .quadrature import DEFAULT_LIMIT, _finish, _mode, integrate_segment, integrate_tail

SIX_PI = 6.0 * math.pi

#: evanescent integrals stop at u = 1 + EVANESCENT_CUTOFF / (2 qz); exp(-60) is negligible
EVANESCENT_CUTOFF = 60.0

#: relative accuracy floor applied to the absolute quadrature tolerance
ROUNDOFF_FLOOR = 1e-12

ZZ, XX = 0, 1
METHODS = ("quadrature", "asymptotic", "leading")


@dataclass(frozen=True)
class PlanarConfig:
    qz: float
    eps: complex
    dipole: DipoleConfig = field(default_factory=DipoleConfig)

    def __post_init__(self):
        if not (math.isfinite(self.qz) and self.qz > 0):
            raise InvalidArgumentError(f"qz must be finite and > 0, got {self.qz!r}")
        eps = complex(self.eps)
        _check_finite("eps", eps)
        _check_passive(eps)
        object.__setattr__(self, "eps", eps)


@dataclass(frozen=True)
class ReflectionTensor:
    """Dimensionless reflected Green tensor ``R_kk / q`` at the emitter."""

    rxx: complex
    rzz: complex
    method: str
    error_estimate: float = 0.0

    @property
    def ryy(self) -> complex:
        return self.rxx

    def contract(self, dipole: DipoleConfig) -> complex:
        return dipole.in_plane * self.rxx + dipole.normal * self.rzz


# --------------------------------------------------------------------------
# Fresnel coefficients and Sommerfeld integrals
# --------------------------------------------------------------------------

def fresnel_rs(u, eps):
    """s-polarised reflection coefficient ``(b1 - b2)/(b1 + b2)``."""
    return _fresnel_public(u, eps, 1)


def fresnel_rp(u, eps):
    """p-polarised reflection coefficient ``(eps*b1 - b2)/(eps*b1 + b2)``.

    Tends to ``(eps - 1)/(eps + 1)`` for ``u -> inf``.
    """
    return _fresnel_public(u, eps, 2)


def _fresnel_public(u, eps, which):
    uu = np.atleast_1d(np.asarray(u, dtype=float))
    if np.any(uu < 0) or not np.all(np.isfinite(uu)):
        raise InvalidArgumentError("u must be finite and >= 0")
    eps = complex(eps)
    _check_finite("eps", eps)
    # no interface: exact zeros, including the 0/0 point u = 1
    out = np.zeros(uu.shape, dtype=complex) if eps == 1 else _k.fresnel(uu, eps)[which]
    return complex(out[0]) if np.ndim(u) == 0 else out


# --------------------------------------------------------------------------
# reflection tensor
# --------------------------------------------------------------------------

def _sommerfeld_segment(qz, eps, comp):
    def run(lo, hi, tol, singular=None):
        lo, hi, tol = float(lo), float(hi), float(tol)
        out = _k.sommerfeld_adaptive(qz, eps, comp, lo, hi, _mode(singular), tol, DEFAULT_LIMIT)
        return _finish(lo, hi, tol, *out)
    return run


def _component(qz, eps, comp, tol):
    segment = _sommerfeld_segment(float(qz), complex(eps), int(comp))
    share = tol / 3.0
    parts = [segment(0.0, 1.0, share, "right")]
    u_max = 1.0 + EVANESCENT_CUTOFF / (2.0 * qz)
    # Re(n) is the substrate branch point: a sqrt kink for weakly absorbing media
    n_r = refractive_index(eps).eta
    start = 1.0
    if 1.0 + 1e-12 < n_r < u_max:
        parts.append(segment(1.0, n_r, share, "both"))
        start = n_r
    parts.append(integrate_tail(None, start, 1.0 / (2.0 * qz), share,
                                singular_start=True, x_max=u_max, segment=segment))
    value = sum(p.value for p in parts)
    return value, sum(p.abs_error_estimate for p in parts), sum(p.evaluations for p in parts)


def reflection_tensor_quadrature(cfg: PlanarConfig, tol: float = 1e-8) -> ReflectionTensor:
    """Reflection tensor by direct quadrature over the transverse wavenumber.

    The range is split at the branch point ``u = 1`` (inverse square-root
    substitutions on both sides) and, if it lies in the tail, at ``u = Re n``.
    """
    if not (math.isfinite(tol) and tol > 0):
        raise InvalidArgumentError(f"tol must be > 0, got {tol!r}")
    if cfg.eps == 1:
        return ReflectionTensor(0j, 0j, "quadrature", 0.0)
    # an absolute target below round-off of the quasi-static magnitude is unreachable
    tol = max(tol, ROUNDOFF_FLOOR * _integral_scale(cfg))
    rzz, ezz, _ = _component(cfg.qz, cfg.eps, ZZ, tol / 2)
    rxx, exx, _ = _component(cfg.qz, cfg.eps, XX, tol / 2)
    return ReflectionTensor(complex(rxx), complex(rzz), "quadrature", ezz + exx)


def _integral_scale(cfg):
    """Magnitude of the evanescent integral, for the round-off floor on ``tol``."""
    if cfg.eps == -1:
        # rp ~ -2 u**2 without an image limit: integral of 2 u**4 exp(-2 u qz) / (4 pi)
        return 1.0 + 3.0 / (8 * math.pi * cfg.qz ** 5)
    return 1.0 + abs(_static_factor(cfg.eps)) / (16 * math.pi * cfg.qz ** 3)


def _quadrature_contraction(cfg, tol):
    # w . r by quadrature, skipping components the dipole does not see
    if cfg.eps == 1:
        return 0j
    tol = max(tol, ROUNDOFF_FLOOR * _integral_scale(cfg))
    out = 0j
    for comp, weight in ((ZZ, cfg.dipole.normal), (XX, cfg.dipole.in_plane)):
        if weight > 0:
            out += weight * _component(cfg.qz, cfg.eps, comp, tol / 2)[0]
    return out


def _static_factor(eps):
    # (n^2 - 1)/(n^2 + 1)
    return (eps - 1.0) / (eps + 1.0)


def reflection_tensor_asymptotic(cfg: PlanarConfig) -> ReflectionTensor:
    """Small-distance expansion through order ``(qz)**0``.

    Only the real part of the constant term is reliable for weakly absorbing
    media: its ``(qz)**0`` coefficients do not reproduce the
    quadrature's radiative (Im) part.
    """
    eps = cfg.eps
    n = refractive_index(eps).n
    if n * n == 1:
        return ReflectionTensor(0j, 0j, "asymptotic", 0.0)
    if eps == -1 or n == 0:
        raise InvalidArgumentError(f"expansion is singular for eps={eps!r}")
    qz = cfg.qz
    static = _static_factor(eps)
    rzz = (static / (16 * math.pi * qz ** 3)
           + (n - 1) ** 2 / (n * (n + 1)) / (8 * math.pi * qz)
           + 1j * (n - 1) * (2 * n - 1) / (n * (n + 1)) / (12 * math.pi))
    rxx = rzz / 2 - static / (16 * math.pi * qz) - 1j * (n - 1) / (n + 1) / (3 * math.pi)
    return ReflectionTensor(complex(rxx), complex(rzz), "asymptotic", 0.0)


def reflection_tensor_leading(cfg: PlanarConfig) -> ReflectionTensor:
    """Only the ``(qz)**-3`` (quasi-static image) terms."""
    if cfg.eps == -1:
        raise InvalidArgumentError("leading term is singular for eps = -1")
    rzz = _static_factor(cfg.eps) / (16 * math.pi * cfg.qz ** 3)
    return ReflectionTensor(complex(rzz / 2), complex(rzz), "leading", 0.0)


def reflection_tensor(cfg: PlanarConfig, method: str = "quadrature", tol: float = 1e-8) -> ReflectionTensor:
    if method == "quadrature":
        return reflection_tensor_quadrature(cfg, tol)
    if method == "asymptotic":
        return reflection_tensor_asymptotic(cfg)
    if method == "leading":
        return reflection_tensor_leading(cfg)
    raise InvalidArgumentError(f"unknown method {method!r}; expected one of {METHODS}")


# --------------------------------------------------------------------------
# rates and shifts
# --------------------------------------------------------------------------

def leading_rate_formula(qz, eps, normal_weight):
    """``1 + (1 + w_z) * 3/(8 qz^3) * Im(eps)/|eps + 1|^2``, the closed-form z^-3 law."""
    eps = complex(eps)
    return 1.0 + (1.0 + normal_weight) * 3.0 / (8.0 * qz ** 3) * eps.imag / abs(eps + 1.0) ** 2


def planar_decay_rate(cfg: PlanarConfig, method: str = "quadrature", tol: float = 1e-8) -> float:
    """``Gamma/Gamma_0 = 1 + 6*pi*[(w_x + w_y) Im r_xx + w_z Im r_zz]``."""
    r = reflection_tensor(cfg, method, tol)
    return 1.0 + SIX_PI * r.contract(cfg.dipole).imag


# Lamb-shift frequency integral.  With R(w') = (w'/c) r(w') and the (w'/c)^2
# weight of the Green function kept inside the integral, normalising by
# Gamma_0 at omega_A leaves (w'/omega_A)^3 * Im r(w') / (w' + omega_A).
_SHIFT_WEIGHT_POWER = 3
# below this distance parameter the quasi-static expansion is used for r(w')
_SMALL_QZ = 1e-3


def _shift_integral(cfg, model, method, omega_max, tol):
    omega_a = cfg.dipole.omega_a
    if not (math.isfinite(omega_max) and omega_max > omega_a):
        raise InvalidArgumentError(f"omega_max must exceed omega_a={omega_a}, got {omega_max!r}")

    def integrand(w):
        out = np.empty(w.shape)
        for i, wi in enumerate(w):
            qz_i = cfg.qz * wi / omega_a
            sub = PlanarConfig(qz_i, model(wi), cfg.dipole)
            weight = (wi / omega_a) ** _SHIFT_WEIGHT_POWER / (wi + omega_a)
            # inner errors are amplified by the weight; noise well below the
            # outer target keeps the outer adaptive rule from chasing it
            inner_tol = tol / (100.0 * omega_max * max(weight, 1.0 / omega_max))
            m = "asymptotic" if (qz_i < _SMALL_QZ and method == "quadrature") else method
            if m == "quadrature":
                im = _quadrature_contraction(sub, inner_tol).imag
            else:
                im = reflection_tensor(sub, m, inner_tol).contract(cfg.dipole).imag
            out[i] = weight * im
        return out

    breaks = {0.0, omega_a, omega_max, 0.5, 0.9, 1.0, 1.1, 1.5, 2.0, 5.0, 10.0, 20.0}
    grid = sorted(x for x in breaks if 0.0 <= x <= omega_max)
    share = tol / (len(grid) - 1)
    total, err = 0.0, 0.0
    for lo, hi in zip(grid[:-1], grid[1:]):
        res = integrate_segment(integrand, lo, hi, share)
        total += res.value.real
        err += res.abs_error_estimate
    return total, err


def planar_line_shift(cfg: PlanarConfig, method: str = "quadrature", include_integral_term: bool = False,
                      omega_max: float = 50.0, tol: float = 1e-8, model=None) -> float:
    """Medium-induced line shift ``delta_omega / Gamma_0``.

    The first term is ``6*pi*Re(w . r)`` at omega_A.  With
    ``include_integral_term`` the frequency integral
    ``-6 * int_0^omega_max dw' (w'/omega_A)^3 Im(w . r(w')) / (w' + omega_A)``
    is added; it needs the permittivity ``model`` as a function of frequency
    (the cut-off relies on eps -> 1 at high frequency).

    Note the small-distance limit of the first term for real eps is
    ``(1 + w_z) * 3/(16 qz^3) * (eps - 1)/(eps + 1)``.
    """
    shift, _ = _line_shift(cfg, method, include_integral_term, omega_max, tol, model)
    return shift


def _line_shift(cfg, method, include_integral_term, omega_max, tol, model, tensor=None):
    if method not in ("quadrature", "asymptotic"):
        raise InvalidArgumentError(f"line shift method must be quadrature or asymptotic, got {method!r}")
    r = tensor if tensor is not None else reflection_tensor(cfg, method, tol)
    shift = SIX_PI * r.contract(cfg.dipole).real
    err = SIX_PI * r.error_estimate
    if include_integral_term:
        if model is None or not callable(model):
            raise InvalidArgumentError("integral term needs a permittivity model, not a point value")
        integral, ierr = _shift_integral(cfg, model, method, omega_max, tol)
        shift -= 6.0 * integral
        err += 6.0 * ierr
    return shift, err


def snom_resolution(cfg: PlanarConfig) -> float:
    """Slope ``d(Gamma/Gamma_0)/d(qz)`` of the leading z^-3 rate law (a z^-4 law)."""
    r = reflection_tensor_leading(cfg)
    return -3.0 * SIX_PI * r.contract(cfg.dipole).imag / cfg.qz


def snom_shift_resolution(cfg: PlanarConfig) -> float:
    """Slope ``d(delta_omega/Gamma_0)/d(qz)`` of the leading line-shift term."""
    r = reflection_tensor_leading(cfg)
    return -3.0 * SIX_PI * r.contract(cfg.dipole).real / cfg.qz


def planar_rate(cfg: PlanarConfig, method: str = "quadrature", tol: float = 1e-8,
                include_integral_term: bool = False, omega_max: float = 50.0, model=None) -> RateResult:
    """Decay rate and line shift from a single tensor evaluation."""
    r = reflection_tensor(cfg, method, tol)
    gamma = 1.0 + SIX_PI * r.contract(cfg.dipole).imag
    err = SIX_PI * r.error_estimate
    shift = None
    if method != "leading":
        shift, err = _line_shift(cfg, method, include_integral_term, omega_max, tol, model, tensor=r)
    else:
        shift = SIX_PI * r.contract(cfg.dipole).real
    return RateResult(gamma=gamma, shift=shift, method=method, error_estimate=err)


__all__ = [
    "ConvergenceError",
    "PlanarConfig",
    "ReflectionTensor",
    "fresnel_rp",
    "fresnel_rs",
    "leading_rate_formula",
    "planar_decay_rate",
    "planar_line_shift",
    "planar_rate",
    "reflection_tensor",
    "reflection_tensor_asymptotic",
    "reflection_tensor_leading",
    "reflection_tensor_quadrature",
    "snom_resolution",
    "snom_shift_resolution",
]
