"""Real-cavity model: emitter at the centre of an empty sphere inside a bulk dielectric."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .core import (
    InvalidArgumentError,
    PoleError,
    RefractiveIndex,
    _check_finite,
    _check_passive,
    refractive_index,
)

#: C1N is not evaluated beyond this size parameter
MAX_SIZE = 50.0
_SERIES_CUTOFF = 0.5
_POLE_RTOL = 1e-14
_LD = np.longdouble
_CLD = np.clongdouble
_LD_EPS = np.finfo(np.longdouble).eps


@dataclass(frozen=True)
class SphericalConfig:
    """Sphere of size parameter ``size = R*omega_A/c`` in a medium of permittivity ``eps``."""

    size: float
    eps: complex

    def __post_init__(self):
        if not (math.isfinite(self.size) and self.size > 0):
            raise InvalidArgumentError(f"size must be finite and > 0, got {self.size!r}")
        eps = complex(self.eps)
        _check_finite("eps", eps)
        _check_passive(eps)
        object.__setattr__(self, "eps", eps)

    @property
    def index(self) -> RefractiveIndex:
        return refractive_index(self.eps)

    @property
    def n(self) -> complex:
        return self.index.n


def _sin_minus_zcos(z):
    """``sin z - z cos z`` without cancellation at small ``z`` (``z`` a longdouble)."""
    if z >= _SERIES_CUTOFF:
        return np.sin(z) - z * np.cos(z)
    # sum_k (-1)^(k+1) 2k z^(2k+1) / (2k+1)!
    total = _LD(0)
    term = z ** 3 / 3  # k = 1
    k = 1
    while k == 1 or abs(term) > _LD_EPS * abs(total):
        total += term
        k += 1
        term *= -z * z * k / ((k - 1) * (2 * k) * (2 * k + 1))
    return total


def c1n(size, n):
    """Generalised reflection coefficient of the electric dipole (n = 1) mode.

    Numerator and denominator are both multiplied by ``n**2 - 1``, which turns
    the vacuum case into an exact zero.  The trigonometric bracket of the
    denominator is regrouped as ``(sin z - z cos z)(1 - i n z)`` and the first
    factor is summed as a series for small ``z``.  For small ``z`` the real
    part survives a cancellation of order ``z**-2``, so the arithmetic is
    carried out in extended precision.
    """
    z = float(size)
    n = complex(n.n if isinstance(n, RefractiveIndex) else n)
    _check_finite("n", n)
    if not (z > 0 and math.isfinite(z)):
        raise InvalidArgumentError(f"size must be finite and > 0, got {size!r}")
    if z > MAX_SIZE:
        raise InvalidArgumentError(f"size {z} above supported maximum {MAX_SIZE}")
    if n == -1:
        raise InvalidArgumentError("n = -1 is not on the principal branch")
    if n * n == 1:
        return 0j
    zl = _LD(z)
    nl = _CLD(n)
    n2m1 = nl * nl - 1
    cz, sz = np.cos(zl), np.sin(zl)
    d1 = n2m1 * _sin_minus_zcos(zl) * (1 - 1j * nl * zl)
    d2 = zl ** 3 * nl * nl * (cz - 1j * nl * sz)
    den = d1 - d2
    if abs(den) <= _POLE_RTOL * (abs(d1) + abs(d2)):
        raise PoleError(f"C1N denominator vanishes at size={z}, n={n}", size=z, n=n)
    num = n2m1 * (1j + zl * (nl + 1) - 1j * zl * zl * nl - zl ** 3 * nl * nl / (nl + 1)) * (cz + 1j * sz)
    return complex(num / den)


def real_cavity_rate_exact(cfg: SphericalConfig) -> float:
    """``Gamma/Gamma_0 = 1 + Re C1N``; purely transverse."""
    return 1.0 + c1n(cfg.size, cfg.n).real


class SmallCavityTerms(NamedTuple):
    """The four contributions of the small-cavity expansion."""

    cubic: float       # ~ size^-3, absorption only
    inverse: float     # ~ size^-1, absorption only
    eta_term: float
    kappa_term: float  # enters with a minus sign, already applied

    @property
    def total(self) -> float:
        return self.cubic + self.inverse + self.eta_term + self.kappa_term


def small_cavity_terms(cfg: SphericalConfig) -> SmallCavityTerms:
    eps = cfg.eps
    eps_r, eps_i = eps.real, eps.imag
    idx = cfg.index
    d2 = abs(2.0 * eps + 1.0) ** 2
    if d2 == 0:
        raise PoleError("|2 eps + 1| = 0", size=cfg.size, n=idx.n)
    d4 = d2 * d2
    mod2 = abs(eps) ** 2
    x = 1.0 / cfg.size
    cubic = 9.0 * eps_i / d2 * x ** 3
    inverse = 9.0 * eps_i * (28.0 * mod2 + 12.0 * eps_r + 1.0) / (5.0 * d4) * x
    eta_term = 9.0 * idx.eta / d4 * (4.0 * mod2 ** 2 + 4.0 * eps_r * mod2 + eps_r ** 2 - eps_i ** 2)
    kappa_term = -9.0 * idx.kappa * eps_i / d4 * (4.0 * mod2 + 2.0 * eps_r)
    return SmallCavityTerms(cubic, inverse, eta_term, kappa_term)


def real_cavity_rate_smallR(cfg: SphericalConfig) -> float:
    """Small-cavity expansion of the real-cavity rate, accurate up to O(size)."""
    return small_cavity_terms(cfg).total


def glauber_lewenstein(n):
    """Non-absorbing real-cavity rate ``(3n^2/(2n^2 + 1))^2 n``."""
    n = np.asarray(n, dtype=float)
    if np.any(n <= 0) or not np.all(np.isfinite(n)):
        raise InvalidArgumentError("n must be real, finite and > 0")
    out = (3.0 * n * n / (2.0 * n * n + 1.0)) ** 2 * n
    return float(out) if out.ndim == 0 else out
