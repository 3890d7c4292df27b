"""Virtual-cavity (Clausius-Mossotti) local-field model in absorbing bulk media.

Small-radius forms obtained by averaging the bulk Green function over a
sphere, both arguments independently and with equal weight.  Other averaging
schemes change the numerical prefactors of the radius-dependent terms.
"""
from __future__ import annotations

import warnings

import numpy as np

from .core import InvalidArgumentError, PoleError, RateResult
from .sphere_real import SphericalConfig

#: above this value of size*|n| the expansion is outside its intended regime
VALIDITY_LIMIT = 0.3


class ExpansionValidityWarning(UserWarning):
    pass


def _check_regime(cfg):
    if cfg.size * abs(cfg.n) > VALIDITY_LIMIT:
        warnings.warn(
            f"size*|n| = {cfg.size * abs(cfg.n):.3g} > {VALIDITY_LIMIT}: small-cavity expansion "
            "used outside its regime",
            ExpansionValidityWarning,
            stacklevel=3,
        )


def virtual_rate_transverse(cfg: SphericalConfig) -> float:
    eps = cfg.eps
    eps_r, eps_i = eps.real, eps.imag
    idx = cfg.index
    x = 1.0 / cfg.size
    return (25.0 * eps_i / 54.0 * x ** 3
            + eps_i * (eps_r + 2.0) * (8.0 / 15.0 * x - 2.0 * idx.kappa / 9.0)
            + idx.eta * (abs((eps + 2.0) / 3.0) ** 2 - 2.0 * eps_i ** 2 / 9.0))


def virtual_rate_longitudinal(cfg: SphericalConfig) -> float:
    """Longitudinal part ``4 Im(eps) / (27 |eps|^2) / size^3``; zero without absorption."""
    mod2 = abs(cfg.eps) ** 2
    if mod2 == 0:
        raise PoleError("longitudinal rate diverges for eps = 0", size=cfg.size, n=0j)
    return 4.0 * cfg.eps.imag / (27.0 * mod2) / cfg.size ** 3


def virtual_rate_total(cfg: SphericalConfig) -> RateResult:
    """Total rate with its transverse/longitudinal split.

    A negative total is reported as is (with a warning), never clamped.
    """
    _check_regime(cfg)
    perp = virtual_rate_transverse(cfg)
    par = virtual_rate_longitudinal(cfg)
    total = perp + par
    if total < 0:
        warnings.warn(f"negative virtual-cavity rate {total:.6g} for eps={cfg.eps}", RuntimeWarning, stacklevel=2)
    return RateResult(gamma=total, gamma_perp=perp, gamma_par=par, method="virtual-cavity")


def lorentz_lorenz_rate(n):
    """Non-absorbing virtual-cavity rate ``((n^2 + 2)/3)^2 n``."""
    n = np.asarray(n, dtype=float)
    if np.any(n <= 0) or not np.all(np.isfinite(n)):
        raise InvalidArgumentError("n must be real, finite and > 0")
    out = ((n * n + 2.0) / 3.0) ** 2 * n
    return float(out) if out.ndim == 0 else out
