"""Shared vocabulary: permittivity models, refractive index, dipole orientation.

Everything is dimensionless. Frequencies are measured in units of the medium
resonance frequency omega_T, distances through q*z = omega*z/c (planar) or
R*omega/c (spherical), decay rates as Gamma/Gamma_0 and line shifts as
delta_omega/Gamma_0.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

#: (0.46)**2, the oscillator strength of the single-resonance model.
DEFAULT_COUPLING_SQ = 0.2116


class DecayKitError(Exception):
    """Base class for all errors raised by decaykit."""


class InvalidArgumentError(DecayKitError, ValueError):
    pass


class ConvergenceError(DecayKitError, RuntimeError):
    """Quadrature did not reach the requested tolerance.

    The best available estimate is kept on the exception so callers may
    still inspect (or report) it.
    """

    def __init__(self, message, estimate=complex("nan"), abs_error=math.inf, evaluations=0):
        super().__init__(message)
        self.estimate = estimate
        self.abs_error = abs_error
        self.evaluations = evaluations


class PoleError(DecayKitError, ArithmeticError):
    """A closed-form rate expression hit (numerically) a true pole."""

    def __init__(self, message, size=None, n=None):
        super().__init__(message)
        self.size = size
        self.n = n


def _check_finite(name, value):
    if not cmath.isfinite(complex(value)):
        raise InvalidArgumentError(f"{name} must be finite, got {value!r}")


def _check_passive(eps, omega=None):
    if eps.imag < 0.0:
        where = "" if omega is None else f" at omega={omega!r}"
        raise InvalidArgumentError(
            f"permittivity {eps!r}{where} has negative imaginary part (active medium)"
        )


# --------------------------------------------------------------------------
# permittivity models
# --------------------------------------------------------------------------

def lorentz_permittivity(omega, coupling_sq=DEFAULT_COUPLING_SQ, gamma=0.05):
    """Single-resonance (Drude-Lorentz) permittivity.

    ``eps(w) = 1 + coupling_sq / (1 - w**2 - 1j*gamma*w)`` with ``w`` in units
    of the resonance frequency. Accepts scalars or arrays for ``omega``.
    """
    for name, v in (("coupling_sq", coupling_sq), ("gamma", gamma)):
        _check_finite(name, v)
    if np.ndim(omega) == 0:
        _check_finite("omega", omega)
    elif not np.all(np.isfinite(omega)):
        raise InvalidArgumentError("omega must be finite")
    if gamma < 0:
        raise InvalidArgumentError(f"gamma must be >= 0, got {gamma!r}")
    if coupling_sq <= 0:
        raise InvalidArgumentError(f"coupling_sq must be > 0, got {coupling_sq!r}")
    w = np.asarray(omega, dtype=float)
    if np.any(w <= 0):
        raise InvalidArgumentError("omega must be > 0")
    eps = 1.0 + coupling_sq / (1.0 - w * w - 1j * gamma * w)
    return complex(eps) if eps.ndim == 0 else eps


@dataclass(frozen=True)
class LorentzPermittivity:
    coupling_sq: float = DEFAULT_COUPLING_SQ
    gamma: float = 0.05
    kind: str = field(default="lorentz", init=False)

    def __post_init__(self):
        if not (math.isfinite(self.gamma) and self.gamma >= 0):
            raise InvalidArgumentError(f"gamma must be finite and >= 0, got {self.gamma!r}")
        if not (math.isfinite(self.coupling_sq) and self.coupling_sq > 0):
            raise InvalidArgumentError(f"coupling_sq must be finite and > 0, got {self.coupling_sq!r}")

    def __call__(self, omega):
        return lorentz_permittivity(omega, self.coupling_sq, self.gamma)

    def describe(self):
        return {"kind": self.kind, "coupling_sq": self.coupling_sq, "gamma": self.gamma}


@dataclass(frozen=True)
class ConstantPermittivity:
    eps: complex = 1.0 + 0j
    kind: str = field(default="constant", init=False)

    def __post_init__(self):
        object.__setattr__(self, "eps", complex(self.eps))
        _check_finite("eps", self.eps)
        _check_passive(self.eps)

    def __call__(self, omega):
        if np.ndim(omega) == 0:
            return self.eps
        return np.full(np.shape(omega), self.eps, dtype=complex)

    def describe(self):
        return {"kind": self.kind, "eps_real": self.eps.real, "eps_imag": self.eps.imag}


class TablePermittivity:
    """Tabulated eps(omega), linear interpolation of the real and imaginary parts.

    Queries outside the tabulated range raise instead of extrapolating.
    """

    kind = "table"

    def __init__(self, omega: Sequence[float], eps: Sequence[complex], source: Optional[str] = None):
        w = np.asarray(omega, dtype=float)
        e = np.asarray(eps, dtype=complex)
        if w.ndim != 1 or w.shape != e.shape or w.size < 2:
            raise InvalidArgumentError("table needs >= 2 matching (omega, eps) samples")
        if not (np.all(np.isfinite(w)) and np.all(np.isfinite(e))):
            raise InvalidArgumentError("table contains non-finite values")
        if np.any(np.diff(w) <= 0):
            raise InvalidArgumentError("table omega values must be strictly increasing")
        if np.any(e.imag < 0):
            raise InvalidArgumentError("table contains samples with Im eps < 0")
        w.setflags(write=False)
        e.setflags(write=False)
        self.omega = w
        self.eps = e
        self.source = source

    @classmethod
    def from_file(cls, path: Union[str, Path]):
        """Read ``omega_over_omegaT eps_real eps_imag`` rows; ``#`` starts a comment."""
        rows = []
        with open(path) as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                parts = line.split()
                if len(parts) != 3:
                    raise InvalidArgumentError(f"{path}:{lineno}: expected 3 columns, got {len(parts)}")
                try:
                    rows.append([float(p) for p in parts])
                except ValueError as exc:
                    raise InvalidArgumentError(f"{path}:{lineno}: {exc}") from None
        if not rows:
            raise InvalidArgumentError(f"{path}: no data rows")
        a = np.array(rows)
        return cls(a[:, 0], a[:, 1] + 1j * a[:, 2], source=str(path))

    def __call__(self, omega):
        w = np.asarray(omega, dtype=float)
        if np.any(w < self.omega[0]) or np.any(w > self.omega[-1]):
            raise InvalidArgumentError(
                f"omega outside tabulated range [{self.omega[0]}, {self.omega[-1]}]"
            )
        re = np.interp(w, self.omega, self.eps.real)
        im = np.interp(w, self.omega, self.eps.imag)
        out = re + 1j * im
        return complex(out) if out.ndim == 0 else out

    @property
    def omega_range(self):
        return float(self.omega[0]), float(self.omega[-1])

    def describe(self):
        return {"kind": self.kind, "source": self.source, "points": int(self.omega.size)}

    def __repr__(self):
        return f"TablePermittivity(points={self.omega.size}, range={self.omega_range})"


ComplexPermittivity = Union[LorentzPermittivity, ConstantPermittivity, TablePermittivity]


# --------------------------------------------------------------------------
# refractive index
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class RefractiveIndex:
    """Complex refractive index ``n = eta + 1j*kappa``."""

    n: complex

    @property
    def eta(self) -> float:
        return self.n.real

    @property
    def kappa(self) -> float:
        return self.n.imag


def refractive_index(eps) -> RefractiveIndex:
    """Principal square root of ``eps``.

    The branch is chosen with Re n >= 0 and, for passive media, Im n >= 0;
    a negative zero in Im eps must not flip the sign of kappa.
    """
    eps = complex(eps)
    _check_finite("eps", eps)
    n = cmath.sqrt(complex(eps.real, abs(eps.imag)) if eps.imag == 0 else eps)
    if n.real < 0 or (n.real == 0 and n.imag < 0):
        n = -n
    return RefractiveIndex(n)


# --------------------------------------------------------------------------
# dipole
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class DipoleConfig:
    """Transition frequency and squared dipole direction cosines.

    ``weights = (mu_x**2, mu_y**2, mu_z**2) / mu**2``; z is the symmetry
    axis (normal to a planar interface).
    """

    omega_a: float = 1.0
    weights: tuple = (0.0, 0.0, 1.0)

    def __post_init__(self):
        w = tuple(float(x) for x in self.weights)
        if len(w) != 3:
            raise InvalidArgumentError("dipole weights need three components")
        if any(not math.isfinite(x) or x < 0 or x > 1 for x in w):
            raise InvalidArgumentError(f"dipole weights must lie in [0, 1], got {w}")
        if abs(sum(w) - 1.0) > 1e-12:
            raise InvalidArgumentError(f"dipole weights must sum to 1, got {sum(w)!r}")
        if not (math.isfinite(self.omega_a) and self.omega_a > 0):
            raise InvalidArgumentError(f"omega_a must be > 0, got {self.omega_a!r}")
        object.__setattr__(self, "weights", w)

    @classmethod
    def from_vector(cls, mu, omega_a=1.0):
        """Build from an (unnormalised) dipole vector."""
        mu = np.asarray(mu, dtype=float)
        norm2 = float(mu @ mu)
        if norm2 <= 0 or not math.isfinite(norm2):
            raise InvalidArgumentError("dipole vector must be finite and nonzero")
        w = mu * mu / norm2
        # renormalise against round-off so the sum-to-one check is exact enough
        return cls(omega_a, tuple(w / w.sum()))

    @property
    def in_plane(self) -> float:
        return self.weights[0] + self.weights[1]

    @property
    def normal(self) -> float:
        return self.weights[2]

    @property
    def wavelength(self) -> float:
        """Transition wavelength 2*pi*c/omega_a in units of c/omega_T."""
        return 2 * math.pi / self.omega_a


# --------------------------------------------------------------------------
# results
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class RateResult:
    gamma: float
    shift: Optional[float] = None
    gamma_perp: Optional[float] = None
    gamma_par: Optional[float] = None
    method: str = ""
    error_estimate: float = 0.0
