"""Spontaneous decay of a dipole emitter near absorbing, dispersive dielectrics.

Rates are reported as Gamma/Gamma_0 and shifts as delta_omega/Gamma_0, with
frequencies in units of the medium resonance omega_T.
"""
__version__ = "0.1.0"

from ._accel import backend
from .core import (
    ComplexPermittivity,
    ConstantPermittivity,
    ConvergenceError,
    DecayKitError,
    DipoleConfig,
    InvalidArgumentError,
    LorentzPermittivity,
    PoleError,
    RateResult,
    RefractiveIndex,
    TablePermittivity,
    lorentz_permittivity,
    refractive_index,
)
from .planar import (
    PlanarConfig,
    ReflectionTensor,
    fresnel_rp,
    fresnel_rs,
    leading_rate_formula,
    planar_decay_rate,
    planar_line_shift,
    planar_rate,
    reflection_tensor,
    reflection_tensor_asymptotic,
    reflection_tensor_leading,
    reflection_tensor_quadrature,
    snom_resolution,
    snom_shift_resolution,
)
from .quadrature import QuadratureResult, integrate_segment, integrate_tail
from .sphere_real import (
    SphericalConfig,
    c1n,
    glauber_lewenstein,
    real_cavity_rate_exact,
    real_cavity_rate_smallR,
    small_cavity_terms,
)
from .virtual_cavity import (
    ExpansionValidityWarning,
    lorentz_lorenz_rate,
    virtual_rate_longitudinal,
    virtual_rate_total,
    virtual_rate_transverse,
)
