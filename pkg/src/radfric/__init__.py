"""Relativistic radiation forces on a small polarizable particle.

Two scenarios: drag through blackbody radiation, and friction plus normal
force above a planar dielectric half-space, with independent local
temperatures for the particle and the field.  Natural units hbar = c =
eps0 = 1 throughout the library; the CLI converts SI at the boundary.
"""

__version__ = "0.1.0"

from .blackbody import BlackbodyScenario, blackbody_force, blackbody_integrand, frequency_cutoff
from .breakdown import AccuracyError, ForceBreakdown, PieceValue
from .identities import (
    DEFAULT_SEED,
    contraction_identity_suite,
    dipole_orthogonality_suite,
    gauge_cancellation_residual,
    gauge_cancellation_suite,
    projector_structure_suite,
    run_all,
    weight_agreement_suite,
)
from .materials import (
    FresnelPoleError,
    LorentzOscillator,
    SurfaceMedium,
    ThermalState,
    coth_half,
    fresnel,
    fresnel_imagfreq,
    fresnel_lightcone,
    medium_kz,
    medium_kz_lightcone,
    occupation,
    occupation_difference,
    polarizability,
)
from .minkowski import (
    METRIC,
    AntisymTensor2,
    FourVector,
    InvalidVelocityError,
    contraction_identity_residual,
    doppler_frequency,
    faraday_tensor,
    force_density,
    four_velocity,
    induced_dipole,
    minkowski_dot,
    phi_contraction,
)
from .polarization import (
    DegenerateDirectionError,
    Polarization,
    polarization_projector,
    polarization_weight,
    projector_weight,
)
from .quadrature import (
    IntegralResult,
    QuadratureSpec,
    integrate_1d,
    integrate_2d_nested,
    riemann_oracle,
)
from .surface import (
    SpectralDensityPoint,
    SurfaceScenario,
    light_cone_kz,
    surface_force,
    surface_integrand,
    thermal_cutoff,
)
