"""Particle polarizability, thermal occupations, and half-space optics.

Natural units throughout: hbar = c = eps0 = 1, temperatures stored as
frequencies (k_B T / hbar).  The polarizability carries volume units in the
Heaviside-Lorentz convention (d = alpha * E with eps0 = 1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .minkowski import FourVector, four_velocity
from .polarization import Polarization, _as_pol

#: below this |omega / 2T| the coth switches to a Laurent expansion
COTH_SERIES_CUTOFF = 1e-4


@dataclass(frozen=True)
class LorentzOscillator:
    """Dispersive electric polarizability alpha(w) = a0 w0^2 / (w0^2 - w^2 - i g w).

    Analytic in the upper half plane (retarded response), crossing-symmetric
    alpha(-w) = alpha(w)* on the real axis, and absorptive: w Im alpha >= 0.
    """

    alpha0: float
    omega0: float
    gamma_d: float = 0.0

    def __post_init__(self):
        if self.alpha0 <= 0:
            raise ValueError("alpha0 must be positive")
        if self.omega0 <= 0:
            raise ValueError("omega0 must be positive")
        if self.gamma_d < 0:
            raise ValueError("gamma_d must be non-negative")

    def alpha(self, omega):
        """Polarizability at (possibly complex, possibly array) frequency."""
        w = np.asarray(omega, dtype=complex)
        out = self.alpha0 * self.omega0**2 / (self.omega0**2 - w * w - 1j * self.gamma_d * w)
        return out.item() if out.ndim == 0 else out

    def im_alpha(self, omega):
        """Im alpha at real frequency (odd in omega)."""
        w = np.asarray(omega, dtype=float)
        out = w * self.im_alpha_over_omega(w)
        return out.item() if np.ndim(out) == 0 else out

    def im_alpha_over_omega(self, omega):
        """Im alpha(w) / w, finite and even; used where coth ~ 1/w must cancel."""
        w = np.asarray(omega, dtype=float)
        denom = (self.omega0**2 - w * w) ** 2 + (self.gamma_d * w) ** 2
        out = self.alpha0 * self.omega0**2 * self.gamma_d / denom
        return out.item() if np.ndim(out) == 0 else out


def polarizability(model: LorentzOscillator, omega):
    return model.alpha(omega)


@dataclass(frozen=True)
class ThermalState:
    """Local equilibrium: temperature (frequency units) plus frame velocity.

    The inverse temperature is the timelike 4-vector u / T tangent to the
    frame's worldline; contractions beta . k give the argument of the
    occupation factors in that frame.
    """

    temperature: float
    frame_velocity: tuple = (0.0, 0.0, 0.0)

    def __post_init__(self):
        if self.temperature < 0:
            raise ValueError("temperature must be non-negative")
        v = np.asarray(self.frame_velocity, dtype=float)
        if v.shape != (3,) or float(v @ v) >= 1.0:
            raise ValueError("frame velocity must be a 3-vector with |v| < 1")
        object.__setattr__(self, "frame_velocity", tuple(float(c) for c in v))

    def four_velocity(self) -> FourVector:
        return four_velocity(self.frame_velocity)

    def beta_dot(self, k) -> float:
        """(u / T) . k; raises for T = 0 where the occupation degenerates to sgn."""
        if self.temperature == 0:
            raise ZeroDivisionError("beta is infinite at T = 0")
        from .minkowski import minkowski_dot

        return minkowski_dot(self.four_velocity(), k) / self.temperature


def occupation(omega: float, temperature: float) -> float:
    """Bose-Einstein occupation N = 1 / (exp(omega/T) - 1).

    T = 0 returns 0 for omega > 0 (and -1 for omega < 0, the coth -> sgn
    limit).  omega = 0 with T > 0 is a divergent node and raises.
    """
    if temperature < 0:
        raise ValueError("temperature must be non-negative")
    if temperature == 0.0:
        if omega == 0.0:
            raise ValueError("occupation undefined at omega = 0, T = 0")
        return 0.0 if omega > 0 else -1.0
    if omega == 0.0:
        raise ValueError("occupation diverges at omega = 0; avoid the node")
    return 1.0 / math.expm1(omega / temperature)


def coth_half(omega, temperature):
    """coth(omega / 2T), vectorized and stable.

    Small arguments use the Laurent expansion 1/x + x/3 - x^3/45; T = 0 gives
    sgn(omega).  Exact zeros of omega are mapped to 0 (caller multiplies by a
    factor vanishing there, and quadrature never samples the node).
    """
    w = np.asarray(omega, dtype=float)
    if temperature == 0.0:
        out = np.sign(w)
        return out.item() if np.ndim(out) == 0 else out
    x = w / (2.0 * temperature)
    small = np.abs(x) < COTH_SERIES_CUTOFF
    xs = np.where(small, np.where(x == 0.0, 1.0, x), 1.0)  # safe denominators
    series = 1.0 / xs + xs / 3.0 - xs**3 / 45.0
    with np.errstate(over="ignore"):
        direct = 1.0 / np.tanh(np.where(small, 1.0, x))
    out = np.where(small, np.where(x == 0.0, 0.0, series), direct)
    return out.item() if np.ndim(out) == 0 else out


def occupation_difference(omega_comoving, t_atom: float, omega, t_field: float):
    """coth(omega_comoving / 2 T_A) - coth(omega / 2 T_F), evaluated stably.

    This is the non-equilibrium driver 2N(w', T_A) - 2N(w, T_F).  For free
    modes on the light cone the two frequencies share a sign; near-surface
    evanescent modes may mix signs (anomalous Doppler range) and are handled
    by the same expression.  T = 0 reduces to sgn.
    """
    wc = np.asarray(omega_comoving, dtype=float)
    w = np.asarray(omega, dtype=float)
    if np.any(w == 0.0) or np.any(wc == 0.0):
        raise ValueError("occupation difference undefined at a zero-frequency node")
    out = coth_half(wc, t_atom) - coth_half(w, t_field)
    return out.item() if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class SurfaceMedium:
    """Non-dispersive dielectric half-space with refractive index n.

    Real n > 1 is the standard case (n = 1 gives zero reflection).  A complex
    index with Im n >= 0 is accepted behind the `lossy` flag; all formulas are
    then evaluated unchanged in complex arithmetic.
    """

    n: complex
    lossy: bool = False

    def __post_init__(self):
        n = complex(self.n)
        if n.imag != 0.0 and not self.lossy:
            raise ValueError("complex index requires lossy=True")
        if n.imag < 0.0:
            raise ValueError("Im n must be non-negative")
        if n.imag == 0.0:
            if n.real < 1.0:
                raise ValueError("real refractive index must satisfy n >= 1")
            object.__setattr__(self, "n", float(n.real))
        else:
            object.__setattr__(self, "n", n)

    @property
    def is_lossless(self) -> bool:
        return complex(self.n).imag == 0.0


class FresnelPoleError(ArithmeticError):
    """A reflection-coefficient denominator vanished (surface-mode pole)."""


def medium_kz(medium: SurfaceMedium, kz, kpar):
    """z-wavevector inside the medium, kz' = sqrt(n^2 kz^2 + (n^2 - 1) kpar^2).

    Principal square root: Re kz' >= 0, and on the negative real axis of the
    radicand the branch with Im kz' > 0 is taken.  On the light cone this
    reduces to sqrt(n^2 w^2 - kpar^2), positive real for kpar < n|w| and
    positive imaginary beyond (decaying transmitted wave).
    """
    n2 = complex(medium.n) ** 2
    radicand = n2 * np.asarray(kz, dtype=complex) ** 2 + (n2 - 1.0) * np.asarray(kpar) ** 2
    out = np.sqrt(radicand)
    return out.item() if np.ndim(out) == 0 else out


def medium_kz_lightcone(medium: SurfaceMedium, omega, kpar):
    """kz' evaluated on the light cone: sqrt(n^2 w^2 - kpar^2), Im >= 0 branch.

    Vectorized over omega/kpar.  For lossless media the result is constructed
    piecewise so the real and imaginary parts are exactly zero in their
    respective sectors.
    """
    if not medium.is_lossless:
        n2 = complex(medium.n) ** 2
        out = np.sqrt(n2 * np.asarray(omega, dtype=complex) ** 2 - np.asarray(kpar) ** 2)
        out = np.where(np.imag(out) < 0, -out, out)
        return out.item() if np.ndim(out) == 0 else out
    n = float(np.real(medium.n))
    w = np.asarray(omega, dtype=float)
    k = np.asarray(kpar, dtype=float)
    rad = n * n * w * w - k * k
    inside = rad >= 0.0
    out = np.where(
        inside,
        np.sqrt(np.where(inside, rad, 0.0)) + 0.0j,
        1j * np.sqrt(np.where(inside, 0.0, -rad)),
    )
    return out.item() if np.ndim(out) == 0 else out


_POLE_RTOL = 1e-14


def _fresnel_from_kz(sigma: Polarization, n2: complex, kz, kzp):
    if sigma is Polarization.S:
        num, den = kz - kzp, kz + kzp
    elif sigma is Polarization.P:
        num, den = n2 * kz - kzp, n2 * kz + kzp
    else:  # scalar and longitudinal channels share one amplitude
        num, den = kz - n2 * kzp, kz + n2 * kzp
    scale = np.abs(n2 * kz) + np.abs(kz) + np.abs(n2 * kzp) + np.abs(kzp)
    if np.any(np.abs(den) <= _POLE_RTOL * scale):
        raise FresnelPoleError(f"reflection denominator vanished for sigma={sigma.value}")
    out = num / den
    return out.item() if np.ndim(out) == 0 else out


def fresnel(sigma, medium: SurfaceMedium, kz, kpar):
    """Reflection amplitude of the half-space for channel sigma at (kz, kpar):

        r_s = (kz - kz') / (kz + kz')
        r_p = (n^2 kz - kz') / (n^2 kz + kz')
        r_l = r_k = (kz - n^2 kz') / (kz + n^2 kz')

    with kz' from medium_kz.  Raises FresnelPoleError on a vanishing
    denominator instead of returning a silent infinity.
    """
    pol = _as_pol(sigma)
    kzp = medium_kz(medium, kz, kpar)
    return _fresnel_from_kz(pol, complex(medium.n) ** 2, np.asarray(kz, dtype=complex), kzp)


def fresnel_lightcone(medium: SurfaceMedium, omega, kpar):
    """(r_s, r_p) on the light cone, vectorized: kz = i kappa, kz' decaying branch."""
    from .surface import light_cone_kz  # late import; surface builds on materials

    kz = 1j * light_cone_kz(omega, kpar)
    kzp = medium_kz_lightcone(medium, omega, kpar)
    n2 = complex(medium.n) ** 2
    r_s = _fresnel_from_kz(Polarization.S, n2, kz, kzp)
    r_p = _fresnel_from_kz(Polarization.P, n2, kz, kzp)
    return r_s, r_p


def fresnel_imagfreq(medium: SurfaceMedium, xi, kpar):
    """(r_s, r_p) at imaginary frequency w = i xi (both real for lossless media).

    kz = i sqrt(k^2 + xi^2), kz' = i sqrt(k^2 + n^2 xi^2):

        r_s = (kap - kap_m) / (kap + kap_m)
        r_p = (n^2 kap - kap_m) / (n^2 kap + kap_m)
    """
    n2 = complex(medium.n) ** 2
    xi = np.asarray(xi, dtype=float)
    k = np.asarray(kpar, dtype=float)
    kap = np.sqrt(k * k + xi * xi)
    kap_m = np.sqrt(k * k + n2 * xi * xi)
    r_s = (kap - kap_m) / (kap + kap_m)
    r_p = (n2 * kap - kap_m) / (n2 * kap + kap_m)
    if medium.is_lossless:
        r_s, r_p = np.real(r_s), np.real(r_p)
    return r_s, r_p
