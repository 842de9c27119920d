"""Polarization projectors and the real weight functions they reduce to.

The four reflection channels of the half-space photon kernel are the two
transverse polarizations (s, p) plus a scalar (l) and a longitudinal (k)
channel that appear in the generalized Coulomb gauge.  On the light cone the
l and k channels cancel against each other; only s and p carry force, with
real weights phi_s, phi_p given in closed form below.
"""
from __future__ import annotations

from enum import Enum

import numpy as np

from .minkowski import _components, phi_contraction


class Polarization(str, Enum):
    S = "s"
    P = "p"
    L = "l"
    K = "k"


class DegenerateDirectionError(ValueError):
    """Projector requested for a direction where it is singular (k_par = 0)."""


def _as_pol(sigma) -> Polarization:
    if isinstance(sigma, Polarization):
        return sigma
    return Polarization(str(sigma))


def polarization_projector(sigma, k) -> np.ndarray:
    """4x4 projector matrix (indices down) for the channel sigma at wavevector k.

    Spatial blocks, with kpar2 = kx^2 + ky^2 and kvec2 = kx^2 + ky^2 + kz^2:

        s:  [[-ky^2, kx ky, 0], [kx ky, -kx^2, 0], [0, 0, 0]] / kpar2
        p:  [[kz^2 kx^2, kz^2 kx ky,  kz kx kpar2],
             [kz^2 kx ky, kz^2 ky^2,  kz ky kpar2],
             [-kz kx kpar2, -kz ky kpar2, -kpar2^2]] / (kpar2 * kvec2)
        l:  only the (0,0) entry, equal to 1
        k:  -outer(kvec, kvec_r) / kvec2 with kvec_r = (kx, ky, -kz)

    All other components vanish.  The k-channel couples the incident and the
    z-reflected direction, so it is not symmetric; this asymmetry is what
    makes the l/k cancellation on the light cone exact.

    kz may be complex (evanescent light-cone modes have kz = i*kappa).
    """
    pol = _as_pol(sigma)
    kv = _components(k).astype(complex)
    _, kx, ky, kz = kv
    kpar2 = kx * kx + ky * ky
    kvec2 = kpar2 + kz * kz

    out = np.zeros((4, 4), dtype=complex)
    if pol is Polarization.L:
        out[0, 0] = 1.0
        return out
    if pol in (Polarization.S, Polarization.P) and kpar2 == 0:
        raise DegenerateDirectionError("s/p projector undefined at k_par = 0")
    if pol in (Polarization.P, Polarization.K) and kvec2 == 0:
        raise DegenerateDirectionError("p/k projector singular at kvec^2 = 0")

    if pol is Polarization.S:
        out[1:, 1:] = (
            np.array(
                [
                    [-ky * ky, kx * ky, 0.0],
                    [kx * ky, -kx * kx, 0.0],
                    [0.0, 0.0, 0.0],
                ]
            )
            / kpar2
        )
    elif pol is Polarization.P:
        out[1:, 1:] = (
            np.array(
                [
                    [kz * kz * kx * kx, kz * kz * kx * ky, kz * kx * kpar2],
                    [kz * kz * kx * ky, kz * kz * ky * ky, kz * ky * kpar2],
                    [-kz * kx * kpar2, -kz * ky * kpar2, -kpar2 * kpar2],
                ]
            )
            / (kpar2 * kvec2)
        )
    else:  # Polarization.K
        kvec = np.array([kx, ky, kz])
        kvec_r = np.array([kx, ky, -kz])
        out[1:, 1:] = -np.outer(kvec, kvec_r) / kvec2
    return out


def _phi_weights(v: float, omega, kx, ky):
    """Closed-form light-cone weights (phi_s, phi_p) for motion v along x.

    Valid for complex omega as well (used on the imaginary frequency axis);
    broadcasts over array arguments.  Requires kx^2 + ky^2 > 0.
    """
    gamma2 = 1.0 / (1.0 - v * v)
    kpar2 = kx * kx + ky * ky
    doppler2 = gamma2 * (omega - v * kx) ** 2
    edge = 1.0 - omega * omega / kpar2
    phi_s = doppler2 + 2.0 * gamma2 * (v * ky) ** 2 * edge
    phi_p = doppler2 + 2.0 * gamma2 * (kpar2 - (v * kx) ** 2) * edge
    return phi_s, phi_p


def polarization_weight(sigma, v: float, omega: float, kpar) -> float:
    """Real weight phi_sigma (sigma in {s, p}) for speed v along x.

    kpar is the transverse wavevector (kx, ky).  Equals the projector-based
    contraction phi_contraction(P_sigma, u, k, -k_r) for k on the light cone.
    """
    pol = _as_pol(sigma)
    if pol not in (Polarization.S, Polarization.P):
        raise ValueError("closed-form weights exist for s and p only")
    kx, ky = (float(c) for c in np.asarray(kpar, dtype=float))
    if kx * kx + ky * ky == 0.0:
        raise DegenerateDirectionError("weights undefined at k_par = 0")
    phi_s, phi_p = _phi_weights(float(v), float(omega), kx, ky)
    return float(phi_s if pol is Polarization.S else phi_p)


def projector_weight(sigma, u, k) -> complex:
    """Weight phi_sigma evaluated from the projector contraction.

    Uses h = -k_r with k_r = (omega, kx, ky, -kz), the reflected partner of k.
    This is the independent route against which the closed forms are checked.
    """
    kv = _components(k).astype(complex)
    kr = kv * np.array([1.0, 1.0, 1.0, -1.0])
    proj = polarization_projector(sigma, kv)
    return complex(phi_contraction(proj, u, kv, -kr))
