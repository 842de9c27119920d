"""Minkowski tensor algebra with signature (+, -, -, -).

All vectors are stored with contravariant components (t, x, y, z); covariant
components are produced on demand with the metric.  Light-cone wavevectors in
the evanescent sector have an imaginary z-component, so every contraction in
this module also accepts plain length-4 complex arrays in place of a
:class:`FourVector`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

#: Metric tensor g_{mu nu} = diag(+1, -1, -1, -1).
METRIC = np.diag([1.0, -1.0, -1.0, -1.0])
_G = np.array([1.0, -1.0, -1.0, -1.0])


class InvalidVelocityError(ValueError):
    """3-velocity at or above the speed of light (natural units, c = 1)."""


@dataclass(frozen=True)
class FourVector:
    """Contravariant Minkowski 4-vector."""

    t: float
    x: float
    y: float
    z: float

    def as_array(self) -> np.ndarray:
        return np.array([self.t, self.x, self.y, self.z])

    def covariant(self) -> np.ndarray:
        """Components with the index lowered: (t, -x, -y, -z)."""
        return _G * self.as_array()

    def dot(self, other) -> float | complex:
        return minkowski_dot(self, other)

    def spatial(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])


def _components(a) -> np.ndarray:
    """Contravariant components of a FourVector or any length-4 array."""
    if isinstance(a, FourVector):
        return a.as_array()
    arr = np.asarray(a)
    if arr.shape[-1] != 4:
        raise ValueError(f"expected 4 components, got shape {arr.shape}")
    return arr


def minkowski_dot(a, b) -> float | complex:
    """Bilinear scalar product a.b = a_t b_t - a_x b_x - a_y b_y - a_z b_z.

    No complex conjugation is applied; light-cone vectors with imaginary
    z-component satisfy k.k = 0 in the bilinear sense.
    """
    av, bv = _components(a), _components(b)
    out = np.sum(_G * av * bv, axis=-1)
    return out.item() if out.ndim == 0 else out


def four_velocity(v) -> FourVector:
    """4-velocity gamma * (1, v) of a point moving with 3-velocity v, |v| < 1."""
    vx, vy, vz = (float(c) for c in np.asarray(v, dtype=float))
    v2 = vx * vx + vy * vy + vz * vz
    if v2 >= 1.0:
        raise InvalidVelocityError(f"|v| = {math.sqrt(v2)} >= 1")
    gamma = 1.0 / math.sqrt(1.0 - v2)
    return FourVector(gamma, gamma * vx, gamma * vy, gamma * vz)


def doppler_frequency(u, k) -> float | complex:
    """Frequency u.k of the mode k seen in the frame moving with 4-velocity u."""
    return minkowski_dot(u, k)


@dataclass(frozen=True)
class AntisymTensor2:
    """Rank-2 antisymmetric tensor, components with both indices down.

    Antisymmetry is exact: construction fails unless matrix == -matrix.T
    element by element.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix)
        if m.shape != (4, 4):
            raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
        if not np.array_equal(m, -m.T):
            raise ValueError("matrix is not exactly antisymmetric")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)


def faraday_tensor(efield, bfield) -> AntisymTensor2:
    """Field-strength tensor F_{mu nu} built from 3-vectors E and B.

    Layout: F_{0i} = E_i and F_{ij} = -eps_{ijk} B_k.  The relative sign of
    the two blocks is fixed by requiring force_density() to reproduce the
    3-force rho*E + j x B with the (+,-,-,-) metric.
    """
    ex, ey, ez = (float(c) for c in np.asarray(efield, dtype=float))
    bx, by, bz = (float(c) for c in np.asarray(bfield, dtype=float))
    m = np.array(
        [
            [0.0, ex, ey, ez],
            [-ex, 0.0, -bz, by],
            [-ey, bz, 0.0, -bx],
            [-ez, -by, bx, 0.0],
        ]
    )
    return AntisymTensor2(m)


def force_density(field: AntisymTensor2, j) -> FourVector:
    """Lorentz force density f^mu = g^{mu nu} F_{nu kappa} j^kappa.

    Returned with the index raised, so the spatial part is the ordinary
    3-force density rho*E + j x B and the time component is the power
    density j.E.
    """
    jv = _components(j)
    f_cov = field.matrix @ jv
    f_con = _G * f_cov
    return FourVector(*(float(c) for c in f_con))


def induced_dipole(alpha, field: AntisymTensor2, u) -> np.ndarray:
    """Dipole 4-vector d^mu = alpha g^{mu kappa} F_{kappa lambda} u^lambda.

    Orthogonal to u by antisymmetry of F; the component parallel to u is
    identically zero in this construction.
    """
    uv = _components(u)
    return alpha * (_G * (field.matrix @ uv))


def _phi_contraction_terms(green, u, k, h):
    """The four summands of phi_contraction, separately (for scale estimates)."""
    g = np.asarray(green)
    uv, kv, hv = _components(u), _components(k), _components(h)
    uk = np.sum(_G * uv * kv, axis=-1)
    uh = np.sum(_G * uv * hv, axis=-1)
    kh = np.sum(_G * kv * hv, axis=-1)
    trace = np.sum(np.diagonal(g, axis1=-2, axis2=-1) * _G, axis=-1)
    ugu = np.einsum("...n,...nk,...k->...", uv, g, uv)
    ugk = np.einsum("...n,...nk,...k->...", uv, g, kv)
    hgu = np.einsum("...n,...nk,...k->...", hv, g, uv)
    return (-uk * uh * trace, -kh * ugu, uh * ugk, uk * hgu)


def phi_contraction(green, u, k, h):
    """Scalar contraction of a (lower-index) 4x4 matrix with u, k and h:

        -(u.k)(u.h) tr G - (k.h) uGu + (u.h) uGk + (u.k) hGu

    where tr G = g^{kappa nu} G_{nu kappa} and aGb = a^nu b^kappa G_{nu kappa}.
    The same contraction serves for any matrix argument (free-space or
    reflected photon kernels, polarization projectors); only the matrix
    plugged in changes.

    Supports leading batch dimensions on all arguments.
    """
    g = np.asarray(green)
    uv, kv, hv = _components(u), _components(k), _components(h)
    uk = np.sum(_G * uv * kv, axis=-1)
    uh = np.sum(_G * uv * hv, axis=-1)
    kh = np.sum(_G * kv * hv, axis=-1)
    # one index raised: g^{kappa nu} G_{nu kappa} = sum_k G_kk * g_kk
    trace = np.sum(np.diagonal(g, axis1=-2, axis2=-1) * _G, axis=-1)
    ugu = np.einsum("...n,...nk,...k->...", uv, g, uv)
    ugk = np.einsum("...n,...nk,...k->...", uv, g, kv)
    hgu = np.einsum("...n,...nk,...k->...", hv, g, uv)
    out = -uk * uh * trace - kh * ugu + uh * ugk + uk * hgu
    return out.item() if np.ndim(out) == 0 else out


def _antisym_bracket(u) -> np.ndarray:
    """Rank-4 array u^[a] g^[b][c] u^[d] expanded over odd index pairs:

        T[a,b,c,d] = u^a g^{bc} u^d - u^b g^{ac} u^d
                     - u^a g^{bd} u^c + u^b g^{ad} u^c
    """
    uv = _components(u)
    t1 = np.einsum("...a,bc,...d->...abcd", uv, METRIC, uv)
    t2 = np.einsum("...b,ac,...d->...abcd", uv, METRIC, uv)
    t3 = np.einsum("...a,bd,...c->...abcd", uv, METRIC, uv)
    t4 = np.einsum("...b,ad,...c->...abcd", uv, METRIC, uv)
    return t1 - t2 - t3 + t4


def contraction_identity_residual(green, u, k, h) -> float | np.ndarray:
    """Residual of the rank-4 contraction identity behind the force reduction.

    Builds the kernel K_{mu nu kappa lambda} = k_mu G_{nu kappa} h_lambda
    + k_nu G_{mu lambda} h_kappa, contracts it with
    -k_eta u^[kappa] g^[lambda][eta] u^[nu], and compares against
    k_mu * phi_contraction(G, u, k, h).  The result collapses onto the
    single scalar function for any 4x4 matrix G, which is what makes the
    reduced force formulas possible.

    Returns max-abs residual over mu, normalized by the size of the terms
    entering the contraction.  Supports batched inputs.
    """
    g = np.asarray(green, dtype=complex)
    uv = _components(u).astype(complex)
    kv = _components(k).astype(complex)
    hv = _components(h).astype(complex)
    kcov = _G * kv
    hcov = _G * hv

    kernel = np.einsum("...m,...nk,...l->...mnkl", kcov, g, hcov) + np.einsum(
        "...n,...ml,...k->...mnkl", kcov, g, hcov
    )
    # contract kernel_{m n kappa lambda} with the bracket T^{kappa lambda eta nu}
    # and with -k_eta
    bracket = _antisym_bracket(uv)
    lhs = -np.einsum("...mnkl,...klen,...e->...m", kernel, bracket, kcov)
    rhs = kcov * np.asarray(phi_contraction(g, uv, kv, hv))[..., None]

    norm_u = np.sqrt(np.sum(np.abs(uv) ** 2, axis=-1))
    norm_k = np.sqrt(np.sum(np.abs(kv) ** 2, axis=-1))
    norm_h = np.sqrt(np.sum(np.abs(hv) ** 2, axis=-1))
    gmax = np.max(np.abs(g), axis=(-2, -1))
    scale = np.maximum(
        np.maximum(np.max(np.abs(lhs), axis=-1), np.max(np.abs(rhs), axis=-1)),
        4.0 * gmax * (1.0 + norm_u**2) * norm_k * norm_h,
    )
    resid = np.max(np.abs(lhs - rhs), axis=-1) / np.maximum(scale, 1e-300)
    return resid.item() if np.ndim(resid) == 0 else resid
