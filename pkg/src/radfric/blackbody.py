"""Radiative force on a particle moving through isotropic thermal radiation.

The force is carried entirely by light-cone modes.  With the velocity along
x, the azimuthal integral is analytic (the integrand depends on the
propagation direction only through c = cos(theta)), and the negative
frequencies fold onto omega > 0 under (omega, k_x) -> (-omega, -k_x), under
which every retained integrand is even.  What remains is the 2-D reduced
integral over omega in (0, Lambda] and c in [-1, 1]:

    F^mu = (hbar * gamma / 4 pi^2) Int dw Int dc  w^4 khat^mu (1 - v c)^2
             * Im alpha(w')  * [thermal factor],   w' = gamma w (1 - v c)

with khat^x = c, khat^0 = 1.  The total carries the occupation difference
2N(w', T_A) - 2N(w, T_F); the reported pieces carry the field part
2N(w, T_F) and the dipole part coth(w'/2T_A) - 1 separately.  Each printed
piece also contains a common temperature-independent term whose frequency
integral does not converge; it cancels identically between the pieces, so
the pieces are reported relative to it (their sum is exactly the printed
total force).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .breakdown import AccuracyError, ForceBreakdown, PieceValue
from .materials import LorentzOscillator, coth_half, occupation_difference
from .quadrature import QuadratureSpec, _Accountant, _adaptive_vector, _initial_edges

#: factor by which the thermal decay scale is multiplied to place the
#: frequency cutoff; exp(-80) ~ 1.8e-35 leaves the truncated tail far below
#: any tolerance this module runs at, even against resonance enhancement.
CUTOFF_DECADES = 80.0


@dataclass(frozen=True)
class BlackbodyScenario:
    """Particle at temperature T_A moving with speed v (along x) through
    blackbody radiation at temperature T_F."""

    particle: LorentzOscillator
    v: float
    t_atom: float
    t_field: float

    def __post_init__(self):
        if not 0.0 <= abs(self.v) < 1.0:
            raise ValueError("speed must satisfy |v| < 1")
        if self.t_atom < 0 or self.t_field < 0:
            raise ValueError("temperatures must be non-negative")

    @property
    def gamma(self) -> float:
        return 1.0 / math.sqrt(1.0 - self.v * self.v)


def frequency_cutoff(scenario: BlackbodyScenario) -> float:
    """Frequency beyond which the occupation difference is negligible.

    The dipole piece decays on the Doppler-compressed scale
    T_A * gamma * (1 + |v|); the field piece on T_F.  Returns 0 when both
    temperatures vanish (the force is then identically zero).
    """
    doppler = scenario.gamma * (1.0 + abs(scenario.v))
    scale = max(scenario.t_field, scenario.t_atom * doppler)
    return CUTOFF_DECADES * scale


def _kernel(scenario: BlackbodyScenario, omega, c, mu: str):
    """Common reduced kernel (everything except the thermal factor)."""
    v, gamma = scenario.v, scenario.gamma
    omega = np.asarray(omega, dtype=float)
    c = np.asarray(c, dtype=float)
    w_comoving = gamma * omega * (1.0 - v * c)
    khat = c if mu == "x" else np.ones_like(c * omega)
    kern = (gamma / (4.0 * np.pi**2)) * omega**4 * khat * (1.0 - v * c) ** 2
    return kern * scenario.particle.im_alpha(w_comoving), w_comoving


def blackbody_integrand(scenario: BlackbodyScenario, omega, c, mu: str = "x"):
    """Summed (piece 1 + piece 2) reduced integrand at (omega, cos theta).

    Folded to omega > 0; thermal factor is the occupation difference, so the
    integrand vanishes pointwise at equilibrium (v = 0, T_A = T_F).
    Broadcasts over array arguments.
    """
    if mu not in ("x", "0"):
        raise ValueError("mu must be 'x' or '0'")
    kern, w_comoving = _kernel(scenario, omega, c, mu)
    occ = occupation_difference(w_comoving, scenario.t_atom, omega, scenario.t_field)
    out = -occ * kern
    return out.item() if np.ndim(out) == 0 else out


def _thermal_field_factor(omega, t_field):
    """2 N(omega, T_F) = coth(omega/2T_F) - 1 for omega > 0."""
    return coth_half(omega, t_field) - 1.0


def _thermal_atom_factor(w_comoving, t_atom):
    """coth(w'/2T_A) - 1; reduces to sgn(w') - 1 at T_A = 0."""
    return coth_half(w_comoving, t_atom) - 1.0


def blackbody_force(scenario: BlackbodyScenario, quad: QuadratureSpec | None = None) -> ForceBreakdown:
    """F_x and F_0 (pieces and totals) for motion through blackbody radiation.

    Integrates the four piece-integrands in one adaptive pass over the
    shared domain omega in (0, Lambda], c in [-1, 1].  At T_A = T_F = 0 the
    thermal factors vanish identically and the exact zero is returned
    without integrating.  Raises AccuracyError (carrying the best estimate)
    if the quadrature does not converge.
    """
    quad = quad or QuadratureSpec(rel_tol=1e-8, abs_tol=1e-14)
    lam = frequency_cutoff(scenario)
    if lam == 0.0:
        zero = PieceValue(0.0, 0.0, 0.0, 0.0, 0, True)
        return ForceBreakdown({"fx": zero, "f0": zero})

    inner_spec = QuadratureSpec(
        rel_tol=quad.rel_tol / 4.0,
        abs_tol=quad.abs_tol / (4.0 * lam),
        max_subdivisions=quad.max_subdivisions,
    )
    acct = _Accountant()
    inner_bad = [0]

    def omega_integrand(omegas):
        out = np.empty((omegas.size, 4))
        for i, w in enumerate(omegas):

            def over_c(cs, w=w):
                kern_x, wc = _kernel(scenario, w, cs, "x")
                kern_0, _ = _kernel(scenario, w, cs, "0")
                occ = occupation_difference(wc, scenario.t_atom, w, scenario.t_field)
                nf = _thermal_field_factor(w, scenario.t_field)
                return np.stack(
                    [-occ * kern_x, -occ * kern_0, nf * kern_x, nf * kern_0], axis=-1
                )

            vals, _, ok = _adaptive_vector(over_c, np.array([-1.0, 0.0, 1.0]), inner_spec, acct)
            if not ok:
                inner_bad[0] += 1
            out[i] = vals
        return out

    hints = [lam * 2.0**-j for j in range(1, 9)]
    w0 = scenario.particle.omega0
    hints += [x for x in (0.8 * w0, w0, 1.25 * w0) if x < lam]
    edges = _initial_edges(0.0, lam, hints)
    vals, errs, ok = _adaptive_vector(omega_integrand, edges, quad, acct)
    ok = ok and inner_bad[0] == 0
    inner_budget = inner_spec.abs_tol * lam

    total_x, total_0, p1_x, p1_0 = (float(v) for v in vals)
    err_t_x, err_t_0, err_1_x, err_1_0 = (float(e) + inner_budget for e in errs)
    fx = PieceValue(p1_x, total_x - p1_x, err_1_x, err_t_x + err_1_x, acct.evaluations // 2, ok)
    f0 = PieceValue(p1_0, total_0 - p1_0, err_1_0, err_t_0 + err_1_0, acct.evaluations - acct.evaluations // 2, ok)
    breakdown = ForceBreakdown({"fx": fx, "f0": f0})
    if not ok:
        raise AccuracyError(
            f"blackbody quadrature did not converge (errors: fx {fx.error:.3e}, f0 {f0.error:.3e})",
            breakdown,
        )
    return breakdown
