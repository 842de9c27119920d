"""Friction and normal radiation force on a particle moving parallel to a
planar dielectric half-space.

All four force pieces reduce to light-cone integrals over (omega, k_par)
with s/p reflection amplitudes, real polarization weights phi_s/phi_p, and
the exponential factor exp(-2 kappa z_A), folded to omega > 0 (prefactor
1 / (8 pi^3 gamma) per d omega d^2 k_par in natural units):

    fx1 = + coth(w/2T_F)   kx Im alpha(w') phi_s,p Im[r e^{-2 kappa z}/kappa]
    fx2 = - coth(w'/2T_A)  kx Im alpha(w') phi_s,p Im[r e^{-2 kappa z}/kappa]
    fz1 = - coth(w/2T_F)      Re alpha(w') phi_s,p Im[r e^{-2 kappa z}]
    fz2 = - coth(w'/2T_A)     Im alpha(w') phi_s,p Re[r e^{-2 kappa z}]

with w' = gamma (w - v kx) the co-moving frequency.

Integration strategy.  Writing coth = 1 + 2N (field factor) and
coth = sgn + [coth - sgn] (dipole factor) splits each piece into a thermal
part, which the occupation factors cut off exponentially, and a shared
temperature-independent part.  The temperature-independent x-parts cancel
identically between the two pieces.  The temperature-independent z-part is
an oscillatory frequency integral that converges only in the Abel sense;
its regularized value is computed exactly by rotating the frequency
integral onto the imaginary axis (alpha, r_sigma and exp(-2 kappa z) are
boundary values of one function analytic in the upper half plane, so
Int_0^inf Im f(w) dw = Int_0^inf Re f(i xi) d xi).  The reported pieces are

    F_x^(1) = thermal field part       F_x^(2) = thermal dipole part
    F_z^(1) = thermal field part + rotated vacuum part
    F_z^(2) = thermal dipole part (includes the anomalous-Doppler window)

Their sums equal the full printed totals exactly; attributing the common
vacuum term to the field-fluctuation piece is a reporting convention.

The radial integration is chart-based so that no square-root kink sits
inside a panel: the propagating sector uses k = w sin(psi), the evanescent
band below the medium light cone uses kappa as the variable (split once so
the kink at k = n w lands on a chart edge), and the band beyond it uses
|kz'|.  The propagating chart is pre-panelled at the half-period of the
exp(2 i |kappa| z) oscillation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .breakdown import AccuracyError, ForceBreakdown, PieceValue
from .materials import (
    COTH_SERIES_CUTOFF,
    LorentzOscillator,
    SurfaceMedium,
    coth_half,
    fresnel_imagfreq,
    fresnel_lightcone,
)
from .polarization import _phi_weights
from .quadrature import QuadratureSpec, _Accountant, _adaptive_vector, _initial_edges

#: e^{-2 kappa z} < 1e-19 beyond this many decay lengths; radial cutoff
KAPPA_DECADES = 22.0
#: thermal-tail multiplier for the frequency cutoff
CUTOFF_DECADES = 80.0
#: cap on oscillation-resolved initial panel counts
MAX_INITIAL_PANELS = 192


@dataclass(frozen=True)
class SurfaceScenario:
    """Particle at height z_A above the surface, moving with speed v along x.

    The medium and the field it thermalizes are at rest at temperature T_F;
    the particle's dipole is at T_A in its own frame.
    """

    particle: LorentzOscillator
    v: float
    z_a: float
    medium: SurfaceMedium
    t_atom: float
    t_field: float

    def __post_init__(self):
        if not 0.0 <= abs(self.v) < 1.0:
            raise ValueError("speed must satisfy |v| < 1")
        if self.z_a <= 0:
            raise ValueError("z_a must be positive (particle outside the surface)")
        if self.t_atom < 0 or self.t_field < 0:
            raise ValueError("temperatures must be non-negative")

    @property
    def gamma(self) -> float:
        return 1.0 / math.sqrt(1.0 - self.v * self.v)


def light_cone_kz(omega, kpar):
    """kappa = sqrt(kpar^2 - (omega + i0)^2), the light-cone z-decay constant.

    Evanescent sector kpar > |omega|: positive real.  Propagating sector:
    kappa = -i sgn(omega) sqrt(omega^2 - kpar^2), so kz = i kappa is the
    outgoing wave and exp(-2 kappa z) oscillates with unit modulus.
    Vectorized; real/imaginary parts are exactly zero in their sectors.
    """
    w = np.asarray(omega, dtype=float)
    k = np.asarray(kpar, dtype=float)
    if w.ndim == 0 and k.ndim == 0 and w == 0.0 and k == 0.0:
        raise ValueError("kappa undefined at (omega, kpar) = (0, 0)")
    ev = k >= np.abs(w)
    rad_ev = np.where(ev, k * k - w * w, 0.0)
    rad_pr = np.where(ev, 0.0, w * w - k * k)
    out = np.where(ev, np.sqrt(rad_ev) + 0.0j, -1j * np.sign(w) * np.sqrt(rad_pr))
    return out.item() if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class SpectralDensityPoint:
    """Printed (full-coth) force densities per d omega d^2 k_par at one mode
    point, folded to omega > 0 and resolved by polarization."""

    omega: float
    kx: float
    ky: float
    fx1_s: float
    fx1_p: float
    fx2_s: float
    fx2_p: float
    fz1_s: float
    fz1_p: float
    fz2_s: float
    fz2_p: float

    @property
    def fx1(self) -> float:
        return self.fx1_s + self.fx1_p

    @property
    def fx2(self) -> float:
        return self.fx2_s + self.fx2_p

    @property
    def fz1(self) -> float:
        return self.fz1_s + self.fz1_p

    @property
    def fz2(self) -> float:
        return self.fz2_s + self.fz2_p


def surface_integrand(scenario: SurfaceScenario, omega: float, kx: float, ky: float) -> SpectralDensityPoint:
    """Evaluate the printed densities at a single mode point.

    For a lossless medium every x-density and the fz1 density vanish exactly
    beyond the medium light cone kpar > n*omega, where both the reflection
    amplitude and kappa are real.
    """
    if omega <= 0:
        raise ValueError("densities are folded to omega > 0")
    kpar = math.hypot(kx, ky)
    if kpar == 0.0:
        raise ValueError("k_par = 0 is a degenerate direction")
    scn = scenario
    pref = 1.0 / (8.0 * math.pi**3 * scn.gamma)
    kappa = light_cone_kz(omega, kpar)
    r_s, r_p = fresnel_lightcone(scn.medium, omega, kpar)
    decay = np.exp(-2.0 * kappa * scn.z_a)
    x_s, x_p = r_s * decay, r_p * decay
    f_s, f_p = x_s / kappa, x_p / kappa
    phi_s, phi_p = _phi_weights(scn.v, omega, kx, ky)
    phi_s, phi_p = float(np.real(phi_s)), float(np.real(phi_p))
    w_comoving = scn.gamma * (omega - scn.v * kx)
    alpha = complex(scn.particle.alpha(w_comoving))
    ia, ra = alpha.imag, alpha.real
    coth_f = float(coth_half(omega, scn.t_field))
    coth_a = float(coth_half(w_comoving, scn.t_atom))

    return SpectralDensityPoint(
        omega=omega,
        kx=kx,
        ky=ky,
        fx1_s=pref * coth_f * kx * ia * phi_s * np.imag(f_s),
        fx1_p=pref * coth_f * kx * ia * phi_p * np.imag(f_p),
        fx2_s=-pref * coth_a * kx * ia * phi_s * np.imag(f_s),
        fx2_p=-pref * coth_a * kx * ia * phi_p * np.imag(f_p),
        fz1_s=-pref * coth_f * ra * phi_s * np.imag(x_s),
        fz1_p=-pref * coth_f * ra * phi_p * np.imag(x_p),
        fz2_s=-pref * coth_a * ia * phi_s * np.real(x_s),
        fz2_p=-pref * coth_a * ia * phi_p * np.real(x_p),
    )


def _field_factor(omega: float, t_field: float) -> float:
    """2 N(omega, T_F) = coth(omega/2T_F) - 1 for omega > 0, without the
    cancellation of the direct subtraction."""
    if t_field <= 0.0:
        return 0.0
    x = omega / t_field
    if x > 700.0:
        return 0.0
    return 2.0 / math.expm1(x)


def _atom_factor_im_alpha(osc: LorentzOscillator, w_comoving, t_atom: float):
    """[coth(w'/2T_A) - 1] * Im alpha(w'), stable through w' = 0.

    The 1/x pole of the coth cancels analytically against the linear zero of
    Im alpha; the product is evaluated via im_alpha_over_omega there.  At
    T_A = 0 the factor reduces to sgn(w') - 1: zero on the normal branch,
    -2 in the anomalous-Doppler window w' < 0.
    """
    wp = np.asarray(w_comoving, dtype=float)
    if t_atom == 0.0:
        return (np.sign(wp) - 1.0) * osc.im_alpha(wp)
    x = wp / (2.0 * t_atom)
    small = np.abs(x) < COTH_SERIES_CUTOFF
    ia = osc.im_alpha(wp)
    series = 2.0 * t_atom * osc.im_alpha_over_omega(wp) + (x / 3.0 - x**3 / 45.0 - 1.0) * ia
    xs = np.where(small, 1.0, x)
    direct = (1.0 / np.tanh(xs) - 1.0) * ia
    return np.where(small, series, direct)


def _thermal_density(scn: SurfaceScenario, omega: float, k, theta):
    """Thermal piece densities [tx1, tx2, tz1, tz2] on a radial x angle grid.

    k has shape (R,), theta (T,); returns (R, T, 4), densities per
    d omega d^2 k_par (the caller applies the k dk jacobian).
    """
    kcol = k[:, None]
    trow = theta[None, :]
    kx = kcol * np.cos(trow)
    ky = kcol * np.sin(trow)
    pref = 1.0 / (8.0 * math.pi**3 * scn.gamma)
    kappa = light_cone_kz(omega, k)
    r_s, r_p = fresnel_lightcone(scn.medium, omega, k)
    decay = np.exp(-2.0 * kappa * scn.z_a)
    x_s = (r_s * decay)[:, None]
    x_p = (r_p * decay)[:, None]
    f_s = (r_s * decay / kappa)[:, None]
    f_p = (r_p * decay / kappa)[:, None]

    phi_s, phi_p = _phi_weights(scn.v, omega, kx, ky)
    wp = scn.gamma * (omega - scn.v * kx)
    ia = scn.particle.im_alpha(wp)
    ra = np.real(scn.particle.alpha(wp))

    sj_im_f = phi_s * np.imag(f_s) + phi_p * np.imag(f_p)
    sj_im_x = phi_s * np.imag(x_s) + phi_p * np.imag(x_p)
    sj_re_x = phi_s * np.real(x_s) + phi_p * np.real(x_p)

    nf = _field_factor(omega, scn.t_field)
    na_ia = _atom_factor_im_alpha(scn.particle, wp, scn.t_atom)

    tx1 = pref * nf * kx * ia * sj_im_f
    tx2 = -pref * na_ia * kx * sj_im_f
    tz1 = -pref * nf * ra * sj_im_x
    tz2 = -pref * na_ia * sj_re_x
    return np.stack([tx1, tx2, tz1, tz2], axis=-1)


def _vacuum_density(scn: SurfaceScenario, xi: float, k, theta):
    """Rotated vacuum normal-force density on (R,), (T,) grids -> (R, T, 1).

    Per d xi d^2 k: -pref * Re[alpha(gamma(i xi - v kx)) *
    (phi_s r_s + phi_p r_p)(i xi)] * exp(-2 sqrt(k^2 + xi^2) z_A).
    """
    kcol = k[:, None]
    kx = kcol * np.cos(theta[None, :])
    pref = 1.0 / (8.0 * math.pi**3 * scn.gamma)
    r_s, r_p = fresnel_imagfreq(scn.medium, xi, k)
    decay = np.exp(-2.0 * np.sqrt(k * k + xi * xi) * scn.z_a)
    ky = kcol * np.sin(theta[None, :])
    phi_s, phi_p = _phi_weights(scn.v, 1j * xi, kx, ky)
    alpha = scn.particle.alpha(scn.gamma * (1j * xi - scn.v * kx))
    combo = np.real(alpha * (phi_s * r_s[:, None] + phi_p * r_p[:, None]))
    return (-pref * combo * decay[:, None])[..., None]


class _ThetaControl:
    """Shared state (tolerance, counter, flag) for the doubling angular rule."""

    def __init__(self, rel_tol: float):
        self.rel_tol = rel_tol
        self.evaluations = 0
        self.converged = True


def _theta_integral(density, ctrl: _ThetaControl, n_start: int = 17, n_max: int = 1025):
    """Full-angle integral assuming ky -> -ky symmetry: 2 * trapezoid over
    [0, pi], refined by doubling until the update falls below the relative
    tolerance (componentwise, scaled by the largest magnitude over the
    radial axis).  density maps theta (T,) to (R, T, M); returns (R, M).
    """
    theta = np.linspace(0.0, math.pi, n_start)
    vals = density(theta)
    ctrl.evaluations += vals.shape[0] * vals.shape[1]
    h = theta[1] - theta[0]
    w = np.ones(n_start)
    w[0] = w[-1] = 0.5
    est = 2.0 * h * np.einsum("t,rtm->rm", w, vals)

    n = n_start
    while n < n_max:
        mids = theta[:-1] + 0.5 * h
        vmid = density(mids)
        ctrl.evaluations += vmid.shape[0] * vmid.shape[1]
        new_est = 0.5 * est + h * np.sum(vmid, axis=1)
        delta = np.abs(new_est - est)
        # componentwise scale, floored at a fraction of the largest
        # component so that symmetry-nulled components (odd in theta, pure
        # rounding noise) cannot stall the doubling
        scale = np.max(np.abs(new_est), axis=0)
        scale = np.maximum(scale, 1e-2 * np.max(scale, initial=0.0))
        est = new_est
        theta = np.sort(np.concatenate([theta, mids]))
        h *= 0.5
        n = theta.size
        if np.all(delta <= np.maximum(ctrl.rel_tol * scale, 1e-300)):
            return est
    ctrl.converged = False
    return est


def _radial_charts(scn: SurfaceScenario, omega: float):
    """Substitution charts (edges, t -> (k, jacobian)) covering the radial
    integral at fixed omega, with all sqrt kinks on chart edges."""
    z = scn.z_a
    kappa_max = KAPPA_DECADES / z
    charts = []

    n_osc = int(np.clip(math.ceil(2.0 * omega * z / math.pi), 1, MAX_INITIAL_PANELS))
    psi_edges = np.linspace(0.0, 0.5 * math.pi, n_osc + 1)

    def prop_chart(psi):
        return omega * np.sin(psi), omega * omega * np.sin(psi) * np.cos(psi)

    charts.append((psi_edges, prop_chart))

    if scn.medium.is_lossless:
        n = float(np.real(scn.medium.n))
        kappa_edge = math.sqrt(n * n - 1.0) * omega
        kappa_mid = kappa_edge / math.sqrt(2.0)
        k2 = min(kappa_mid, kappa_max)
        if k2 > 0:
            edges = _initial_edges(0.0, k2, [k2 / 8.0, k2 / 2.0])

            def ev_lo_chart(kap):
                return np.sqrt(omega * omega + kap * kap), kap

            charts.append((edges, ev_lo_chart))
        if kappa_max > kappa_mid:
            q_mid = kappa_mid  # same numeric value at the half-split in k^2
            q_lo = math.sqrt(max(0.0, kappa_edge**2 - kappa_max**2))
            if q_mid > q_lo:
                edges = _initial_edges(q_lo, q_mid, [0.5 * (q_lo + q_mid)])

                def ev_hi_chart(q):
                    return np.sqrt(n * n * omega * omega - q * q), q

                charts.append((edges, ev_hi_chart))
        if kappa_max > kappa_edge:
            qm_max = math.sqrt(kappa_max**2 - kappa_edge**2)
            edges = _initial_edges(0.0, qm_max, [qm_max / 4.0])

            def far_chart(qm):
                return np.sqrt(n * n * omega * omega + qm * qm), qm

            charts.append((edges, far_chart))
    else:
        edges = _initial_edges(0.0, kappa_max, [kappa_max / 8.0, kappa_max / 2.0])

        def ev_chart(kap):
            return np.sqrt(omega * omega + kap * kap), kap

        charts.append((edges, ev_chart))
    return charts


def _thermal_radial(scn: SurfaceScenario, omega: float, inner_spec: QuadratureSpec, ctrl: _ThetaControl, acct: _Accountant):
    """Radial + angular integral of the thermal densities at fixed omega."""
    total = np.zeros(4)
    ok = True
    for edges, chart in _radial_charts(scn, omega):

        def integrand(t, chart=chart):
            k, jac = chart(t)

            def ang(theta):
                return _thermal_density(scn, omega, k, theta)

            return _theta_integral(ang, ctrl) * jac[:, None]

        vals, _, good = _adaptive_vector(integrand, np.asarray(edges, dtype=float), inner_spec, acct)
        total += vals
        ok = ok and good
    return total, ok


def thermal_cutoff(scn: SurfaceScenario) -> float:
    """Frequency beyond which every thermal density is negligible.

    Field factor decays on T_F, dipole factor on T_A stretched by the
    Doppler range; the anomalous window (and the near-zero band of the
    co-moving frequency) is confined by exp(-2 kappa z_A) to
    omega < ~ KAPPA_DECADES v gamma / z_A.
    """
    v, gamma = abs(scn.v), scn.gamma
    return max(
        CUTOFF_DECADES * scn.t_field,
        CUTOFF_DECADES * scn.t_atom * gamma * (1.0 + v),
        KAPPA_DECADES * v * gamma / scn.z_a,
    )


def _cap_edges(edges: np.ndarray, max_width: float, max_count: int) -> np.ndarray:
    """Subdivide initial panels wider than max_width, bounded in count."""
    if not np.isfinite(max_width) or max_width <= 0:
        return edges
    out = [float(edges[0])]
    for a, b in zip(edges[:-1], edges[1:]):
        if len(out) >= max_count:
            break
        n = int(min(math.ceil((b - a) / max_width), max(1, max_count - len(out))))
        out.extend(np.linspace(a, b, n + 1)[1:].tolist())
    if out[-1] != edges[-1]:
        out.append(float(edges[-1]))
    return np.unique(np.asarray(out))


def _thermal_pass(scn: SurfaceScenario, quad: QuadratureSpec, acct: _Accountant):
    """Outer frequency integral of the four thermal piece densities."""
    lam = thermal_cutoff(scn)
    if lam == 0.0:
        return np.zeros(4), np.zeros(4), True

    inner_spec = QuadratureSpec(
        rel_tol=quad.rel_tol / 4.0,
        abs_tol=quad.abs_tol / (16.0 * lam),
        max_subdivisions=max(quad.max_subdivisions // 4, 64),
    )
    ctrl = _ThetaControl(rel_tol=quad.rel_tol / 8.0)
    inner_bad = [0]

    def omega_integrand(omegas):
        out = np.empty((omegas.size, 4))
        for i, w in enumerate(omegas):
            vals, good = _thermal_radial(scn, float(w), inner_spec, ctrl, acct)
            if not good:
                inner_bad[0] += 1
            out[i] = vals
        return out

    hints = [lam * 2.0**-j for j in range(1, 9)]
    w0 = scn.particle.omega0
    hints += [x for x in (0.8 * w0, w0, 1.25 * w0) if x < lam]
    edges = _cap_edges(_initial_edges(0.0, lam, hints), math.pi / (2.0 * scn.z_a), 384)
    vals, errs, ok = _adaptive_vector(omega_integrand, edges, quad, acct)
    errs = errs + 4.0 * lam * inner_spec.abs_tol  # inner budget, 4 charts
    ok = ok and inner_bad[0] == 0 and ctrl.converged
    acct.evaluations += ctrl.evaluations
    return vals, errs, ok


def _vacuum_pass(scn: SurfaceScenario, quad: QuadratureSpec, acct: _Accountant):
    """Rotated vacuum normal force (imaginary-frequency representation)."""
    cut = KAPPA_DECADES / scn.z_a
    inner_spec = QuadratureSpec(
        rel_tol=quad.rel_tol / 4.0,
        abs_tol=quad.abs_tol / (16.0 * cut),
        max_subdivisions=max(quad.max_subdivisions // 4, 64),
    )
    ctrl = _ThetaControl(rel_tol=quad.rel_tol / 8.0)
    k_edges = _initial_edges(0.0, cut, [cut * 2.0**-j for j in range(1, 7)])
    inner_bad = [0]

    def xi_integrand(xis):
        out = np.empty((xis.size, 1))
        for i, xi in enumerate(xis):

            def integrand(k, xi=float(xi)):
                def ang(theta):
                    return _vacuum_density(scn, xi, k, theta)

                return _theta_integral(ang, ctrl) * k[:, None]

            vals, _, good = _adaptive_vector(integrand, k_edges, inner_spec, acct)
            if not good:
                inner_bad[0] += 1
            out[i] = vals
        return out

    xi_edges = _initial_edges(0.0, cut, [cut * 2.0**-j for j in range(1, 7)])
    vals, errs, ok = _adaptive_vector(xi_integrand, xi_edges, quad, acct)
    ok = ok and inner_bad[0] == 0 and ctrl.converged
    acct.evaluations += ctrl.evaluations
    return float(vals[0]), float(errs[0]) + cut * inner_spec.abs_tol, ok


def surface_force(scenario: SurfaceScenario, quad: QuadratureSpec | None = None) -> ForceBreakdown:
    """Friction (fx) and normal (fz) force pieces with error estimates.

    Requires a lossless medium (real n): the rotation of the vacuum normal
    force to the imaginary axis relies on the reflection amplitudes being
    boundary values of a causal response, which a constant complex index is
    not.  Raises AccuracyError (carrying the best estimate) on quadrature
    failure.  Zero-temperature runs are flagged in the note field.
    """
    scn = scenario
    if not scn.medium.is_lossless:
        raise ValueError("surface_force requires a real (lossless) refractive index")
    quad = quad or QuadratureSpec(rel_tol=1e-6, abs_tol=1e-14)
    acct = _Accountant()

    if float(np.real(scn.medium.n)) == 1.0:
        zero = PieceValue(0.0, 0.0, 0.0, 0.0, 0, True)
        return ForceBreakdown({"fx": zero, "fz": zero})

    thermal, terr, t_ok = _thermal_pass(scn, quad, acct)
    vac, vac_err, v_ok = _vacuum_pass(scn, quad, acct)
    tx1, tx2, tz1, tz2 = (float(x) for x in thermal)
    ex1, ex2, ez1, ez2 = (float(e) for e in terr)

    note = ""
    if scn.t_atom == 0.0 and scn.t_field == 0.0:
        note = (
            "zero-temperature run: thermal parts vanish; the normal force is the "
            "regularized vacuum value, and any x-force comes solely from the "
            "anomalous-Doppler window (zero for a lossless medium below the "
            "Cherenkov threshold v = 1/n)"
        )

    half = acct.evaluations // 2
    fx = PieceValue(tx1, tx2, ex1, ex2, half, t_ok)
    fz = PieceValue(tz1 + vac, tz2, ez1 + vac_err, ez2, acct.evaluations - half, t_ok and v_ok)
    breakdown = ForceBreakdown({"fx": fx, "fz": fz}, note=note)
    if not (t_ok and v_ok):
        raise AccuracyError(
            f"surface quadrature did not converge (errors: fx {fx.error:.3e}, fz {fz.error:.3e})",
            breakdown,
        )
    return breakdown
