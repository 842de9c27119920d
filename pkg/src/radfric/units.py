"""SI <-> natural unit conversions at the CLI boundary.

Internally everything runs in natural units hbar = c = eps0 = 1 with one
leftover dimension, frequency (1/s).  SI inputs map as:

    temperature [K]      -> k_B T / hbar           [1/s]
    length [m]           -> z / c                  [s]
    polarizability [m^3] -> alpha / c^3            [s^3]
    frequency [rad/s]    -> unchanged              [1/s]

A natural force number F corresponds to hbar * F joules/second of momentum
flux; dividing by c gives newtons.  The time component (power transfer) maps
with hbar alone to watts.
"""
from __future__ import annotations

# CODATA 2018, exact by SI definition
HBAR = 1.054571817e-34  # J s
C = 299792458.0  # m / s
KB = 1.380649e-23  # J / K


def temperature_to_natural(kelvin: float) -> float:
    return KB * kelvin / HBAR


def temperature_from_natural(freq: float) -> float:
    return freq * HBAR / KB


def length_to_natural(meters: float) -> float:
    return meters / C


def length_from_natural(seconds: float) -> float:
    return seconds * C


def polarizability_to_natural(m3: float) -> float:
    return m3 / C**3


def polarizability_from_natural(s3: float) -> float:
    return s3 * C**3


def force_from_natural(f_nat: float) -> float:
    """Natural force number -> newtons."""
    return f_nat * HBAR / C


def power_from_natural(f0_nat: float) -> float:
    """Natural time-component number -> watts."""
    return f0_nat * HBAR
