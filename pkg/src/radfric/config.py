"""Line-oriented run configuration: [section] headers, key = value, # comments.

Unknown sections and unknown keys are hard errors (silent typos are worse
than loud ones).  Values are plain numbers or sweeps, written

    v = 0.3                 # scalar
    v = lin(0.1, 0.6, 6)    # arithmetic progression, 6 points inclusive
    z_A = geom(1.0, 100.0, 9)  # geometric progression

Sections and keys:

    [run]      mode (blackbody | surface | identities), units (natural | SI),
               out, rel_tol, abs_tol, max_subdivisions
    [particle] alpha0, omega0, gamma_d, T_A
    [field]    T_F, n (surface mode only)
    [motion]   v, z_A (surface mode only)

When units = SI: alpha0 in m^3, omega0/gamma_d in rad/s, T_A/T_F in kelvin,
z_A in meters, v always a fraction of c.  Everything is converted to natural
units at parse time; output forces are converted back on writing.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from . import units as u


class ConfigError(ValueError):
    """Configuration rejected; message carries the line number or key."""


@dataclass(frozen=True)
class Sweep:
    kind: str  # "lin" or "geom"
    start: float
    stop: float
    count: int

    def values(self) -> list[float]:
        if self.count == 1:
            return [self.start]
        if self.kind == "lin":
            return [float(x) for x in np.linspace(self.start, self.stop, self.count)]
        return [float(x) for x in np.geomspace(self.start, self.stop, self.count)]


_SWEEP_RE = re.compile(r"^(lin|geom)\(\s*([^,]+)\s*,\s*([^,]+)\s*,\s*(\d+)\s*\)$")

_SCHEMA = {
    "run": {"mode", "units", "out", "rel_tol", "abs_tol", "max_subdivisions"},
    "particle": {"alpha0", "omega0", "gamma_d", "T_A"},
    "field": {"T_F", "n"},
    "motion": {"v", "z_A"},
}


@dataclass(frozen=True)
class RunConfig:
    """Fully validated run description, in natural units."""

    mode: str
    alpha0: float = 1.0
    omega0: float = 1.0
    gamma_d: float = 0.0
    t_atom: float = 0.0
    t_field: float = 0.0
    n: float | None = None
    v: object = 0.0  # float or Sweep
    z_a: object = None  # float, Sweep or None
    rel_tol: float = 1e-6
    abs_tol: float = 1e-12
    max_subdivisions: int = 4000
    units: str = "natural"
    out: str = "."
    raw_text: str = ""

    def sweep_axes(self) -> list[str]:
        axes = []
        if isinstance(self.v, Sweep):
            axes.append("v")
        if isinstance(self.z_a, Sweep):
            axes.append("z_A")
        return axes

    def points(self):
        """Sweep points in row order: v outer, z_A inner."""
        vs = self.v.values() if isinstance(self.v, Sweep) else [self.v]
        zs = self.z_a.values() if isinstance(self.z_a, Sweep) else [self.z_a]
        for v in vs:
            for z in zs:
                yield {"v": v, "z_A": z}


def _parse_number(text: str, key: str, lineno: int) -> float:
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"line {lineno}: key '{key}': not a number: {text!r}") from None


def _parse_value(text: str, key: str, lineno: int):
    m = _SWEEP_RE.match(text)
    if m:
        kind, a, b, n = m.groups()
        start = _parse_number(a, key, lineno)
        stop = _parse_number(b, key, lineno)
        count = int(n)
        if count < 1:
            raise ConfigError(f"line {lineno}: key '{key}': sweep count must be >= 1")
        if kind == "geom" and (start * stop <= 0.0):
            raise ConfigError(f"line {lineno}: key '{key}': geometric sweep needs same-sign nonzero endpoints")
        return Sweep(kind, start, stop, count)
    return _parse_number(text, key, lineno)


def _domain(cond: bool, key: str, message: str):
    if not cond:
        raise ConfigError(f"key '{key}': {message}")


def _check_speed(value, key="v"):
    vals = value.values() if isinstance(value, Sweep) else [value]
    for x in vals:
        _domain(-1.0 < x < 1.0, key, f"require |v| < 1, got {x}")


def _check_positive(value, key):
    vals = value.values() if isinstance(value, Sweep) else [value]
    for x in vals:
        _domain(x > 0.0, key, f"require a positive value, got {x}")


def parse_config(text: str) -> RunConfig:
    """Parse and fully validate a configuration; returns natural units."""
    section = None
    raw: dict[tuple[str, str], tuple[str, int]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if body.startswith("[") and body.endswith("]"):
            section = body[1:-1].strip().lower()
            if section not in _SCHEMA:
                raise ConfigError(f"line {lineno}: unknown section [{section}]")
            continue
        if "=" not in body:
            raise ConfigError(f"line {lineno}: expected key = value, got {body!r}")
        if section is None:
            raise ConfigError(f"line {lineno}: key outside any [section]")
        key, value = (part.strip() for part in body.split("=", 1))
        if key not in _SCHEMA[section]:
            raise ConfigError(f"line {lineno}: unknown key '{key}' in section [{section}]")
        if (section, key) in raw:
            raise ConfigError(f"line {lineno}: duplicate key '{key}'")
        raw[(section, key)] = (value, lineno)

    def take(section: str, key: str, default=None):
        if (section, key) in raw:
            value, lineno = raw.pop((section, key))
            return value, lineno
        return default, None

    mode_txt, _ = take("run", "mode")
    if mode_txt is None:
        raise ConfigError("missing required key 'mode' in [run]")
    mode = mode_txt.lower()
    if mode not in ("blackbody", "surface", "identities"):
        raise ConfigError(f"key 'mode': must be blackbody, surface or identities, got {mode_txt!r}")

    units_txt, _ = take("run", "units", "natural")
    units = (units_txt or "natural").lower()
    if units not in ("natural", "si"):
        raise ConfigError(f"key 'units': must be natural or SI, got {units_txt!r}")
    out_txt, _ = take("run", "out", ".")

    def number(section, key, default):
        value, lineno = take(section, key)
        if value is None:
            return default
        return _parse_number(value, key, lineno)

    def value_or_sweep(section, key, default):
        value, lineno = take(section, key)
        if value is None:
            return default
        return _parse_value(value, key, lineno)

    rel_tol = number("run", "rel_tol", 1e-6)
    abs_tol = number("run", "abs_tol", 1e-12)
    max_sub = int(number("run", "max_subdivisions", 4000))

    if mode == "identities":
        for (sec, key), (_, lineno) in raw.items():
            raise ConfigError(f"line {lineno}: key '{key}' not allowed in identities mode")
        return RunConfig(mode=mode, rel_tol=rel_tol, abs_tol=abs_tol, units=units, out=out_txt, raw_text=text)

    alpha0 = number("particle", "alpha0", None)
    omega0 = number("particle", "omega0", None)
    for key, val in (("alpha0", alpha0), ("omega0", omega0)):
        if val is None:
            raise ConfigError(f"missing required key '{key}' in [particle]")
    gamma_d = number("particle", "gamma_d", 0.0)
    t_atom = number("particle", "T_A", None)
    t_field = number("field", "T_F", None)
    for key, val in (("T_A", t_atom), ("T_F", t_field)):
        if val is None:
            raise ConfigError(f"missing required key '{key}'")
    v = value_or_sweep("motion", "v", None)
    if v is None:
        raise ConfigError("missing required key 'v' in [motion]")

    n = None
    z_a = None
    if mode == "surface":
        n = number("field", "n", None)
        if n is None:
            raise ConfigError("missing required key 'n' in [field] for surface mode")
        z_a = value_or_sweep("motion", "z_A", None)
        if z_a is None:
            raise ConfigError("missing required key 'z_A' in [motion] for surface mode")

    for (sec, key), (_, lineno) in raw.items():
        raise ConfigError(f"line {lineno}: key '{key}' not allowed in {mode} mode")

    if units == "si":
        alpha0 = u.polarizability_to_natural(alpha0)
        t_atom = u.temperature_to_natural(t_atom)
        t_field = u.temperature_to_natural(t_field)
        if z_a is not None:
            if isinstance(z_a, Sweep):
                z_a = Sweep(z_a.kind, u.length_to_natural(z_a.start), u.length_to_natural(z_a.stop), z_a.count)
            else:
                z_a = u.length_to_natural(z_a)

    _domain(alpha0 > 0, "alpha0", "require a positive value")
    _domain(omega0 > 0, "omega0", "require a positive value")
    _domain(gamma_d >= 0, "gamma_d", "require a non-negative value")
    _domain(t_atom >= 0, "T_A", "require a non-negative value")
    _domain(t_field >= 0, "T_F", "require a non-negative value")
    _check_speed(v)
    if mode == "surface":
        _domain(n >= 1.0, "n", "require n >= 1")
        _check_positive(z_a, "z_A")
    _domain(rel_tol > 0, "rel_tol", "require a positive value")
    _domain(abs_tol > 0, "abs_tol", "require a positive value")
    _domain(max_sub >= 1, "max_subdivisions", "require at least 1")

    return RunConfig(
        mode=mode,
        alpha0=alpha0,
        omega0=omega0,
        gamma_d=gamma_d,
        t_atom=t_atom,
        t_field=t_field,
        n=n,
        v=v,
        z_a=z_a,
        rel_tol=rel_tol,
        abs_tol=abs_tol,
        max_subdivisions=max_sub,
        units=units,
        out=out_txt,
        raw_text=text,
    )
