"""JSON run configuration.

Lengths are given either as ``<key>_m`` numbers in meters or as ``<key>``
strings carrying a unit, e.g. ``"radius": "185 um"``. Keys that are not
recognised are rejected so a typo cannot silently fall back to a default.

Example::

    {
      "preset": "gold",
      "cavity_length": "150 um",
      "curved_mirror": {"reflectivity": 0.975, "roughness": "10 nm"},
      "scan": {"fsr_count": 2, "noise_sigma": 0.01, "seed": 42}
    }
"""
import json
import re
from dataclasses import dataclass, field

from . import cqed, design
from .geometry import CavityGeometry
from .response import MirrorSpec
from .simulate import ScanConfig, scan_config

UNITS = {"m": 1.0, "mm": 1e-3, "um": 1e-6, "µm": 1e-6, "nm": 1e-9, "pm": 1e-12}
_LENGTH_RE = re.compile(r"^\s*([-+0-9.eE]+)\s*([a-zµ]*)\s*$")


class ConfigError(ValueError):
    """Invalid or unrecognised configuration field."""


def parse_length(value, name="length"):
    """Meters from a number (already meters) or a string such as ``"2.65 um"``."""
    if isinstance(value, bool):
        raise ConfigError(f"{name}: expected a length, got {value!r}")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        m = _LENGTH_RE.match(value)
        if m:
            number, unit = m.groups()
            unit = unit or "m"
            if unit in UNITS:
                try:
                    return float(number) * UNITS[unit]
                except ValueError:
                    pass
    raise ConfigError(f"{name}: cannot parse length {value!r}")


def _length(d, key, default=None, prefix=""):
    if f"{key}_m" in d and key in d:
        raise ConfigError(f"{prefix}{key}: given both as '{key}' and '{key}_m'")
    if f"{key}_m" in d:
        v = d[f"{key}_m"]
        if not isinstance(v, (int, float)) or isinstance(v, bool):
            raise ConfigError(f"{prefix}{key}_m: expected a number in meters, got {v!r}")
        return float(v)
    if key in d:
        return parse_length(d[key], prefix + key)
    return default


def _number(d, key, default, kind=float, prefix=""):
    if key not in d:
        return default
    v = d[key]
    if isinstance(v, bool) and kind is not bool:
        raise ConfigError(f"{prefix}{key}: expected {kind.__name__}, got {v!r}")
    if kind is bool:
        if not isinstance(v, bool):
            raise ConfigError(f"{prefix}{key}: expected true/false, got {v!r}")
        return v
    try:
        out = kind(v)
    except (TypeError, ValueError):
        raise ConfigError(f"{prefix}{key}: expected {kind.__name__}, got {v!r}") from None
    if kind is int and out != v:
        raise ConfigError(f"{prefix}{key}: expected an integer, got {v!r}")
    return out


def _check_keys(d, allowed, prefix=""):
    lengths, plain = allowed
    ok = set(plain) | set(lengths) | {f"{k}_m" for k in lengths}
    unknown = sorted(set(d) - ok)
    if unknown:
        raise ConfigError(f"{prefix}{unknown[0]}: unknown field")


_TOP = (("wavelength", "cavity_length", "radius", "radius_x", "radius_y", "fiber_mode_radius"),
        ("preset", "schema_version", "plane_mirror", "curved_mirror", "gamma_per_s",
         "coupling_g_per_s", "finesse", "contrast", "scan"))
_MIRROR = (("roughness",), ("reflectivity",))
_SCAN = (("start", "span"),
         ("samples", "noise_sigma", "seed", "max_transverse_order", "transverse_depth_ratio",
          "atom_present", "fsr_count", "points_per_linewidth"))


@dataclass
class RunConfig:
    geometry: CavityGeometry
    plane_mirror: MirrorSpec
    curved_mirror: MirrorSpec
    gamma: float = cqed.RB_D2_GAMMA
    g_override: float = None
    finesse_override: float = None
    contrast_override: float = None
    scan: dict = field(default_factory=dict)

    def scan_config(self, seed=None):
        s = dict(self.scan)
        if seed is not None:
            s["seed"] = seed
        common = dict(
            noise_sigma=s.get("noise_sigma", 0.0),
            seed=s.get("seed", 0),
            max_transverse_order=s.get("max_transverse_order", 0),
            transverse_depth_ratio=s.get("transverse_depth_ratio", 0.1),
            atom_present=s.get("atom_present", False),
            gamma=self.gamma,
        )
        if "span" in s or "samples" in s or "start" in s:
            missing = [k for k in ("start", "span", "samples") if k not in s]
            if missing:
                raise ConfigError(f"scan.{missing[0]}: required when any of start/span/samples is set")
            return ScanConfig(self.geometry, self.plane_mirror, self.curved_mirror,
                              scan_start=s["start"], scan_span=s["span"],
                              samples=s["samples"], **common)
        return scan_config(self.geometry, self.plane_mirror, self.curved_mirror,
                           fsr_count=s.get("fsr_count", 2.0),
                           points_per_linewidth=s.get("points_per_linewidth", 20), **common)


def _mirror(d, base, prefix):
    if d is None:
        return base
    if not isinstance(d, dict):
        raise ConfigError(f"{prefix}: expected an object")
    _check_keys(d, _MIRROR, prefix + ".")
    return MirrorSpec(
        _number(d, "reflectivity", base.reflectivity if base else None, prefix=prefix + "."),
        _length(d, "roughness", base.roughness if base else 0.0, prefix + "."),
    )


def build_config(d, preset=None, length=None):
    """Build a :class:`RunConfig` from a parsed JSON object.

    ``preset`` and ``length`` come from the command line and take priority
    over the file.
    """
    if not isinstance(d, dict):
        raise ConfigError("config: expected a JSON object")
    _check_keys(d, _TOP)
    name = preset or d.get("preset")
    if name is not None:
        if name not in design.PRESETS:
            raise ConfigError(f"preset: unknown preset {name!r}")
        base = design.PRESETS[name]
    else:
        base = {"plane": None, "curved": None}

    def need(key):
        v = _length(d, key, base.get(key))
        if v is None:
            raise ConfigError(f"{key}: required (no preset given)")
        return v

    wavelength = need("wavelength")
    L = length if length is not None else need("cavity_length")
    fiber = need("fiber_mode_radius")
    r = _length(d, "radius", base.get("radius"))
    rx = _length(d, "radius_x", r)
    ry = _length(d, "radius_y", r)
    if rx is None or ry is None:
        raise ConfigError("radius: required (no preset given)")
    plane = _mirror(d.get("plane_mirror"), base["plane"], "plane_mirror")
    curved = _mirror(d.get("curved_mirror"), base["curved"], "curved_mirror")
    if plane is None or curved is None:
        raise ConfigError(f"{'plane_mirror' if plane is None else 'curved_mirror'}: required")

    scan_in = d.get("scan", {})
    if not isinstance(scan_in, dict):
        raise ConfigError("scan: expected an object")
    _check_keys(scan_in, _SCAN, "scan.")
    scan = {}
    for key in _SCAN[0]:
        v = _length(scan_in, key, None, "scan.")
        if v is not None:
            scan[key] = v
    kinds = {"samples": int, "seed": int, "max_transverse_order": int, "atom_present": bool,
             "points_per_linewidth": int}
    for key in _SCAN[1]:
        if key in scan_in:
            scan[key] = _number(scan_in, key, None, kinds.get(key, float), "scan.")

    return RunConfig(
        geometry=CavityGeometry(wavelength, L, rx, ry, fiber),
        plane_mirror=plane,
        curved_mirror=curved,
        gamma=_number(d, "gamma_per_s", cqed.RB_D2_GAMMA),
        g_override=_number(d, "coupling_g_per_s", None),
        finesse_override=_number(d, "finesse", None),
        contrast_override=_number(d, "contrast", None),
        scan=scan,
    )


def load_config(path=None, preset=None, length=None):
    """Read a JSON config file (optional) and resolve it against a preset."""
    d = {}
    if path is not None:
        with open(path) as fh:
            try:
                d = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"config: invalid JSON ({exc})") from None
    if path is None and preset is None:
        raise ConfigError("config: give --config or --preset")
    return build_config(d, preset=preset, length=length)
