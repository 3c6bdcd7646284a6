"""Gaussian mode geometry of a plano-concave fiber cavity.

All lengths are in meters. Mode radii use the field-amplitude 1/e
convention. Functions accept scalars or numpy arrays.
"""
from dataclasses import dataclass

import numpy as np

from .exceptions import CavityDomainError


@dataclass(frozen=True)
class CavityGeometry:
    """Plano-concave cavity: flat fiber mirror facing a concave mirror.

    Args:
        wavelength: vacuum wavelength.
        cavity_length: mirror separation L.
        radius_x, radius_y: radii of curvature of the concave mirror along
            its two principal axes.
        fiber_mode_radius: 1/e field radius of the fiber's guided mode.
    """

    wavelength: float
    cavity_length: float
    radius_x: float
    radius_y: float
    fiber_mode_radius: float

    def __post_init__(self):
        for name in ("wavelength", "cavity_length", "radius_x", "radius_y",
                     "fiber_mode_radius"):
            value = getattr(self, name)
            if not np.isfinite(value) or value <= 0:
                raise CavityDomainError(f"{name} must be positive, got {value!r}")

    @classmethod
    def isotropic(cls, wavelength, cavity_length, radius, fiber_mode_radius):
        return cls(wavelength, cavity_length, radius, radius, fiber_mode_radius)

    @property
    def radius(self):
        """Mean radius of curvature (R_x + R_y)/2."""
        return 0.5 * (self.radius_x + self.radius_y)

    @property
    def astigmatism(self):
        return abs(self.radius_x - self.radius_y)

    @property
    def is_stable(self):
        return self.cavity_length < min(self.radius_x, self.radius_y)

    def with_length(self, cavity_length):
        return CavityGeometry(self.wavelength, cavity_length, self.radius_x,
                              self.radius_y, self.fiber_mode_radius)


@dataclass(frozen=True)
class ModeProfile:
    waist_w1: float
    spot_w2: float
    overlap_eta: float


def _check_stable(L, R, names=("cavity_length", "radius")):
    L = np.asarray(L, dtype=float)
    R = np.asarray(R, dtype=float)
    if np.any(L <= 0):
        raise CavityDomainError(f"{names[0]} must be positive, got {L!r}")
    if np.any(L >= R):
        raise CavityDomainError(
            f"unstable cavity: {names[0]}={L!r} must be below {names[1]}={R!r}")
    return L, R


def _scalar(x):
    return float(x) if np.ndim(x) == 0 else x


def waist_from(L, R, wavelength):
    """Mode waist on the plane mirror, sqrt(lambda/pi) * (L (R - L))**(1/4)."""
    L, R = _check_stable(L, R)
    return _scalar(np.sqrt(wavelength / np.pi) * (L * (R - L)) ** 0.25)


def spot_from(L, R, wavelength):
    """Spot radius on the concave mirror, (lambda/pi) sqrt(L R) / w1."""
    L, R = _check_stable(L, R)
    w1 = np.sqrt(wavelength / np.pi) * (L * (R - L)) ** 0.25
    return _scalar((wavelength / np.pi) * np.sqrt(L * R) / w1)


def _check_geometry(geom):
    # both axes must be stable even though the mode uses the mean radius
    _check_stable(geom.cavity_length, geom.radius_x, ("cavity_length", "radius_x"))
    _check_stable(geom.cavity_length, geom.radius_y, ("cavity_length", "radius_y"))


def waist_w1(geom):
    _check_geometry(geom)
    return waist_from(geom.cavity_length, geom.radius, geom.wavelength)


def spot_w2(geom):
    _check_geometry(geom)
    return spot_from(geom.cavity_length, geom.radius, geom.wavelength)


def mode_overlap_eta(w_f, w1):
    """Amplitude overlap 2 w_f w1 / (w_f**2 + w1**2) of two matched-axis Gaussians."""
    w_f = np.asarray(w_f, dtype=float)
    w1 = np.asarray(w1, dtype=float)
    if np.any(w_f <= 0) or np.any(w1 <= 0):
        raise CavityDomainError(f"mode radii must be positive, got w_f={w_f!r}, w1={w1!r}")
    return _scalar(2.0 * w_f * w1 / (w_f**2 + w1**2))


def mode_profile(geom):
    w1 = waist_w1(geom)
    return ModeProfile(w1, spot_w2(geom), mode_overlap_eta(geom.fiber_mode_radius, w1))


def transverse_mode_spacing(L, R, wavelength):
    """Mirror displacement between adjacent radial modes.

    Equals (lambda / 2 pi) * arccos(sqrt(1 - L/R)); lies in (0, lambda/4).
    """
    L, R = _check_stable(L, R)
    return _scalar(wavelength / (2 * np.pi) * np.arccos(np.sqrt(1.0 - L / R)))


def radius_from_spacing(L, spacing, wavelength):
    """Invert :func:`transverse_mode_spacing` for the radius of curvature."""
    spacing = np.asarray(spacing, dtype=float)
    if np.any(spacing <= 0) or np.any(spacing >= wavelength / 4):
        raise CavityDomainError(
            f"spacing must lie in (0, wavelength/4) = (0, {wavelength / 4!r}), got {spacing!r}")
    if np.any(np.asarray(L) <= 0):
        raise CavityDomainError(f"cavity_length must be positive, got {L!r}")
    # sin^2 form is the exact algebraic inverse of arccos(sqrt(1 - L/R))
    return _scalar(L / np.sin(2 * np.pi * spacing / wavelength) ** 2)


def astigmatic_splitting(L, radius_x, radius_y, wavelength):
    """Splitting of a radial-mode doublet caused by unequal axis curvatures."""
    _check_stable(L, radius_x, ("cavity_length", "radius_x"))
    _check_stable(L, radius_y, ("cavity_length", "radius_y"))
    return _scalar(np.abs(transverse_mode_spacing(L, radius_x, wavelength)
                          - transverse_mode_spacing(L, radius_y, wavelength)))


def stability_ratio(geom):
    """L/R; values at or above 1 are unstable."""
    return geom.cavity_length / geom.radius
