"""Fabry-Perot figures of merit for the fiber cavity.

Reflectivities are intensity reflectivities. Finesse and contrast are the
high-reflectivity Airy expressions, used here as equalities.
"""
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .exceptions import CavityDomainError, InconsistentMeasurementError


@dataclass(frozen=True)
class MirrorSpec:
    """Coating reflectivity and rms surface roughness (m) of one mirror."""

    reflectivity: float
    roughness: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.reflectivity < 1.0:
            raise CavityDomainError(
                f"reflectivity must lie in [0, 1), got {self.reflectivity!r}")
        if self.roughness < 0:
            raise CavityDomainError(f"roughness must be >= 0, got {self.roughness!r}")


@dataclass(frozen=True)
class CavityPerformance:
    finesse: float
    contrast: float
    rho1: float
    rho2: float
    q_factor: float
    linewidth: float
    fsr: float


def _check_rho(*rhos):
    for rho in rhos:
        rho = np.asarray(rho, dtype=float)
        if np.any(rho < 0) or np.any(rho >= 1):
            raise CavityDomainError(f"reflectivity must lie in [0, 1), got {rho!r}")


def _scalar(x):
    return float(x) if np.ndim(x) == 0 else x


def finesse(rho1, rho2):
    """pi (rho1 rho2)**(1/4) / (1 - sqrt(rho1 rho2))."""
    _check_rho(rho1, rho2)
    s = np.sqrt(np.asarray(rho1, dtype=float) * rho2)
    return _scalar(np.pi * np.sqrt(s) / (1.0 - s))


def contrast(rho1, rho2):
    """Fractional depth of the reflection dip, 1 - I_min/I_max."""
    _check_rho(rho1, rho2)
    a = np.sqrt(np.asarray(rho1, dtype=float))
    b = np.sqrt(np.asarray(rho2, dtype=float))
    return _scalar(1.0 - ((a - b) / (1.0 - a * b)) ** 2)


def _finesse_of_s(s):
    return np.pi * np.sqrt(s) / (1.0 - s)


def invert_finesse_contrast(F, C):
    """Recover the two mirror reflectivities from finesse and contrast.

    The measurement cannot tell the mirrors apart, so both orderings are
    returned: ``[(rho_a, rho_b), (rho_b, rho_a)]`` with ``rho_a >= rho_b``.
    When C == 1 the two coincide and a single pair is returned.

    Raises:
        InconsistentMeasurementError: if no physical pair reproduces (F, C).
    """
    if not F > 0:
        raise InconsistentMeasurementError(f"finesse must be positive, got {F!r}")
    if not 0 < C <= 1:
        raise InconsistentMeasurementError(f"contrast must lie in (0, 1], got {C!r}")
    # F(s) rises monotonically from 0 at s=0 to infinity at s=1
    hi = 1.0 - 1e-16
    if _finesse_of_s(hi) < F:
        raise InconsistentMeasurementError(f"finesse {F!r} too large to invert")
    s = brentq(lambda s: _finesse_of_s(s) - F, 0.0, hi, xtol=1e-15, maxiter=500)
    # In terms of a = sqrt(rho_a), b = sqrt(rho_b): a b = s, a - b = d
    d = np.sqrt(1.0 - C) * (1.0 - s)
    if d == 0.0:
        a = b = np.sqrt(s)
    else:
        a = 0.5 * (d + np.sqrt(d * d + 4.0 * s))
        b = s / a
    rho_a, rho_b = float(a * a), float(b * b)
    if not (0 <= rho_b <= rho_a < 1):
        raise InconsistentMeasurementError(
            f"(F={F!r}, C={C!r}) implies reflectivities ({rho_a!r}, {rho_b!r}) outside [0, 1)")
    if rho_a == rho_b:
        return [(rho_a, rho_b)]
    return [(rho_a, rho_b), (rho_b, rho_a)]


def effective_plane_reflectivity(rho, eta):
    """Reflectivity seen by the fiber mode: 1 - eta**2 (1 - rho).

    Light outside the cavity mode never enters the resonator and is returned
    to the fiber, so eta -> 0 gives 1.
    """
    _check_rho(rho)
    eta = np.asarray(eta, dtype=float)
    if np.any(eta < 0) or np.any(eta > 1):
        raise CavityDomainError(f"overlap must lie in [0, 1], got {eta!r}")
    return _scalar(1.0 - eta**2 * (1.0 - np.asarray(rho, dtype=float)))


def scattering_factor(roughness, wavelength):
    """Specular fraction exp(-(4 pi sigma / lambda)**2) of a rough surface."""
    if np.any(np.asarray(roughness) < 0):
        raise CavityDomainError(f"roughness must be >= 0, got {roughness!r}")
    if wavelength <= 0:
        raise CavityDomainError(f"wavelength must be positive, got {wavelength!r}")
    return _scalar(np.exp(-(4 * np.pi * np.asarray(roughness, dtype=float) / wavelength) ** 2))


def scattering_adjusted_reflectivity(rho_coat, roughness, wavelength):
    _check_rho(rho_coat)
    return _scalar(np.asarray(rho_coat, dtype=float) * scattering_factor(roughness, wavelength))


def q_factor(L, F, wavelength):
    return _scalar(2.0 * np.asarray(L, dtype=float) * F / wavelength)


def linewidth_and_fsr(F, wavelength):
    """Return (delta_L, Delta_L): resonance FWHM and free spectral range in mirror displacement."""
    if np.any(np.asarray(F) <= 0) or wavelength <= 0:
        raise CavityDomainError("finesse and wavelength must be positive")
    fsr = wavelength / 2.0
    return _scalar(fsr / np.asarray(F, dtype=float)), fsr
