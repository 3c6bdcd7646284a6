"""Single-atom cavity QED at an antinode of the fundamental mode.

Rates are angular (s^-1). ``kappa`` is the cavity field decay rate, i.e. the
half width at half maximum of the intensity resonance; ``gamma`` is the
atomic population decay rate.
"""
from dataclasses import dataclass

import numpy as np
from scipy.constants import c
from scipy.signal import find_peaks

from .exceptions import CavityDomainError, InsufficientDataError

RB_D2_GAMMA = 4e7  # s^-1, rubidium 780 nm line


@dataclass(frozen=True)
class CqedParams:
    g: float
    kappa: float
    gamma: float = RB_D2_GAMMA

    @property
    def cooperativity(self):
        return cooperativity(self.g, self.kappa, self.gamma)


def _positive(**kw):
    for name, value in kw.items():
        if np.any(np.asarray(value) <= 0):
            raise CavityDomainError(f"{name} must be positive, got {value!r}")


def _scalar(x):
    return float(x) if np.ndim(x) == 0 else x


def coupling_g(wavelength, w1, L, gamma=RB_D2_GAMMA):
    """Single-photon Rabi frequency sqrt(3 lambda^2 c Gamma / (pi^2 w1^2 L))."""
    _positive(wavelength=wavelength, w1=w1, cavity_length=L, gamma=gamma)
    w1 = np.asarray(w1, dtype=float)
    return _scalar(np.sqrt(3 * wavelength**2 / (np.pi**2 * w1**2) * c * gamma / L))


def kappa(L, F):
    """Cavity field decay rate pi c / (2 L F)."""
    _positive(cavity_length=L, finesse=F)
    return _scalar(np.pi * c / (2.0 * np.asarray(L, dtype=float) * F))


def cooperativity(g, kappa, gamma=RB_D2_GAMMA):
    _positive(kappa=kappa, gamma=gamma)
    return _scalar(np.asarray(g, dtype=float) ** 2 / (kappa * gamma))


def atom_line_centre_reflection(C, g, kappa, gamma=RB_D2_GAMMA):
    """Resonant reflected fraction (without atom, with atom).

    The absorbed fraction C drops to C / (2 g^2/(kappa gamma) + 1)^2 when
    one atom sits at an antinode of the resonant cavity.
    """
    if not 0 <= C <= 1:
        raise CavityDomainError(f"contrast must lie in [0, 1], got {C!r}")
    suppression = (2 * cooperativity(g, kappa, gamma) + 1) ** 2
    return 1.0 - C, 1.0 - C / suppression


def reflection_spectrum(detuning, C, g, kappa, gamma=RB_D2_GAMMA, atom_present=True):
    """Reflected fraction versus laser detuning from the common resonance.

    Uses the weak-drive response f = kappa / (kappa + i D + g^2/(gamma/2 + i D))
    and returns 1 - C |f|^2. With ``atom_present=False`` the atomic term is
    dropped, leaving a Lorentzian dip of depth C and FWHM 2 kappa.
    """
    if not 0 <= C <= 1:
        raise CavityDomainError(f"contrast must lie in [0, 1], got {C!r}")
    _positive(kappa=kappa, gamma=gamma)
    d = np.asarray(detuning, dtype=float)
    denom = kappa + 1j * d
    if atom_present:
        denom = denom + g**2 / (gamma / 2 + 1j * d)
    f = kappa / denom
    return _scalar(1.0 - C * np.abs(f) ** 2)


def find_rabi_peaks(detuning, reflected):
    """Detunings of the local minima (dips) of a sampled reflection spectrum.

    Raises:
        InsufficientDataError: if the spectrum has no interior minimum.
    """
    detuning = np.asarray(detuning, dtype=float)
    reflected = np.asarray(reflected, dtype=float)
    # find_peaks reports the middle sample of a flat-bottomed minimum
    idx, _ = find_peaks(-reflected)
    if len(idx) == 0:
        raise InsufficientDataError("no dip found in spectrum")
    return detuning[idx]


def length_to_detuning(delta_length, L, wavelength):
    """Angular-frequency shift 2 pi c dL / (lambda L) equivalent to a mirror displacement dL."""
    _positive(cavity_length=L, wavelength=wavelength)
    return _scalar(2 * np.pi * c * np.asarray(delta_length, dtype=float) / (wavelength * L))
