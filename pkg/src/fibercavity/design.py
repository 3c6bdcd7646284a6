"""Forward model: geometry and mirrors to performance, and length sweeps."""
from dataclasses import astuple, dataclass, fields

import numpy as np

from . import cqed, geometry, response
from .geometry import CavityGeometry
from .response import CavityPerformance, MirrorSpec


def effective_reflectivities(geom, plane, curved):
    """(rho1, rho2) seen by the fiber mode for the given mirrors.

    The plane mirror's loss is weighted by the fiber-to-cavity mode overlap;
    the curved mirror's coating is reduced by surface scattering.
    """
    eta = geometry.mode_overlap_eta(geom.fiber_mode_radius, geometry.waist_w1(geom))
    rho_plane = response.scattering_adjusted_reflectivity(
        plane.reflectivity, plane.roughness, geom.wavelength)
    rho1 = response.effective_plane_reflectivity(rho_plane, eta)
    rho2 = response.scattering_adjusted_reflectivity(
        curved.reflectivity, curved.roughness, geom.wavelength)
    return rho1, rho2


def performance(geom, plane, curved):
    rho1, rho2 = effective_reflectivities(geom, plane, curved)
    F = response.finesse(rho1, rho2)
    linewidth, fsr = response.linewidth_and_fsr(F, geom.wavelength)
    return CavityPerformance(
        finesse=F,
        contrast=response.contrast(rho1, rho2),
        rho1=rho1,
        rho2=rho2,
        q_factor=response.q_factor(geom.cavity_length, F, geom.wavelength),
        linewidth=linewidth,
        fsr=fsr,
    )


@dataclass(frozen=True)
class DesignRow:
    L: float
    w1: float
    w2: float
    eta: float
    rho1: float
    rho2: float
    finesse: float
    contrast: float
    q_factor: float
    g: float
    kappa: float
    cooperativity: float

    UNITS = {"L": "m", "w1": "m", "w2": "m", "g": "per_s", "kappa": "per_s"}

    @classmethod
    def header(cls):
        return [f"{f.name}_{cls.UNITS[f.name]}" if f.name in cls.UNITS else f.name
                for f in fields(cls)]

    def values(self):
        return astuple(self)


def design_row(geom, plane, curved, gamma=cqed.RB_D2_GAMMA):
    profile = geometry.mode_profile(geom)
    perf = performance(geom, plane, curved)
    g = cqed.coupling_g(geom.wavelength, profile.waist_w1, geom.cavity_length, gamma)
    k = cqed.kappa(geom.cavity_length, perf.finesse)
    return DesignRow(
        L=geom.cavity_length, w1=profile.waist_w1, w2=profile.spot_w2,
        eta=profile.overlap_eta, rho1=perf.rho1, rho2=perf.rho2,
        finesse=perf.finesse, contrast=perf.contrast, q_factor=perf.q_factor,
        g=g, kappa=k, cooperativity=cqed.cooperativity(g, k, gamma),
    )


def design_sweep(geom, plane, curved, lengths, gamma=cqed.RB_D2_GAMMA):
    """One :class:`DesignRow` per cavity length, in the order given."""
    lengths = np.atleast_1d(np.asarray(lengths, dtype=float))
    return [design_row(geom.with_length(float(L)), plane, curved, gamma) for L in lengths]


# Named configurations mirroring the two experiments: a gold-coated concave
# mirror against a 98.4% dielectric stack, and a pair of 99.99% coatings
# with 2 nm roughness on the concave side.
PRESETS = {
    "gold": dict(
        wavelength=780e-9, radius=185e-6, fiber_mode_radius=2.65e-6,
        plane=MirrorSpec(0.984, 0.0), curved=MirrorSpec(0.975, 10e-9),
        cavity_length=150e-6,
    ),
    "dielectric": dict(
        wavelength=780e-9, radius=185e-6, fiber_mode_radius=2.65e-6,
        plane=MirrorSpec(0.9999, 0.0), curved=MirrorSpec(0.9999, 2e-9),
        cavity_length=25e-6,
    ),
}


def preset(name, cavity_length=None):
    """Return ``(geometry, plane_mirror, curved_mirror)`` for a named preset."""
    try:
        p = PRESETS[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    L = p["cavity_length"] if cavity_length is None else cavity_length
    geom = CavityGeometry.isotropic(p["wavelength"], L, p["radius"], p["fiber_mode_radius"])
    return geom, p["plane"], p["curved"]
