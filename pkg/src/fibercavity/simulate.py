"""Synthetic piezo length-scan reflection traces.

The scan coordinate ``x`` is the mirror displacement. Longitudinal
resonances of the fundamental mode sit at ``x = q * lambda/2``; radial order
``m`` is offset by ``m`` transverse mode spacings. Each resonance is a
Lorentzian dip of FWHM ``lambda/(2F)``. The cavity length used for the mode
geometry is held at its nominal value across a scan.

Noise is drawn from ``numpy.random.default_rng(seed)`` (PCG64) as a single
``normal(0, noise_sigma, samples)`` call, so a given seed always maps to the
same noise vector. No noise is drawn when ``noise_sigma == 0``.
"""
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import cqed, design, geometry
from .exceptions import CavityDomainError
from .geometry import CavityGeometry
from .response import CavityPerformance, MirrorSpec


@dataclass(frozen=True)
class ScanConfig:
    geometry: CavityGeometry
    plane_mirror: MirrorSpec
    curved_mirror: MirrorSpec
    scan_start: float
    scan_span: float
    samples: int
    noise_sigma: float = 0.0
    seed: int = 0
    max_transverse_order: int = 0
    transverse_depth_ratio: float = 0.1
    atom_present: bool = False
    gamma: float = cqed.RB_D2_GAMMA

    def __post_init__(self):
        if self.samples < 2:
            raise CavityDomainError(f"samples must be >= 2, got {self.samples!r}")
        if not self.scan_span > 0:
            raise CavityDomainError(f"scan_span must be positive, got {self.scan_span!r}")
        if self.noise_sigma < 0:
            raise CavityDomainError(f"noise_sigma must be >= 0, got {self.noise_sigma!r}")
        if self.max_transverse_order < 0:
            raise CavityDomainError("max_transverse_order must be >= 0")
        if not 0 <= self.transverse_depth_ratio < 1:
            raise CavityDomainError(
                f"transverse_depth_ratio must lie in [0, 1), got {self.transverse_depth_ratio!r}")

    @property
    def pitch(self):
        return self.scan_span / (self.samples - 1)


@dataclass(frozen=True)
class ScanTrace:
    positions: np.ndarray
    intensities: np.ndarray
    config: ScanConfig = None
    truth: CavityPerformance = None
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.positions) != len(self.intensities):
            raise ValueError("positions and intensities differ in length")
        if len(self.positions) < 2 or np.any(np.diff(self.positions) <= 0):
            raise ValueError("positions must be strictly increasing")

    @property
    def pitch(self):
        return (self.positions[-1] - self.positions[0]) / (len(self.positions) - 1)


def ground_truth(config):
    """Exact performance figures used to draw the trace for ``config``."""
    return design.performance(config.geometry, config.plane_mirror, config.curved_mirror)


def scan_config(geom, plane, curved, *, fsr_count=2.0, points_per_linewidth=20,
                margin=0.25, **kw):
    """Build a config whose scan covers ``fsr_count`` free spectral ranges.

    The scan starts ``margin`` FSR before the q=0 resonance and the sample
    pitch is set to ``linewidth / points_per_linewidth``.
    """
    perf = design.performance(geom, plane, curved)
    span = fsr_count * perf.fsr
    samples = int(np.ceil(span / (perf.linewidth / points_per_linewidth))) + 1
    return ScanConfig(geom, plane, curved, scan_start=-margin * perf.fsr,
                      scan_span=span, samples=samples, **kw)


def principal_resonances(config):
    """Positions of the (0,0) resonances inside the scan window."""
    fsr = config.geometry.wavelength / 2
    end = config.scan_start + config.scan_span
    q = np.arange(np.ceil(config.scan_start / fsr), np.floor(end / fsr) + 1)
    return q * fsr


def _lorentz(x, hwhm):
    return 1.0 / (1.0 + (x / hwhm) ** 2)


def simulate_scan(config):
    """Render the reflected intensity, normalized to the off-resonant level.

    Raises:
        CavityDomainError: on an unstable geometry or a sample pitch coarser
            than half a linewidth.
    """
    geom = config.geometry
    if not geom.is_stable:
        raise CavityDomainError(
            f"unstable cavity: cavity_length={geom.cavity_length!r} must be below "
            f"min(radius_x, radius_y)={min(geom.radius_x, geom.radius_y)!r}")
    truth = ground_truth(config)
    lam = geom.wavelength
    dl = truth.linewidth
    if config.pitch > dl / 2:
        raise CavityDomainError(
            f"sample pitch {config.pitch!r} m exceeds half the linewidth {dl / 2!r} m")
    if config.pitch > dl / 10:
        warnings.warn(f"sample pitch {config.pitch:.3e} m is coarser than linewidth/10; "
                      "extracted widths will be biased", stacklevel=2)

    x = np.linspace(config.scan_start, config.scan_start + config.scan_span, config.samples)
    spacing = geometry.transverse_mode_spacing(geom.cavity_length, geom.radius, lam)
    fsr = truth.fsr
    M = config.max_transverse_order
    q_lo = int(np.floor((x[0] - M * spacing) / fsr)) - 2
    q_hi = int(np.ceil(x[-1] / fsr)) + 2

    if config.atom_present:
        w1 = geometry.waist_w1(geom)
        g = cqed.coupling_g(lam, w1, geom.cavity_length, config.gamma)
        k = cqed.kappa(geom.cavity_length, truth.finesse)

    dip = np.zeros_like(x)
    for q in range(q_lo, q_hi + 1):
        centre = q * fsr
        if config.atom_present:
            detuning = cqed.length_to_detuning(x - centre, geom.cavity_length, lam)
            dip += 1.0 - cqed.reflection_spectrum(detuning, truth.contrast, g, k, config.gamma)
        else:
            dip += truth.contrast * _lorentz(x - centre, dl / 2)
        for m in range(1, M + 1):
            depth = truth.contrast * config.transverse_depth_ratio**m
            dip += depth * _lorentz(x - centre - m * spacing, dl / 2)

    intensity = 1.0 - dip
    if config.noise_sigma > 0:
        rng = np.random.default_rng(config.seed)
        intensity = intensity + rng.normal(0.0, config.noise_sigma, config.samples)
    meta = {
        "transverse_mode_spacing_m": spacing,
        "principal_dip_count": len(principal_resonances(config)),
    }
    return ScanTrace(x, intensity, config, truth, meta)
