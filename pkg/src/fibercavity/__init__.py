"""Design, simulation and analysis of plano-concave fiber micro-cavities."""
from .analysis import (
    DipRecord,
    FitResult,
    ReflectivityPoint,
    find_dips,
    finesse_contrast_from_trace,
    fit_intrinsic_reflectivity,
    radius_from_scan_pair,
    reflectivity_series,
)
from .cqed import (
    CqedParams,
    atom_line_centre_reflection,
    cooperativity,
    coupling_g,
    find_rabi_peaks,
    kappa,
    length_to_detuning,
    reflection_spectrum,
)
from .design import DesignRow, design_row, design_sweep, performance, preset
from .exceptions import (
    CavityDomainError,
    FitError,
    InconsistentMeasurementError,
    InsufficientDataError,
)
from .geometry import (
    CavityGeometry,
    ModeProfile,
    astigmatic_splitting,
    mode_overlap_eta,
    mode_profile,
    radius_from_spacing,
    spot_w2,
    stability_ratio,
    transverse_mode_spacing,
    waist_w1,
)
from .response import (
    CavityPerformance,
    MirrorSpec,
    contrast,
    effective_plane_reflectivity,
    finesse,
    invert_finesse_contrast,
    linewidth_and_fsr,
    q_factor,
    scattering_adjusted_reflectivity,
)
from .simulate import ScanConfig, ScanTrace, ground_truth, scan_config, simulate_scan

__version__ = "0.1.0"
