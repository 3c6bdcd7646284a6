import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from fibercavity import CavityDomainError, InconsistentMeasurementError, MirrorSpec
from fibercavity import response as rsp

LAM = 780e-9
rho = st.floats(min_value=0.0, max_value=0.9995)


def airy_reflection(r1, r2, phi):
    """Reflected intensity of a two-mirror cavity with a lossless input mirror."""
    e = np.exp(1j * phi)
    return np.abs(r1 - (1 - r1**2) * r2 * e / (1 - r1 * r2 * e)) ** 2


def airy_finesse(s, n=2_000_001):
    """FSR over FWHM of the circulating intensity 1/|1 - s e^{i phi}|^2, by sampling."""
    phi = np.linspace(-np.pi, np.pi, n)
    y = 1 / np.abs(1 - s * np.exp(1j * phi)) ** 2
    above = phi[y >= y.max() / 2]
    return 2 * np.pi / (above[-1] - above[0] + (phi[1] - phi[0]))


def test_finesse_examples():
    assert rsp.finesse(0.984, 0.984) == pytest.approx(194.8, rel=2e-4)
    assert rsp.finesse(0.0, 0.0) == 0.0
    assert rsp.finesse(0.9999, 0.99886) == pytest.approx(5.1e3, rel=0.02)


@pytest.mark.parametrize("rho1, rho2", [(0.984, 0.984), (0.99, 0.95), (0.9999, 0.99886)])
def test_finesse_matches_sampled_airy_linewidth(rho1, rho2):
    s = np.sqrt(rho1 * rho2)
    # the closed form is the high-reflectivity limit; agreement to O((1-s)^2)
    assert rsp.finesse(rho1, rho2) == pytest.approx(airy_finesse(s), rel=2e-3)


@pytest.mark.parametrize("rho1, rho2", [(0.984, 0.9), (0.99, 0.95), (0.9999, 0.99886)])
def test_contrast_matches_sampled_airy_dip(rho1, rho2):
    phi = np.linspace(-np.pi, np.pi, 200_001)
    y = airy_reflection(np.sqrt(rho1), np.sqrt(rho2), phi)
    measured = 1 - y.min() / y.max()
    assert rsp.contrast(rho1, rho2) == pytest.approx(measured, abs=5 * (1 - np.sqrt(rho1 * rho2)))


def test_contrast_examples():
    assert rsp.contrast(0.9, 0.9) == 1.0
    assert rsp.contrast(0.984, 0.9) == pytest.approx(0.4606, abs=1e-4)
    assert rsp.contrast(0.7, 0.0) == pytest.approx(1 - 0.7, rel=1e-14)


def test_lossless_divergence_rejected():
    with pytest.raises(CavityDomainError):
        rsp.finesse(1.0, 1.0)
    with pytest.raises(CavityDomainError):
        rsp.contrast(1.0, 0.5)


@given(rho, rho)
def test_symmetry_and_range(a, b):
    assert rsp.finesse(a, b) == rsp.finesse(b, a)
    assert rsp.contrast(a, b) == rsp.contrast(b, a)
    assert 0 <= rsp.contrast(a, b) <= 1


def test_finesse_increasing_in_product():
    p = np.linspace(0, 0.9999, 1000)
    assert np.all(np.diff(rsp.finesse(p, np.ones_like(p) * 0.5)) > 0)


GRID = [0.5, 0.9, 0.98, 0.999]


@pytest.mark.parametrize("rho1, rho2", list(itertools.product(GRID, GRID)))
def test_inversion_grid(rho1, rho2):
    F, C = rsp.finesse(rho1, rho2), rsp.contrast(rho1, rho2)
    branches = rsp.invert_finesse_contrast(F, C)
    best = min(max(abs(a / rho1 - 1), abs(b / rho2 - 1)) for a, b in branches)
    assert best < 1e-9
    for a, b in branches:
        assert rsp.finesse(a, b) == pytest.approx(F, rel=1e-9)
        assert rsp.contrast(a, b) == pytest.approx(C, rel=1e-9)


def test_inversion_examples():
    [(a, b)] = rsp.invert_finesse_contrast(rsp.finesse(0.984, 0.984), 1.0)
    assert a == pytest.approx(0.984, rel=1e-12) and b == pytest.approx(0.984, rel=1e-12)
    assert rsp.invert_finesse_contrast(194.8, 1.0)[0][0] == pytest.approx(0.984, abs=1e-5)
    F, C = rsp.finesse(0.984, 0.9), rsp.contrast(0.984, 0.9)
    (a, b), (c, d) = rsp.invert_finesse_contrast(F, C)
    assert (a, b) == pytest.approx((0.984, 0.9), rel=1e-9)
    assert (c, d) == (b, a)


@given(st.floats(0.05, 0.9999), st.floats(0.05, 0.9999))
def test_inversion_round_trip(a, b):
    F, C = rsp.finesse(a, b), rsp.contrast(a, b)
    if C <= 0:
        return
    branches = rsp.invert_finesse_contrast(F, C)
    assert min(abs(x - a) + abs(y - b) for x, y in branches) < 1e-7


def test_inversion_errors():
    with pytest.raises(InconsistentMeasurementError):
        rsp.invert_finesse_contrast(-1.0, 0.5)
    with pytest.raises(InconsistentMeasurementError):
        rsp.invert_finesse_contrast(100.0, 0.0)
    with pytest.raises(InconsistentMeasurementError):
        rsp.invert_finesse_contrast(100.0, 1.5)


def test_effective_plane_reflectivity():
    assert rsp.effective_plane_reflectivity(0.984, 1.0) == pytest.approx(0.984, rel=1e-15)
    assert rsp.effective_plane_reflectivity(0.984, 0.8989) == pytest.approx(0.98707, abs=1e-5)
    assert rsp.effective_plane_reflectivity(0.984, 0.0) == 1.0
    # affine in rho with slope eta^2
    eta = 0.7
    r = np.array([0.2, 0.5, 0.9])
    vals = rsp.effective_plane_reflectivity(r, eta)
    assert np.allclose(np.diff(vals) / np.diff(r), eta**2, rtol=1e-12)
    with pytest.raises(CavityDomainError):
        rsp.effective_plane_reflectivity(0.9, 1.5)


def test_scattering():
    assert rsp.scattering_adjusted_reflectivity(0.9999, 0.0, LAM) == 0.9999
    assert rsp.scattering_adjusted_reflectivity(0.9999, 2e-9, LAM) == pytest.approx(0.99886,
                                                                                    abs=1e-5)
    # 0.99063 as quoted; direct evaluation gives 0.990600
    assert rsp.scattering_adjusted_reflectivity(0.9999, 6e-9, LAM) == pytest.approx(0.99063,
                                                                                    abs=5e-5)
    f = rsp.scattering_factor(np.linspace(0, 50e-9, 50), LAM)
    assert np.all(np.diff(f) < 0) and np.all((f > 0) & (f <= 1))
    with pytest.raises(CavityDomainError):
        rsp.scattering_factor(-1e-9, LAM)


def test_q_factor():
    assert rsp.q_factor(105e-6, 4000, LAM) == pytest.approx(1.077e6, rel=1e-3)
    assert rsp.q_factor(LAM / 2, 1, LAM) == pytest.approx(1.0, rel=1e-15)
    assert rsp.q_factor(156e-6, 100, LAM) == pytest.approx(4.0e4, rel=1e-12)


def test_linewidth_and_fsr():
    dl, fsr = rsp.linewidth_and_fsr(5200, LAM)
    assert fsr == 390e-9
    assert dl == pytest.approx(0.075e-9, rel=1e-3)
    assert rsp.linewidth_and_fsr(1, LAM) == (LAM / 2, LAM / 2)
    assert rsp.linewidth_and_fsr(100, LAM)[0] == pytest.approx(3.9e-9, rel=1e-12)


def test_mirror_spec_validation():
    with pytest.raises(CavityDomainError):
        MirrorSpec(1.0)
    with pytest.raises(CavityDomainError):
        MirrorSpec(0.9, -1e-9)
