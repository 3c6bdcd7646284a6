import numpy as np
import pytest

from fibercavity import (
    CavityGeometry,
    FitError,
    InsufficientDataError,
    analysis,
    design,
    simulate,
)
from fibercavity.geometry import mode_overlap_eta, waist_from
from fibercavity.response import contrast, effective_plane_reflectivity, finesse
from fibercavity.simulate import ScanTrace

LAM = 780e-9
R = 185e-6
WF = 2.65e-6
GEOM = CavityGeometry.isotropic(LAM, 100e-6, R, WF)
FIT_LENGTHS = np.linspace(30e-6, 170e-6, 10)


def lorentz_trace(centres, depths, fwhm, start, stop, pitch):
    x = np.arange(start, stop, pitch)
    y = np.ones_like(x)
    for x0, d in zip(centres, depths):
        y -= d / (1 + ((x - x0) / (fwhm / 2)) ** 2)
    return ScanTrace(x, y)


def plane_rho1(lengths, rho=0.984):
    eta = mode_overlap_eta(WF, waist_from(np.asarray(lengths), R, LAM))
    return effective_plane_reflectivity(rho, eta)


class TestFindDips:
    def test_single_dip(self):
        fwhm = 0.075e-9
        tr = lorentz_trace([0.0], [0.7], fwhm, -100 * fwhm, 100 * fwhm, fwhm / 20)
        [d] = analysis.find_dips(tr)
        assert d.depth == pytest.approx(0.7, abs=0.005)
        assert d.fwhm == pytest.approx(fwhm, rel=0.01)
        assert d.position == pytest.approx(0.0, abs=fwhm / 20)
        assert d.transverse_order_hint == 0 and not d.truncated

    def test_flat_trace(self):
        tr = ScanTrace(np.linspace(0, 1e-6, 1000), np.ones(1000))
        assert analysis.find_dips(tr) == []

    def test_two_dips_one_fsr_apart(self):
        cfg = simulate.scan_config(*design.preset("gold", 150e-6), fsr_count=2.0)
        tr = simulate.simulate_scan(cfg)
        dips = analysis.find_dips(tr)
        assert len(dips) == 2
        assert dips[1].position - dips[0].position == pytest.approx(LAM / 2, abs=tr.pitch)

    def test_edge_truncated_dip_is_flagged(self):
        fwhm = 4e-9
        tr = lorentz_trace([0.0, 390e-9], [0.6, 0.6], fwhm, -50e-9, 390e-9 + 0.5e-9, fwhm / 20)
        dips = analysis.find_dips(tr)
        assert [d.truncated for d in dips] == [False, True]
        assert np.isnan(dips[1].fwhm)

    def test_satellites_are_not_principal(self):
        cfg = simulate.scan_config(*design.preset("gold", 150e-6), max_transverse_order=2)
        dips = analysis.find_dips(simulate.simulate_scan(cfg))
        hints = [d.transverse_order_hint for d in dips]
        assert hints.count(0) == 2
        assert len(dips) == 4  # two principal, two first-order; second order is below 0.02


class TestFinesseContrast:
    @pytest.mark.parametrize("ratio", [0.1, 0.3, 0.5, 0.7, 0.9])
    @pytest.mark.parametrize("name", ["gold", "dielectric"])
    def test_noiseless_closed_loop(self, name, ratio):
        cfg = simulate.scan_config(*design.preset(name, ratio * R))
        tr = simulate.simulate_scan(cfg)
        F, C = analysis.finesse_contrast_from_trace(tr)
        assert F == pytest.approx(tr.truth.finesse, rel=0.01)
        assert C == pytest.approx(tr.truth.contrast, abs=0.01)

    @pytest.mark.parametrize("seed", range(5))
    def test_dielectric_with_noise(self, seed):
        cfg = simulate.scan_config(*design.preset("dielectric", 25e-6), fsr_count=4.0,
                                   points_per_linewidth=50, noise_sigma=0.01, seed=seed)
        tr = simulate.simulate_scan(cfg)
        F, _ = analysis.finesse_contrast_from_trace(tr)
        assert F == pytest.approx(tr.truth.finesse, rel=0.05)

    def test_matched_mirrors_give_unit_contrast(self):
        geom = CavityGeometry.isotropic(LAM, 60e-6, R, waist_from(60e-6, R, LAM))
        from fibercavity import MirrorSpec
        cfg = simulate.scan_config(geom, MirrorSpec(0.97), MirrorSpec(0.97))
        _, C = analysis.finesse_contrast_from_trace(simulate.simulate_scan(cfg))
        assert C == pytest.approx(1.0, abs=0.01)

    def test_single_dip_is_insufficient(self):
        cfg = simulate.scan_config(*design.preset("gold", 150e-6), fsr_count=0.5)
        with pytest.raises(InsufficientDataError, match="found 1"):
            analysis.finesse_contrast_from_trace(simulate.simulate_scan(cfg))


class TestRadius:
    def test_noiseless_round_trip(self):
        cfg = simulate.scan_config(*design.preset("gold", 150e-6), max_transverse_order=2)
        R_est = analysis.radius_from_scan_pair(150e-6, simulate.simulate_scan(cfg), LAM)
        assert R_est == pytest.approx(R, rel=0.005)

    def test_eighth_wave_offset(self):
        fwhm = 4e-9
        tr = lorentz_trace([0.0, LAM / 8], [0.6, 0.06], fwhm, -50e-9, 200e-9, fwhm / 20)
        assert analysis.radius_from_scan_pair(80e-6, tr, LAM) == pytest.approx(160e-6, rel=1e-3)

    @pytest.mark.parametrize("seed", range(10))
    def test_noisy(self, seed):
        cfg = simulate.scan_config(*design.preset("gold", 150e-6), max_transverse_order=1,
                                   noise_sigma=0.01, seed=seed)
        R_est = analysis.radius_from_scan_pair(150e-6, simulate.simulate_scan(cfg), LAM)
        assert R_est == pytest.approx(R, rel=0.02)

    def test_no_satellite(self):
        cfg = simulate.scan_config(*design.preset("gold", 150e-6))
        with pytest.raises(InsufficientDataError, match="satellite"):
            analysis.radius_from_scan_pair(150e-6, simulate.simulate_scan(cfg), LAM)


class TestFit:
    def test_exact_data(self):
        res = analysis.fit_intrinsic_reflectivity(zip(FIT_LENGTHS, plane_rho1(FIT_LENGTHS)), GEOM)
        assert res.rho_estimate == pytest.approx(0.984, abs=1e-12)
        assert res.residual_rms < 1e-15
        assert res.points_used == 10
        assert len(res.per_point) == 10

    def test_closed_form_matches_lstsq(self):
        rng = np.random.default_rng(3)
        rho1 = plane_rho1(FIT_LENGTHS) + rng.normal(0, 1e-3, 10)
        x = mode_overlap_eta(WF, waist_from(FIT_LENGTHS, R, LAM)) ** 2
        (slope,), *_ = np.linalg.lstsq(x[:, None], 1 - rho1, rcond=None)
        res = analysis.fit_intrinsic_reflectivity(zip(FIT_LENGTHS, rho1), GEOM)
        assert res.rho_estimate == pytest.approx(1 - slope, rel=1e-12)

    def test_noisy_monte_carlo(self):
        clean = plane_rho1(FIT_LENGTHS)
        est = [analysis.fit_intrinsic_reflectivity(
            zip(FIT_LENGTHS, clean * (1 + 0.01 * np.random.default_rng(s).standard_normal(10))),
            GEOM).rho_estimate for s in range(100)]
        assert np.mean(est) == pytest.approx(0.984, abs=0.002)

    def test_errors(self):
        with pytest.raises(FitError, match="at least 2"):
            analysis.fit_intrinsic_reflectivity([(50e-6, 0.98)], GEOM)
        wide = CavityGeometry.isotropic(LAM, 100e-6, R, 1.0)
        with pytest.raises(FitError, match="overlap"):
            analysis.fit_intrinsic_reflectivity([(50e-6, 0.98), (60e-6, 0.98)], wide)


def series_points(lengths, rho2):
    rho1 = plane_rho1(lengths)
    return [(L, finesse(a, b), contrast(a, b)) for L, a, b in zip(lengths, rho1, rho2)]


class TestReflectivitySeries:
    def test_constant_curved_mirror(self):
        out = analysis.reflectivity_series(series_points(FIT_LENGTHS, [0.95] * 10), GEOM)
        assert all(not p.flagged for p in out)
        np.testing.assert_allclose([p.rho1 for p in out], plane_rho1(FIT_LENGTHS), rtol=1e-9)
        np.testing.assert_allclose([p.rho2 for p in out], 0.95, rtol=1e-9)

    def test_crossing_curves(self):
        # curved mirror better than the plane one at short lengths, then plummeting
        lengths = np.linspace(20e-6, 180e-6, 17)
        rho2 = 0.995 - 0.2 * (lengths / R) ** 8
        out = analysis.reflectivity_series(series_points(lengths, rho2), GEOM)
        np.testing.assert_allclose([p.rho1 for p in out], plane_rho1(lengths), rtol=1e-9)
        np.testing.assert_allclose([p.rho2 for p in out], rho2, rtol=1e-9)
        assert any(p.swapped for p in out) and not all(p.swapped for p in out)

    def test_single_matched_point(self):
        [p] = analysis.reflectivity_series([(50e-6, finesse(0.98, 0.98), 1.0)], GEOM)
        assert p.rho1 == pytest.approx(p.rho2) == pytest.approx(0.98)

    def test_bad_point_is_flagged(self):
        pts = series_points(FIT_LENGTHS[:3], [0.95] * 3) + [(100e-6, 50.0, 0.0)]
        out = analysis.reflectivity_series(pts, GEOM)
        assert [p.flagged for p in out] == [False, False, False, True]
        assert np.isnan(out[-1].rho1)

    def test_assignment_invariant_under_consistent_scaling(self):
        lengths = np.linspace(20e-6, 180e-6, 17)
        rho2 = 0.995 - 0.2 * (lengths / R) ** 8
        pts = series_points(lengths, rho2)
        base = [p.swapped for p in analysis.reflectivity_series(pts, GEOM)]
        k = 3.0
        # L, R and w_f^2 scaled together leave eta(L) unchanged
        scaled_geom = CavityGeometry.isotropic(LAM, 100e-6 * k, R * k, WF * np.sqrt(k))
        scaled = [(L * k, F, C) for L, F, C in pts]
        assert [p.swapped for p in analysis.reflectivity_series(scaled, scaled_geom)] == base


def test_noise_estimate():
    rng = np.random.default_rng(0)
    y = np.sin(np.linspace(0, 3, 100000)) + rng.normal(0, 0.01, 100000)
    assert analysis.estimate_noise(y) == pytest.approx(0.01, rel=0.03)
