# # Fitting the fiber-mirror stack reflectivity across cavity lengths
#
# Measurements of finesse and contrast at several lengths are inverted to
# per-mirror reflectivities. The plane-mirror series is then fitted with the
# overlap model 1 - eta(L)^2 (1 - rho) to recover the stack reflectivity.

import numpy as np

from fibercavity import analysis, design, simulate

geom, plane, curved = design.preset("gold")
rng = np.random.default_rng(2024)
points = []
for L in np.linspace(30e-6, 170e-6, 8):
    cfg = simulate.scan_config(geom.with_length(L), plane, curved, noise_sigma=0.002,
                               seed=int(rng.integers(2**31)))
    F, C = analysis.finesse_contrast_from_trace(simulate.simulate_scan(cfg))
    points.append((L, F, C))

series = analysis.reflectivity_series(points, geom)
print(f"{'L (um)':>7} {'F':>7} {'C':>6} {'rho1':>8} {'rho2':>8}")
for (L, F, C), p in zip(points, series):
    print(f"{L * 1e6:7.1f} {F:7.2f} {C:6.3f} {p.rho1:8.5f} {p.rho2:8.5f}")

fit = analysis.fit_intrinsic_reflectivity([(p.L, p.rho1) for p in series], geom)
print(f"\nfitted stack reflectivity {fit.rho_estimate:.4f} (true {plane.reflectivity}), "
      f"residual rms {fit.residual_rms:.1e}")
