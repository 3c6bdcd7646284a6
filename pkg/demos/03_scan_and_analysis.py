# # Simulated piezo scan and its analysis
#
# A synthetic reflection trace over two free spectral ranges, with first- and
# second-order transverse satellites and detector noise, is analysed back
# into finesse, contrast and radius of curvature.

from fibercavity import analysis, design, invert_finesse_contrast, simulate

geom, plane, curved = design.preset("gold", 150e-6)
cfg = simulate.scan_config(geom, plane, curved, fsr_count=2.0, points_per_linewidth=40,
                           max_transverse_order=2, noise_sigma=0.005, seed=1)
trace = simulate.simulate_scan(cfg)
truth = trace.truth
print(f"{cfg.samples} samples, pitch {cfg.pitch * 1e12:.1f} pm")

# ## Dips

for d in analysis.find_dips(trace):
    kind = "principal" if d.transverse_order_hint == 0 else "satellite"
    print(f"{kind:>9} at {d.position * 1e9:8.2f} nm  depth {d.depth:.3f}  "
          f"FWHM {d.fwhm * 1e9:.3f} nm")

# ## Finesse and contrast

F, C = analysis.finesse_contrast_from_trace(trace)
print(f"F = {F:.1f} (model {truth.finesse:.1f}),  C = {C:.3f} (model {truth.contrast:.3f})")

# ## Radius of curvature from the satellite offset

R_est = analysis.radius_from_scan_pair(150e-6, trace, geom.wavelength)
print(f"R = {R_est * 1e6:.2f} um (model {geom.radius * 1e6:.2f} um)")

# ## Back to mirror reflectivities
#
# A single (F, C) pair fixes the two reflectivities up to a swap.

for rho_a, rho_b in invert_finesse_contrast(F, C):
    print(f"rho pair: {rho_a:.5f}, {rho_b:.5f}")
print(f"model:    {truth.rho1:.5f}, {truth.rho2:.5f}")
