# # Finesse, contrast and effective reflectivities of the gold cavity
#
# Forward model for the gold-mirror cavity: a 98.4% dielectric stack on the
# fiber tip, whose effective reflectivity depends on how well the fiber mode
# overlaps the cavity mode, facing a gold mirror with 10 nm roughness.

import numpy as np

from fibercavity import design

geom, plane, curved = design.preset("gold")
rows = design.design_sweep(geom, plane, curved, np.linspace(20e-6, 180e-6, 17))

print(f"{'L (um)':>7} {'rho1':>8} {'rho2':>8} {'F':>7} {'C':>6} {'Q':>9}")
for r in rows:
    print(f"{r.L * 1e6:7.1f} {r.rho1:8.5f} {r.rho2:8.5f} {r.finesse:7.1f} "
          f"{r.contrast:6.3f} {r.q_factor:9.3e}")

# Finesse stays near 100 over the whole range. Contrast dips at the confocal
# length because the plane-mirror loss is largest where the cavity waist is
# largest and the mode match with the 2.65 um fiber mode is worst.

# ## Atom-cavity coupling along the sweep

print(f"\n{'L (um)':>7} {'g (1/s)':>10} {'kappa (1/s)':>12} {'g^2/(kappa Gamma)':>18}")
for r in rows[::4]:
    print(f"{r.L * 1e6:7.1f} {r.g:10.3e} {r.kappa:12.3e} {r.cooperativity:18.3f}")
