# # Mode geometry of the plano-concave fiber cavity
#
# Spot sizes on both mirrors and on the fiber, versus cavity length, for a
# 185 um concave mirror at 780 nm.

import numpy as np

from fibercavity import geometry

lam, R, w_f = 780e-9, 185e-6, 2.65e-6
L = np.linspace(10e-6, 180e-6, 18)

w1 = geometry.waist_from(L, R, lam)
w2 = geometry.spot_from(L, R, lam)
eta = geometry.mode_overlap_eta(w_f, w1)

print(f"{'L (um)':>8} {'w1 (um)':>8} {'w2 (um)':>8} {'eta':>7}")
for row in zip(L * 1e6, w1 * 1e6, w2 * 1e6, eta):
    print("{:8.1f} {:8.3f} {:8.3f} {:7.4f}".format(*row))

# The waist peaks at the confocal length; the spot on the curved mirror
# diverges as L approaches R.

print("waist maximal near L =", L[np.argmax(w1)] * 1e6, "um")

# ## Transverse modes and the radius of curvature
#
# Adjacent transverse orders are separated by a small mirror displacement.
# Measuring that displacement at a known length gives R back.

spacing = geometry.transverse_mode_spacing(150e-6, R, lam)
print(f"transverse spacing at 150 um: {spacing * 1e9:.1f} nm")
print(f"recovered R: {geometry.radius_from_spacing(150e-6, spacing, lam) * 1e6:.3f} um")

# A 4 um difference between the principal radii splits each transverse
# resonance into a doublet.

split = geometry.astigmatic_splitting(150e-6, 183e-6, 187e-6, lam)
print(f"astigmatic doublet splitting: {split * 1e9:.2f} nm")
