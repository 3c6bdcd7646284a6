# # One atom in the dielectric cavity
#
# Reflection spectra with and without a single rubidium atom at an antinode of
# the 25 um dielectric cavity, where g^2/(kappa Gamma) is close to 40.

import numpy as np

from fibercavity import cqed, design, geometry

geom, plane, curved = design.preset("dielectric", 25e-6)
perf = design.performance(geom, plane, curved)
g = cqed.coupling_g(geom.wavelength, geometry.waist_w1(geom), geom.cavity_length)
k = cqed.kappa(geom.cavity_length, perf.finesse)
print(f"g = {g:.3e} /s, kappa = {k:.3e} /s, cooperativity = {cqed.cooperativity(g, k):.1f}")

detuning = np.linspace(-3 * g, 3 * g, 6001)
empty = cqed.reflection_spectrum(detuning, perf.contrast, g, k, atom_present=False)
loaded = cqed.reflection_spectrum(detuning, perf.contrast, g, k)

# The atom splits the single cavity dip into a doublet.

peaks = cqed.find_rabi_peaks(detuning, loaded)
print("dips without atom at", cqed.find_rabi_peaks(detuning, empty) / g, "g")
print("dips with atom at   ", np.round(peaks / g, 3), "g")

# On resonance the reflected fraction rises almost to unity.

without, with_atom = cqed.atom_line_centre_reflection(perf.contrast, g, k)
print(f"on-resonance reflection: {without:.3f} -> {with_atom:.5f}")

# ## Gold cavity
#
# Far from strong coupling, yet one atom still lifts the reflection dip.

geom, plane, curved = design.preset("gold", 150e-6)
g = cqed.coupling_g(geom.wavelength, geometry.waist_w1(geom), geom.cavity_length)
k = cqed.kappa(geom.cavity_length, 100)
without, with_atom = cqed.atom_line_centre_reflection(0.7, g, k)
print(f"gold cavity: {without:.2f} -> {with_atom:.2f}")
