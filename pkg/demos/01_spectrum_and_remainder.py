"""
Counting eigenvalues and the Weyl remainder
===========================================

The spectrum has a torus part 4 pi^2 (m^2 + n^2) and a type-II part
2 pi c (c + 2k + 1) with multiplicity 2c.  Here we list the bottom of both,
count up to a cutoff, and look at how far the count strays from kappa s^{3/2}.
"""

import math

import numpy as np

from hweyl.counting import KAPPA, remainder, remainder_H_scaled, torus_remainder
from hweyl.spectrum import merged_jump_sequence, torus_eigenvalues, typeII_eigenvalues

# the first few values of each branch
for e in torus_eigenvalues(200):
    print(f"torus   {e.value:9.4f}  x{e.multiplicity:<3d} (m, n) = {e.index}")
for e in typeII_eigenvalues(60):
    print(f"type II {e.value:9.4f}  x{e.multiplicity:<3d} (c, k) = {e.index}")

# one merged counting function up to 1e6
seq = merged_jump_sequence(1e6)
print(f"\n{len(seq)} distinct eigenvalues below 1e6, N(1e6) = {seq.count(1e6)}")
print(f"kappa = {KAPPA:.10f}")

# the remainder wanders on the scale s^{3/4}
for s in np.geomspace(1e2, 1e6, 5):
    r = remainder(s, seq)
    print(f"s = {s:10.1f}  N = {r.count:9d}  R = {r.remainder:12.4f}  R / s^0.75 = {r.remainder / s**0.75:8.4f}")

# the full remainder splits into a type-II part and a lattice-point part
s = 123456.7
t = np.longdouble(s) / (2 * np.longdouble(math.pi))
parts = remainder_H_scaled(t, seq), torus_remainder(s, seq)
print(f"\nR({s}) = {remainder(s, seq).remainder:.9f}  vs  {parts[0]:.9f} + {parts[1]:.9f} = {sum(parts):.9f}")
