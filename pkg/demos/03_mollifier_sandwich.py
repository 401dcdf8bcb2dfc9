"""
Smoothing the type-II count
===========================

Convolving the indicator of {x (x + 2y + 1) <= t} with a bump of width eps
gives a smooth count.  Shifting t by c T^{1 - gamma} either way traps the
sharp count between two smooth ones.
"""

import math

import numpy as np

from hweyl.mollifier import build_bump, mollified_count_H, shell_points, sandwich_check
from hweyl.spectrum import merged_jump_sequence

bump = build_bump()
print(f"bump mass constant {bump.normalization:.16f}, spline error {bump.interp_error:.1e}")
for xi in (0.5, 1, 5, 20, 50, 100):
    print(f"  rho1_hat({xi:5}) = {bump.ft1(xi): .6e}")

# a lattice point exactly on the curve keeps about half its weight
p = bump.with_epsilon(1e-3)
print(f"\nt = 4:   shell {shell_points(4.0, 1e-3)}, smooth count {mollified_count_H(4.0, p):.6f}")
print(f"t = 5:   smooth count {mollified_count_H(5.0, p):.6f}")

# sandwich at a few T and gamma
T = 1e4
seq = merged_jump_sequence(2 * math.pi * T)
for gamma in (11 / 14, 0.8, 1.0):
    rows = [sandwich_check(t, T, gamma, 3.0, seq, bump) for t in np.geomspace(2, T * 0.99, 6)]
    print(f"\ngamma = {gamma:.4f}, eps = {T**-gamma:.2e}")
    for r in rows:
        print(f"  t = {r.t:9.2f}   {r.lower:14.3f} <= {r.exact:9d} <= {r.upper:14.3f}   {'ok' if r.holds else 'VIOLATED'}")
