"""
Resonance constants
===================

b3 collects triples with sqrt(n1) + sqrt(n2) = sqrt(n3).  All terms are
positive, but the main sum converges slowly in the cutoff.  c2 calibrates the
second moment of the lattice-point remainder, where it can be compared
against a direct integration.
"""

import numpy as np

from hweyl.constants import D3_SCALE, b3_estimate, c2_partial, full_resonance_b3
from hweyl.moments import fit_coefficient, fit_power_law, torus_moment_curve
from hweyl.spectrum import torus_jump_sequence

print("   limit        b3           change    tail estimate")
prev = None
for L in (2500, 5000, 10_000, 20_000, 40_000, 80_000):
    est = b3_estimate(L)
    change = "" if prev is None else f"{(est.partial - prev) / prev:9.2e}"
    print(f"{L:8d}  {est.partial:.8e}  {change:>9}  {est.tail_estimate:.2e}")
    prev = est.partial

est = b3_estimate(10_000)
print("\nper-sum partials at 1e4:", " ".join(f"{x:.3e}" for x in est.per_sum_partials))
print(f"d3 from the four sums       {D3_SCALE * est.partial:.4e}")
print(f"d3 from every resonance     {D3_SCALE * full_resonance_b3(10_000):.4e}")
print(f"  same with doubled weights {D3_SCALE * full_resonance_b3(10_000, amplitude=2.0):.4e}")

# torus calibration: second moment of N_T(s) - s / (4 pi)
grid = np.geomspace(1e4, 1e7, 13)
curve = torus_moment_curve(grid, 2, torus_jump_sequence(grid[-1]))
fit = fit_power_law(curve)
print(f"\ntorus k=2: exponent {fit.exponent:.4f}, coefficient of T^1.5 {fit_coefficient(curve, 1.5):.5f}")
print(f"c2 partial sum to 1e6       {c2_partial(10**6):.5f}")
