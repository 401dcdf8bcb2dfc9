"""
Moments of the remainder
========================

The integrals of R(s)^k from 1 to T are computed exactly between jumps.  The
second moment settles into a T^{5/2} law quickly.  The third moment is a
small signed average of a large oscillating quantity, and is still negative
at some T in the low thousands.
"""

import numpy as np

from hweyl.errors import NonpositiveValue
from hweyl.moments import fit_power_law, moment_curves, moment_integral, moment_integral_quadrature
from hweyl.spectrum import merged_jump_sequence

grid = 1e3 * 2.0 ** np.arange(11)
seq = merged_jump_sequence(grid[-1])

# closed form vs adaptive quadrature at a small T
for k in (1, 2, 3):
    a, b = moment_integral(1e3, k, seq).value, moment_integral_quadrature(1e3, k, seq).value
    print(f"k={k}: piecewise {a:.10e}   quadrature {b:.10e}")

curves = moment_curves(grid, (1, 2, 3), seq, threads=3)
print("\n       T          k=1            k=2            k=3")
for row in zip(grid, *(curves[k] for k in (1, 2, 3))):
    print(f"{row[0]:10.0f}  " + "  ".join(f"{r.value:13.5e}" for r in row[1:]))

for k, target in ((2, 2.5), (3, 3.25)):
    try:
        fit = fit_power_law(curves[k])
        print(f"k={k}: exponent {fit.exponent:.4f} (expected {target}), coefficient {fit.coefficient:.4e}")
    except NonpositiveValue as exc:
        print(f"k={k}: no log-log fit, {exc}")

# where the third moment is positive, its scale against T^{13/4}
scaled = [r.value / r.T**3.25 for r in curves[3] if r.value > 0]
print("k=3 value / T^3.25 on the positive points:", " ".join(f"{x:.2e}" for x in scaled))
