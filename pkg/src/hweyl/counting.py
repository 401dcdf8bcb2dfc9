"""Weyl main terms and remainders.

Everything lives on the spectral axis ``s``.  The type-II remainder is also
offered on the scaled axis ``t = s / (2 pi)``, where its main term reads
``(2/3) t^{3/2} - t/2``.

Main terms are evaluated in x87 extended precision (``np.longdouble``) and the
remainder is rounded to double only at the end.  At ``s ~ 1e6`` the main term
is ~4e7, whose double ulp (~7e-9) is too coarse for identities checked at 1e-9.
"""

from __future__ import annotations

import csv
import dataclasses
import math

import numpy as np

from hweyl.spectrum import JumpSequence

_LD = np.longdouble
PI_LD = _LD("3.14159265358979323846264338327950288")
TWO_PI_LD = 2 * PI_LD
KAPPA_LD = np.sqrt(TWO_PI_LD) / (6 * PI_LD * PI_LD)

#: leading Weyl coefficient, sqrt(2 pi) / (6 pi^2)
KAPPA = math.sqrt(2 * math.pi) / (6 * math.pi**2)


@dataclasses.dataclass(frozen=True)
class WeylConstants:
    kappa: float
    volume: float


def weyl_constants(r: int = 1) -> WeylConstants:
    """``kappa = vol(B_3) vol(M) / (2 pi)^3`` with ``vol(M) = r sqrt(det g)``."""
    volume = r * math.sqrt(2 * math.pi)  # det diag(1, 1, 2 pi) = 2 pi
    ball = 4 * math.pi / 3
    return WeylConstants(kappa=ball * volume / (2 * math.pi) ** 3, volume=volume)


@dataclasses.dataclass(frozen=True)
class RemainderSample:
    s: float
    count: int
    main: float
    remainder: float


def _main_ld(s):
    s_ld = np.asarray(s, dtype=_LD)
    return KAPPA_LD * s_ld * np.sqrt(s_ld)


def main_term(s):
    """``kappa * s^{3/2}``; accepts scalars or arrays."""
    if np.any(np.asarray(s) < 0):
        raise ValueError("main_term needs s >= 0")
    out = _main_ld(s).astype(np.float64)
    return float(out) if out.ndim == 0 else out


def remainder(s, spectrum: JumpSequence):
    """``R(s) = N(s) - kappa s^{3/2}``.

    Returns a :class:`RemainderSample` for scalar ``s``; for array input the
    remainders come back as a float array.
    """
    count = spectrum.count(s)
    main = _main_ld(s)
    rem = (np.asarray(count, dtype=_LD) - main).astype(np.float64)
    if np.ndim(s) == 0:
        return RemainderSample(float(s), int(count), float(main), float(rem))
    return rem


def remainder_values(s, spectrum: JumpSequence) -> np.ndarray:
    return np.atleast_1d(remainder(np.atleast_1d(np.asarray(s, dtype=np.float64)), spectrum))


def remainder_H_scaled(t, spectrum: JumpSequence):
    """``R_H(2 pi t) = N_H(2 pi t) - (2/3) t^{3/2} + t/2``.

    ``t`` may be given as ``np.longdouble``; it is not rounded to double.
    """
    t_ld = np.asarray(t, dtype=_LD)
    if np.any(t_ld < 0):
        raise ValueError("remainder_H_scaled needs t >= 0")
    count = spectrum.count_typeII((TWO_PI_LD * t_ld).astype(np.float64))
    out = (np.asarray(count, dtype=_LD) - (2 * t_ld * np.sqrt(t_ld)) / 3 + t_ld / 2).astype(np.float64)
    return float(out) if out.ndim == 0 else out


def torus_remainder(s, spectrum: JumpSequence):
    """``N_T(s) - s / (4 pi)``, the lattice-point remainder of the torus branch."""
    s_ld = np.asarray(s, dtype=_LD)
    out = (np.asarray(spectrum.count_torus(s), dtype=_LD) - s_ld / (2 * TWO_PI_LD)).astype(np.float64)
    return float(out) if out.ndim == 0 else out


def write_remainder_csv(fh, s_values, spectrum: JumpSequence) -> None:
    """Trace with columns ``s,count,main,remainder``, 17 significant digits."""
    s_arr = np.asarray(s_values, dtype=np.float64)
    counts = np.atleast_1d(spectrum.count(s_arr))
    mains = np.atleast_1d(main_term(s_arr))
    rems = remainder_values(s_arr, spectrum)
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["s", "count", "main", "remainder"])
    for s, n, m, r in zip(s_arr, counts, mains, rems):
        writer.writerow([f"{s:.17g}", int(n), f"{m:.17g}", f"{r:.17g}"])
