"""Moments of the remainder, integrated exactly between jumps.

Between consecutive eigenvalues ``N(s) = C`` is constant, so ``R(s)^k`` is
``(C - kappa s^{3/2})^k``.  With ``x = sqrt(s)`` this becomes the polynomial
``2x (C - kappa x^3)^k`` in ``x``, whose integral is closed form.  To keep
the closed form stable when ``C`` and ``kappa s^{3/2}`` are both ~1e7 and
nearly cancel, each interval is re-expanded around its midpoint ``x = m + y``
so the constant coefficient is the remainder at ``m`` itself; the odd powers
of ``y`` then integrate to zero over the symmetric interval.

Interval contributions are accumulated with :func:`math.fsum` (Shewchuk's
exact partials), which matters at ``k = 3`` over ~1e6 intervals.
"""

from __future__ import annotations

import dataclasses
import enum
import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy import integrate

from hweyl.counting import KAPPA_LD, PI_LD, remainder_values, torus_remainder
from hweyl.errors import NonpositiveValue, OutOfRange, UnsupportedMoment
from hweyl.spectrum import JumpSequence, torus_jump_sequence

SUPPORTED_K = (1, 2, 3)
_CHUNK = 1 << 20


class Method(enum.Enum):
    PIECEWISE_EXACT = "piecewise_exact"
    QUADRATURE = "quadrature"


class MainTerm(enum.Enum):
    WEYL = "weyl"  # kappa s^{3/2}, full spectrum
    TORUS = "torus"  # s / (4 pi), torus branch alone


@dataclasses.dataclass(frozen=True)
class MomentResult:
    T: float
    k: int
    value: float
    method: Method
    interval_count: int


@dataclasses.dataclass(frozen=True)
class PowerFit:
    exponent: float
    coefficient: float
    residual_rms: float
    points_used: int


def _polymul(a, b):
    out = np.zeros((a.shape[0], a.shape[1] + b.shape[1] - 1))
    for i in range(a.shape[1]):
        out[:, i : i + b.shape[1]] += a[:, i : i + 1] * b
    return out


def _interval_integrals(lo, hi, counts, k, main):
    """Exact ``int_lo^hi (C - main(s))^k ds`` for each interval."""
    counts_ld = counts.astype(np.longdouble)
    if main is MainTerm.WEYL:
        xa, xb = np.sqrt(lo), np.sqrt(hi)
        mid = 0.5 * (xa + xb)
        half = 0.5 * (hi - lo) / (xa + xb)
        mid_ld = mid.astype(np.longdouble)
        r_mid = (counts_ld - KAPPA_LD * mid_ld**3).astype(np.float64)
        kap = float(KAPPA_LD)
        # C - kappa (m + y)^3 = r_mid - kappa (3 m^2 y + 3 m y^2 + y^3)
        q = np.stack([r_mid, -3 * kap * mid**2, -3 * kap * mid, np.full_like(mid, -kap)], axis=1)
        jac = np.stack([2 * mid, np.full_like(mid, 2.0)], axis=1)
    else:
        mid = 0.5 * (lo + hi)
        half = 0.5 * (hi - lo)
        slope = 1.0 / float(4 * PI_LD)
        r_mid = (counts_ld - mid.astype(np.longdouble) / (4 * PI_LD)).astype(np.float64)
        q = np.stack([r_mid, np.full_like(mid, -slope)], axis=1)
        jac = np.ones((mid.size, 1))
    poly = jac
    for _ in range(k):
        poly = _polymul(poly, q)
    total = np.zeros(mid.size)
    for j in range(0, poly.shape[1], 2):
        total += poly[:, j] * (2.0 * half ** (j + 1) / (j + 1))
    return total


def _check_k(k):
    if k not in SUPPORTED_K:
        raise UnsupportedMoment(f"k must be one of {SUPPORTED_K}, got {k!r}")


def _check_grid(T_grid, spectrum):
    grid = np.asarray(T_grid, dtype=np.float64)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("T_grid must be a non-empty 1-d sequence")
    if np.any(np.diff(grid) < 0):
        raise ValueError("T_grid must be sorted ascending")
    if grid[0] < 1 or grid[-1] > spectrum.limit:
        raise OutOfRange(f"T_grid must lie in [1, {spectrum.limit}]")
    return grid


def _curve(T_grid, k, spectrum, main):
    _check_k(k)
    grid = _check_grid(T_grid, spectrum)
    t_max = grid[-1]
    jumps = spectrum.jumps
    inner = jumps[(jumps > 1.0) & (jumps < t_max)]
    bp = np.unique(np.concatenate([[1.0], inner, grid]))
    cumulative = spectrum.torus_cumulative if main is MainTerm.TORUS else spectrum.cumulative
    counts = cumulative[np.searchsorted(jumps, bp[:-1], side="right") - 1]

    pieces = np.empty(max(bp.size - 1, 0))
    for start in range(0, pieces.size, _CHUNK):
        stop = min(pieces.size, start + _CHUNK)
        pieces[start:stop] = _interval_integrals(bp[start:stop], bp[start + 1 : stop + 1], counts[start:stop], k, main)

    ends = np.searchsorted(bp, grid)
    results, segment_sums, prev = [], [], 0
    for T, end in zip(grid, ends):
        segment_sums.append(math.fsum(pieces[prev:end].tolist()))
        prev = end
        results.append(MomentResult(float(T), k, math.fsum(segment_sums), Method.PIECEWISE_EXACT, int(end)))
    return results


def moment_curve(T_grid, k: int, spectrum: JumpSequence) -> list[MomentResult]:
    """``int_1^T R(s)^k ds`` at every ``T`` of an ascending grid, in one pass."""
    return _curve(T_grid, k, spectrum, MainTerm.WEYL)


def moment_integral(T: float, k: int, spectrum: JumpSequence) -> MomentResult:
    """Exact-to-roundoff ``int_1^T (N(s) - kappa s^{3/2})^k ds``."""
    return moment_curve([T], k, spectrum)[0]


def moment_curves(T_grid, ks, spectrum: JumpSequence, threads: int = 1) -> dict[int, list[MomentResult]]:
    """Several orders over the same grid; orders are independent and may run concurrently."""
    if threads <= 1:
        return {k: moment_curve(T_grid, k, spectrum) for k in ks}
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = {k: pool.submit(moment_curve, T_grid, k, spectrum) for k in ks}
        return {k: f.result() for k, f in futures.items()}


def torus_moment_curve(T_grid, k: int, spectrum: JumpSequence | None = None) -> list[MomentResult]:
    """Moments of the torus remainder ``N_T(s) - s/(4 pi)`` alone."""
    if spectrum is None:
        spectrum = torus_jump_sequence(float(np.max(T_grid)))
    return _curve(T_grid, k, spectrum, MainTerm.TORUS)


def torus_moment_integral(T: float, k: int, spectrum: JumpSequence | None = None) -> MomentResult:
    return torus_moment_curve([T], k, spectrum)[0]


def moment_integral_quadrature(
    T: float,
    k: int,
    spectrum: JumpSequence,
    *,
    torus_only: bool = False,
    rtol: float = 1e-10,
) -> MomentResult:
    """Adaptive-quadrature oracle for :func:`moment_integral`.

    Samples the remainder pointwise through the counting function and hands
    each constant-count stretch to QUADPACK; shares no code with the closed
    form above.
    """
    _check_k(k)
    if not 1 <= T <= spectrum.limit:
        raise OutOfRange(f"T must lie in [1, {spectrum.limit}]")
    if torus_only:
        def integrand(s):
            return torus_remainder(s, spectrum) ** k
    else:
        def integrand(s):
            return float(remainder_values(s, spectrum)[0]) ** k
    jumps = spectrum.jumps
    edges = np.concatenate([[1.0], jumps[(jumps > 1.0) & (jumps < T)], [T]])
    parts = []
    for a, b in zip(edges[:-1], edges[1:]):
        if b > a:
            val, _ = integrate.quad(integrand, a, b, epsabs=1e-13, epsrel=rtol, limit=200)
            parts.append(val)
    return MomentResult(float(T), k, math.fsum(parts), Method.QUADRATURE, len(parts))


def _curve_arrays(curve):
    T = np.array([r.T for r in curve], dtype=np.float64)
    v = np.array([r.value for r in curve], dtype=np.float64)
    return T, v


def fit_power_law(curve) -> PowerFit:
    """Least-squares line through ``(log T, log value)``.

    Raises :class:`NonpositiveValue` when any value is ``<= 0``: a sign
    change makes the log-log fit meaningless.
    """
    T, v = _curve_arrays(curve)
    if T.size < 3:
        raise ValueError("a power-law fit needs at least 3 points")
    if np.any(v <= 0):
        bad = ", ".join(f"T={t:g}: {x:.6g}" for t, x in zip(T, v) if x <= 0)
        raise NonpositiveValue(f"nonpositive values in curve ({bad})")
    x, y = np.log(T), np.log(v)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    return PowerFit(float(slope), float(math.exp(intercept)), float(np.sqrt(np.mean(resid**2))), int(T.size))


def fit_coefficient(curve, exponent: float) -> float:
    """Coefficient ``C`` of ``C T^exponent`` with the exponent held fixed (log-space mean)."""
    T, v = _curve_arrays(curve)
    if np.any(v <= 0):
        raise NonpositiveValue("fixed-exponent fit needs strictly positive values")
    return float(np.exp(np.mean(np.log(v) - exponent * np.log(T))))


def moments_report(k: int, curve, fit: PowerFit | None) -> dict:
    """JSON-ready report; keys are fixed regardless of whether a fit exists."""
    return {
        "k": k,
        "grid": [{"T": r.T, "value": r.value} for r in curve],
        "fit": {
            "exponent": fit.exponent if fit else None,
            "coefficient": fit.coefficient if fit else None,
            "residual_rms": fit.residual_rms if fit else None,
        },
    }
