"""Independent oracles and the checks built on them."""

from __future__ import annotations

import bisect
import dataclasses
import math
from collections import Counter

import numpy as np

from hweyl.constants import brute_force_delta_zero, enumerate_delta_zero
from hweyl.counting import TWO_PI_LD, remainder_values, remainder_H_scaled, torus_remainder
from hweyl.moments import moment_integral, moment_integral_quadrature
from hweyl.mollifier import BumpProfile, build_bump, sandwich_check
from hweyl.spectrum import JumpSequence, merged_jump_sequence


@dataclasses.dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    worst: float = 0.0


def brute_force_eigenvalues(limit: float) -> list[float]:
    """Every eigenvalue up to ``limit`` with multiplicity, from plain double loops."""
    vals = []
    four_pi_sq = 4 * math.pi**2
    m_max = int(math.sqrt(limit / four_pi_sq)) + 1
    for m in range(-m_max, m_max + 1):
        for n in range(-m_max, m_max + 1):
            v = four_pi_sq * (m * m + n * n)
            if v <= limit:
                vals.append(v)
    c = 1
    while 2 * math.pi * c * (c + 1) <= limit:
        k = 0
        while True:
            v = 2 * math.pi * c * (c + 2 * k + 1)
            if v > limit:
                break
            vals.extend([v] * (2 * c))
            k += 1
        c += 1
    vals.sort()
    return vals


def brute_force_count(s_values, limit: float | None = None) -> np.ndarray:
    s_values = np.asarray(s_values, dtype=np.float64)
    vals = brute_force_eigenvalues(float(limit if limit is not None else s_values.max()))
    return np.array([bisect.bisect_right(vals, s) for s in s_values.tolist()], dtype=np.int64)


def check_counting_oracle(s_max: int = 10_000, spectrum: JumpSequence | None = None) -> CheckResult:
    s = np.arange(0, s_max + 1, dtype=np.float64)
    spectrum = spectrum or merged_jump_sequence(float(s_max))
    got = np.asarray(spectrum.count(s))
    want = brute_force_count(s)
    bad = np.flatnonzero(got != want)
    detail = f"integer s in [0, {s_max}]: {bad.size} mismatches"
    if bad.size:
        detail += f" (first at s={int(s[bad[0]])}: {int(got[bad[0]])} vs {int(want[bad[0]])})"
    return CheckResult("counting_oracle", bad.size == 0, detail, float(bad.size))


def check_cancellation(
    samples: int = 10_000, s_max: float = 1e6, seed: int = 0, tol: float = 1e-9, spectrum: JumpSequence | None = None
) -> CheckResult:
    """Full remainder against type-II remainder plus torus remainder."""
    spectrum = spectrum or merged_jump_sequence(s_max)
    s = np.random.default_rng(seed).uniform(1.0, s_max, samples)
    lhs = remainder_values(s, spectrum)
    t = s.astype(np.longdouble) / TWO_PI_LD  # a double t would shift (2/3) t^{3/2} by ~1e-8
    rhs = np.asarray(remainder_H_scaled(t, spectrum)) + np.asarray(torus_remainder(s, spectrum))
    worst = float(np.max(np.abs(lhs - rhs)))
    return CheckResult("cancellation", worst <= tol, f"{samples} samples in [1, {s_max:g}], max |diff| = {worst:.3e}", worst)


def check_moment_oracle(
    Ts=(1e2, 1e3), ks=(1, 2, 3), rtol: float = 1e-6, spectrum: JumpSequence | None = None
) -> CheckResult:
    spectrum = spectrum or merged_jump_sequence(max(Ts))
    worst, lines = 0.0, []
    for T in Ts:
        for k in ks:
            a = moment_integral(T, k, spectrum).value
            b = moment_integral_quadrature(T, k, spectrum).value
            rel = abs(a - b) / max(abs(b), 1e-300)
            worst = max(worst, rel)
            lines.append(f"T={T:g} k={k}: {a:.12g} vs {b:.12g}")
    return CheckResult("moment_oracle", worst <= rtol, "; ".join(lines) + f"; worst rel = {worst:.2e}", worst)


def check_sandwich(
    Ts=(1e3, 1e4),
    gammas=(11 / 14, 0.8, 1.0),
    c_gamma: float = 3.0,
    points: int = 100,
    seed: int = 0,
    profile: BumpProfile | None = None,
    spectrum: JumpSequence | None = None,
) -> CheckResult:
    """Lower and upper mollified counts bracket the sharp count at log-uniform ``t``."""
    profile = profile or build_bump()
    spectrum = spectrum or merged_jump_sequence(2 * math.pi * max(Ts))
    rng = np.random.default_rng(seed)
    total = violations = 0
    worst = 0.0
    for T in Ts:
        ts = np.exp(rng.uniform(0.0, math.log(T), points))
        ts = ts[(ts > 1) & (ts < T)]
        for gamma in gammas:
            for t in ts.tolist():
                rep = sandwich_check(t, T, gamma, c_gamma, spectrum, profile)
                total += 1
                if not rep.holds:
                    violations += 1
                    worst = max(worst, rep.lower - rep.exact, rep.exact - rep.upper)
    return CheckResult("sandwich", violations == 0, f"{total} checks, {violations} violations", worst)


def check_delta_zero_oracle(limit: int = 200) -> CheckResult:
    fast = Counter((t.sum_id, t.pairs) for t in enumerate_delta_zero(limit))
    slow = Counter(brute_force_delta_zero(limit))
    diff = (fast - slow) + (slow - fast)
    n = sum(diff.values())
    return CheckResult("delta_zero_oracle", n == 0, f"limit {limit}: {sum(fast.values())} terms, {n} differ", float(n))


def run_all(limit: float = 1e4, seed: int = 0) -> list[CheckResult]:
    """Oracle-equivalence and sandwich suites scaled to ``limit``."""
    spectrum = merged_jump_sequence(max(limit, 2 * math.pi * limit))
    moment_Ts = tuple(T for T in (1e2, 1e3) if T <= limit) or (limit,)
    return [
        check_counting_oracle(int(limit), spectrum),
        check_cancellation(min(10_000, int(limit)), limit, seed, spectrum=spectrum),
        check_moment_oracle(moment_Ts, spectrum=spectrum),
        check_delta_zero_oracle(min(200, int(limit))),
        check_sandwich((min(1e3, limit), limit) if limit > 1e3 else (limit,), seed=seed, spectrum=spectrum),
    ]
