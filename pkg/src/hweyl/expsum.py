"""Truncated exponential-sum model of the mollified type-II remainder.

    R_eps(t) = t^{3/4} sum_j w_j cos(2 pi sqrt(t) f_j - pi/4)

Off-diagonal terms run over ``0 < nu < mu`` of equal parity with
``mu nu < T^alpha``; diagonal terms over ``nu^2 < T^alpha``.  Frequencies are
``sqrt(mu nu)``, so terms sharing the product ``mu nu`` are merged before
evaluation and each distinct frequency costs one cosine.
"""

from __future__ import annotations

import csv
import dataclasses
import math

import numpy as np

from hweyl.counting import remainder_H_scaled
from hweyl.errors import InvalidConfig, TermBudgetExceeded
from hweyl.mollifier import BumpProfile, mollified_count_H
from hweyl.spectrum import TWO_PI, JumpSequence

DEFAULT_GAMMA = 11 / 14
DEFAULT_ALPHA = 11 / 7 + 0.01
DEFAULT_MAX_TERMS = 40_000_000
_BLOCK = 1 << 16


@dataclasses.dataclass(frozen=True)
class ExpSumConfig:
    T: float
    gamma: float = DEFAULT_GAMMA
    alpha: float = DEFAULT_ALPHA

    def __post_init__(self):
        if not self.T > 1:
            raise InvalidConfig(f"T must exceed 1, got {self.T}")
        if not 1.5 < 2 * self.gamma < self.alpha < 2:
            raise InvalidConfig(f"need 3/2 < 2 gamma < alpha < 2, got gamma={self.gamma}, alpha={self.alpha}")

    @property
    def epsilon(self) -> float:
        return self.T**-self.gamma

    @property
    def cutoff(self) -> float:
        """Products ``mu nu`` must stay strictly below this."""
        return self.T**self.alpha


@dataclasses.dataclass(frozen=True)
class ExpSumTerm:
    mu: int
    nu: int
    weight: float
    frequency: float
    diagonal: bool


@dataclasses.dataclass(frozen=True, eq=False)
class ExpSumTerms:
    """Term list stored column-wise, ordered by ``mu nu`` then ``mu``."""

    mu: np.ndarray
    nu: np.ndarray
    weight: np.ndarray

    def __len__(self):
        return int(self.mu.size)

    def __getitem__(self, i) -> ExpSumTerm:
        mu, nu = int(self.mu[i]), int(self.nu[i])
        return ExpSumTerm(mu, nu, float(self.weight[i]), math.sqrt(mu * nu), mu == nu)

    def __iter__(self):
        return (self[i] for i in range(len(self)))

    @property
    def frequency(self) -> np.ndarray:
        return np.sqrt((self.mu * self.nu).astype(np.float64))

    @property
    def diagonal(self) -> np.ndarray:
        return self.mu == self.nu

    def merged(self) -> tuple[np.ndarray, np.ndarray]:
        """Distinct products ``mu nu`` and the summed weight of each."""
        prod = self.mu * self.nu
        if prod.size == 0:
            return prod, self.weight.copy()
        starts = np.flatnonzero(np.r_[True, prod[1:] != prod[:-1]])
        return prod[starts], np.add.reduceat(self.weight, starts)


def term_count(cutoff: float) -> int:
    """Number of terms below ``cutoff`` without materialising them."""
    total = 0
    for nu in range(1, math.isqrt(max(int(math.ceil(cutoff)) - 1, 0)) + 1):
        if nu * nu < cutoff:
            total += 1
        mu_max = math.ceil(cutoff / nu) - 1  # mu nu < cutoff
        if mu_max >= nu + 2:
            total += (mu_max - nu) // 2
    return total


def build_terms(config: ExpSumConfig, profile: BumpProfile, max_terms: int = DEFAULT_MAX_TERMS) -> ExpSumTerms:
    """All terms of the truncated sum for ``config``; ``profile`` is rescaled to ``T^-gamma``."""
    cutoff = config.cutoff
    n = term_count(cutoff)
    if n > max_terms:
        raise TermBudgetExceeded(f"{n} terms exceed the budget of {max_terms}")
    prof = profile.with_epsilon(config.epsilon)
    mus, nus = [], []
    for nu in range(1, math.isqrt(max(int(math.ceil(cutoff)) - 1, 0)) + 1):
        mu_max = math.ceil(cutoff / nu) - 1
        start = nu if nu * nu < cutoff else nu + 2
        mu = np.arange(start, mu_max + 1, 2, dtype=np.int64)
        mus.append(mu)
        nus.append(np.full(mu.size, nu, dtype=np.int64))
    mu = np.concatenate(mus) if mus else np.zeros(0, dtype=np.int64)
    nu = np.concatenate(nus) if nus else np.zeros(0, dtype=np.int64)
    order = np.lexsort((mu, mu * nu))
    mu, nu = mu[order], nu[order]

    sign = np.where(nu % 2 == 0, 1.0, -1.0)
    muf, nuf = mu.astype(np.float64), nu.astype(np.float64)
    diag = mu == nu
    weight = np.empty(mu.size)
    off = ~diag
    weight[off] = sign[off] * muf[off] ** -1.25 * nuf[off] ** -0.25 * prof.ft_scaled(0.5 * (muf[off] + nuf[off]), nuf[off]) / math.pi
    weight[diag] = sign[diag] * nuf[diag] ** -1.5 * prof.ft_scaled(nuf[diag], nuf[diag]) / (2 * math.pi)
    return ExpSumTerms(mu, nu, weight)


def _phase_sum(t: float, prod: np.ndarray, weight: np.ndarray) -> float:
    """``sum w cos(2 pi frac(sqrt(t n)) - pi/4)`` with the reduction in extended precision."""
    t_ld = np.longdouble(t)
    parts = []
    for lo in range(0, prod.size, _BLOCK):
        u = np.sqrt(t_ld * prod[lo : lo + _BLOCK].astype(np.longdouble))
        frac = (u - np.floor(u)).astype(np.float64)
        parts.append(float(weight[lo : lo + _BLOCK] @ np.cos(TWO_PI * frac - math.pi / 4)))
    return math.fsum(parts)


def evaluate_R_eps(t: float, terms: ExpSumTerms) -> float:
    """``t^{3/4} sum w cos(2 pi sqrt(t) f - pi/4)`` for ``t >= 1``."""
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    if len(terms) == 0:
        return 0.0
    prod, weight = terms.merged()
    return t**0.75 * _phase_sum(t, prod, weight)


def evaluate_R_eps_many(ts, terms: ExpSumTerms) -> np.ndarray:
    """:func:`evaluate_R_eps` over many ``t``, merging terms once."""
    ts = np.asarray(ts, dtype=np.float64)
    if np.any(ts < 1):
        raise ValueError("every t must be >= 1")
    if len(terms) == 0:
        return np.zeros(ts.size)
    prod, weight = terms.merged()
    return np.array([t**0.75 * _phase_sum(t, prod, weight) for t in ts])


@dataclasses.dataclass(frozen=True, eq=False)
class MeanSquareReport:
    T: float
    sample_count: int
    seed: int
    residual_ms: float
    gap_ms: float
    t: np.ndarray
    R_eps: np.ndarray
    R_exact: np.ndarray
    residual: np.ndarray

    @property
    def residual_rms(self) -> float:
        return math.sqrt(self.residual_ms)

    @property
    def gap_rms(self) -> float:
        return math.sqrt(self.gap_ms)


def meansquare_gap(
    config: ExpSumConfig,
    terms: ExpSumTerms,
    spectrum: JumpSequence,
    profile: BumpProfile,
    sample_count: int = 200,
    seed: int = 0,
) -> MeanSquareReport:
    """Sample mean over uniform ``t`` in ``[1, T]`` of two squared discrepancies.

    ``residual``: mollified count minus ``(2/3) t^{3/2} - t/2 + R_eps(t)``.
    ``gap``: ``R_eps(t)`` minus the sharp remainder at ``2 pi t``.
    """
    if sample_count < 100:
        raise ValueError("sample_count must be at least 100")
    T = config.T
    rng = np.random.default_rng(seed)
    ts = np.sort(rng.uniform(1.0, T, sample_count))
    prof = profile.with_epsilon(config.epsilon)
    r_eps = evaluate_R_eps_many(ts, terms)
    r_exact = np.atleast_1d(remainder_H_scaled(ts, spectrum))
    moll = np.array([mollified_count_H(float(t), prof) for t in ts])
    residual = moll - (2.0 / 3.0) * ts**1.5 + ts / 2 - r_eps
    return MeanSquareReport(
        T=T,
        sample_count=sample_count,
        seed=seed,
        residual_ms=float(np.mean(residual**2)),
        gap_ms=float(np.mean((r_eps - r_exact) ** 2)),
        t=ts,
        R_eps=r_eps,
        R_exact=r_exact,
        residual=residual,
    )


def amplitude_ratio(report: MeanSquareReport) -> float:
    """Least-squares slope of the sharp remainder against ``R_eps`` through the origin."""
    return float(report.R_exact @ report.R_eps / (report.R_eps @ report.R_eps))


def write_trace_csv(fh, report: MeanSquareReport) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["t", "R_eps", "R_exact", "abs_gap"])
    for t, a, b in zip(report.t, report.R_eps, report.R_exact):
        writer.writerow([f"{t:.17g}", f"{a:.17g}", f"{b:.17g}", f"{abs(a - b):.17g}"])
