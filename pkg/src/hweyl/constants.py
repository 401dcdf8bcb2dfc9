"""Series constants: the third-moment constant b3, d3, and the torus c2.

Resonant triples satisfy ``sqrt(n1) + sqrt(n2) = sqrt(n3)`` with
``n_j = mu_j nu_j``.  Writing ``n_j = k m_j^2`` with ``k`` square-free turns
this into ``m1 + m2 = m3``.  Equal parity of ``mu`` and ``nu`` then forces
``nu = m (mod 2)``, so ``(-1)^{nu1 + nu2 + nu3} = (-1)^{2 m3} = 1`` and every
term is positive.

Diagonal factors (``mu = nu``) have ``n = nu^2`` and so only occur with
``k = 1``.  Per kernel, the weights of all divisor pairs of ``k m^2`` are
summed into a single coefficient ``W_k(m)``, after which each sum is a
convolution in ``m``.
"""

from __future__ import annotations

import dataclasses
import math
from collections.abc import Iterator

import numpy as np

from hweyl.spectrum import r2_table

PREFACTORS = (
    3 * math.sqrt(2) / (26 * math.pi**3),
    3 * math.sqrt(2) / (208 * math.pi**3),
    9 * math.sqrt(2) / (52 * math.pi**3),
    9 * math.sqrt(2) / (104 * math.pi**3),
)
# which slots are diagonal in sums 1..4
SLOT_PATTERNS = {1: (False, False, False), 2: (True, True, True), 3: (False, False, True), 4: (True, False, False)}
D3_SCALE = (2 * math.pi) ** -2.25


def square_free(k: int) -> bool:
    if k < 1:
        raise ValueError("k must be positive")
    d = 2
    while d * d <= k:
        if k % (d * d) == 0:
            return False
        d += 1
    return True


def spf_sieve(n: int) -> np.ndarray:
    """Smallest prime factor of every integer up to ``n`` (0 and 1 map to themselves)."""
    spf = np.arange(n + 1, dtype=np.int64)
    for p in range(2, math.isqrt(n) + 1):
        if spf[p] == p:
            block = spf[p * p :: p]
            np.minimum(block, p, out=block)
    return spf


def _divisors(n: int, spf: np.ndarray) -> list[int]:
    divs = [1]
    while n > 1:
        p, e = int(spf[n]), 0
        while n % p == 0:
            n //= p
            e += 1
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def same_parity_pairs(n: int, allow_equal: bool, spf: np.ndarray | None = None) -> list[tuple[int, int]]:
    """Pairs ``(nu, mu)`` with ``nu mu = n``, ``nu <= mu`` (strict unless ``allow_equal``), equal parity."""
    if n < 1:
        raise ValueError("n must be positive")
    if spf is None or spf.size <= n:
        spf = spf_sieve(n)
    out = []
    for nu in _divisors(n, spf):
        mu = n // nu
        if nu > mu or (nu == mu and not allow_equal):
            break
        if (mu - nu) % 2 == 0:
            out.append((nu, mu))
    return out


def _pair_weight(nu: int, mu: int) -> float:
    return mu**-1.25 * nu**-0.25 if nu != mu else nu**-1.5


@dataclasses.dataclass(frozen=True)
class DeltaZeroTerm:
    kernel: int
    m1: int
    m2: int
    m3: int
    pairs: tuple[tuple[int, int], tuple[int, int], tuple[int, int]]  # (nu, mu) per slot
    weight: float
    sum_id: int


def _slot_options(k: int, m: int, diagonal: bool, spf) -> list[tuple[int, int]]:
    if diagonal:
        return [(m, m)] if k == 1 else []
    return same_parity_pairs(k * m * m, False, spf)


def enumerate_delta_zero(limit: int) -> Iterator[DeltaZeroTerm]:
    """Every term of the four resonance sums with ``k m3^2 <= limit``.

    Ordered by kernel, ``m3``, ``m1``, sum id, then pair choices.  Every term
    is checked for the resonance and parity identities as it is produced.
    """
    if limit < 1:
        raise ValueError("limit must be positive")
    spf = spf_sieve(limit)
    for k in range(1, limit + 1):
        if not square_free(k):
            continue
        m_max = math.isqrt(limit // k)
        for m3 in range(2, m_max + 1):
            for m1 in range(1, m3):
                m2 = m3 - m1
                for sum_id, pattern in SLOT_PATTERNS.items():
                    opts = [_slot_options(k, m, d, spf) for m, d in zip((m1, m2, m3), pattern)]
                    for p1 in opts[0]:
                        for p2 in opts[1]:
                            for p3 in opts[2]:
                                pairs = (p1, p2, p3)
                                nus = [p[0] for p in pairs]
                                assert (-1) ** sum(nus) == 1
                                roots = [math.sqrt(p[0] * p[1]) for p in pairs]
                                assert abs(roots[0] + roots[1] - roots[2]) < 1e-12 * max(1.0, roots[2])
                                w = math.prod(_pair_weight(*p) for p in pairs)
                                yield DeltaZeroTerm(k, m1, m2, m3, pairs, w, sum_id)


def brute_force_delta_zero(limit: int) -> list[tuple[int, tuple]]:
    """``(sum_id, pairs)`` for every resonant triple, by direct search over all pair triples.

    Uses the integer identity ``(n3 - n1 - n2)^2 = 4 n1 n2`` with ``n3 >= n1 + n2``;
    intended for small limits.
    """
    pairs = [(nu, mu) for n in range(1, limit + 1) for nu in range(1, math.isqrt(n) + 1)
             if n % nu == 0 and (n // nu - nu) % 2 == 0 for mu in (n // nu,)]
    prods = np.array([nu * mu for nu, mu in pairs], dtype=np.int64)
    diag = np.array([nu == mu for nu, mu in pairs])
    patterns = {v: k for k, v in SLOT_PATTERNS.items()}
    found = []
    for i, a in enumerate(pairs):
        for j, b in enumerate(pairs):
            gap = prods - prods[i] - prods[j]
            hits = np.flatnonzero((gap >= 0) & (gap * gap == 4 * prods[i] * prods[j]))
            for h in hits.tolist():
                sid = patterns.get((bool(diag[i]), bool(diag[j]), bool(diag[h])))
                if sid is not None:
                    found.append((sid, (a, b, pairs[h])))
    return found


@dataclasses.dataclass(frozen=True)
class SeriesEstimate:
    partial: float
    truncation_limit: int
    tail_estimate: float
    per_sum_partials: tuple[float, float, float, float]


def _pair_weight_table(n_max: int) -> np.ndarray:
    """``F(n) = sum mu^{-5/4} nu^{-1/4}`` over equal-parity ``nu < mu`` with ``nu mu = n``."""
    F = np.zeros(n_max + 1)
    for nu in range(1, math.isqrt(n_max) + 1):
        mu = np.arange(nu + 2, n_max // nu + 1, 2, dtype=np.int64)
        np.add.at(F, mu * nu, mu.astype(np.float64) ** -1.25 * nu**-0.25)
    return F


def _squarefree_mask(n: int) -> np.ndarray:
    mask = np.ones(n + 1, dtype=bool)
    mask[0] = False
    for p in range(2, math.isqrt(n) + 1):
        mask[p * p :: p * p] = False
    return mask


def _resonance_sums(limit: int) -> list[float]:
    """Unscaled sums 1..4 with ``k m3^2 <= limit``."""
    F = _pair_weight_table(limit)
    sqf = _squarefree_mask(limit)
    s1 = []
    for k in np.flatnonzero(sqf[: limit // 4 + 1]).tolist():  # m3 >= 2
        m_max = math.isqrt(limit // k)
        m = np.arange(m_max + 1)
        w = F[k * m * m]
        w[0] = 0.0
        s1.append(float(w @ np.convolve(w, w)[: m_max + 1]))
    m_max = math.isqrt(limit)
    m = np.arange(m_max + 1, dtype=np.float64)
    wf = F[(np.arange(m_max + 1) ** 2)]
    wf[0] = 0.0
    wg = np.zeros(m_max + 1)
    wg[1:] = m[1:] ** -1.5
    ff = np.convolve(wf, wf)[: m_max + 1]
    gf = np.convolve(wg, wf)[: m_max + 1]
    gg = np.convolve(wg, wg)[: m_max + 1]
    return [math.fsum(s1), float(wg @ gg), float(wg @ ff), float(wf @ gf)]


def _b3_partial(limit: int) -> tuple[float, tuple[float, ...]]:
    per = tuple(c * s for c, s in zip(PREFACTORS, _resonance_sums(limit)))
    return math.fsum(per), per


def b3_estimate(limit: int) -> SeriesEstimate:
    """Partial sum of b3 over ``k m3^2 <= limit``.

    The tail estimate is four times the change from ``limit // 2``.
    """
    if limit < 12:
        raise ValueError("limit must be at least 12")
    total, per = _b3_partial(limit)
    half, _ = _b3_partial(limit // 2)
    return SeriesEstimate(total, limit, 4 * abs(total - half), per)


def full_resonance_b3(limit: int, amplitude: float = 1.0) -> float:
    """Third-moment constant from every slot combination, not only the four printed sums.

    Each slot carries the combined coefficient ``amplitude (W_F / pi + W_G / (2 pi))``
    of a frequency ``sqrt(k) m``; the triple sum is scaled by ``3 sqrt(2) / 26``.
    Diagnostic only: it shows how far the four-sum value is from the full resonance mass.
    """
    F = _pair_weight_table(limit)
    sqf = _squarefree_mask(limit)
    parts = []
    for k in np.flatnonzero(sqf[: limit // 4 + 1]).tolist():
        m_max = math.isqrt(limit // k)
        m = np.arange(m_max + 1)
        a = F[k * m * m] / math.pi
        if k == 1:
            a[1:] += m[1:].astype(np.float64) ** -1.5 / (2 * math.pi)
        a[0] = 0.0
        a *= amplitude
        parts.append(float(a @ np.convolve(a, a)[: m_max + 1]))
    return 3 * math.sqrt(2) / 26 * math.fsum(parts)


def d3_estimate(limit: int) -> float:
    return D3_SCALE * b3_estimate(limit).partial


def c2_partial(n_max: int) -> float:
    """``(1 / 6 pi^3) sum_{n <= n_max} r(n)^2 / n^{3/2}``."""
    if n_max < 1:
        raise ValueError("n_max must be positive")
    r = r2_table(n_max)[1:].astype(np.float64)
    n = np.arange(1, n_max + 1, dtype=np.float64)
    return math.fsum((r * r / n**1.5).tolist()) / (6 * math.pi**3)


def constants_report(b3_limit: int, c2_n_max: int = 10**6) -> dict:
    est = b3_estimate(b3_limit)
    return {
        "limit": b3_limit,
        "b3": {"partial": est.partial, "per_sum": list(est.per_sum_partials), "tail_estimate": est.tail_estimate},
        "d3": D3_SCALE * est.partial,
        "c2": {"n_max": c2_n_max, "partial": c2_partial(c2_n_max)},
    }
