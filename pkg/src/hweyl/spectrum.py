"""Laplace spectrum of Gamma_1 \\ H_1 with the metric diag(1, 1, 2*pi).

The spectrum splits into two branches:

* torus:   ``4 pi^2 (m^2 + n^2)`` for ``(m, n)`` in Z^2, each pair counted once;
* type II: ``2 pi c (c + 2k + 1)`` for ``c >= 1, k >= 0``, multiplicity ``2c``.

Eigenvalues are stored as exact integer payloads (``N = m^2 + n^2`` for the
torus branch, the pair ``(c, k)`` for type II) and only turned into floats at
the boundary.  Equality between eigenvalues is decided on those integers.  A
torus value ``4 pi^2 N`` can never equal a type-II value ``2 pi B`` for
``N, B >= 1`` because that would force ``2 pi N = B`` with pi irrational, so
the two branches only meet at 0, and 0 is never a type-II value.
"""

from __future__ import annotations

import dataclasses
import enum
import math

import numpy as np

from hweyl.errors import CutoffTooLarge, HweylError, OutOfRange

FOUR_PI_SQ = 4.0 * math.pi * math.pi
TWO_PI = 2.0 * math.pi

#: default cap on the number of raw entries an enumeration may allocate
DEFAULT_MAX_ENTRIES = 60_000_000


class Branch(enum.IntEnum):
    TORUS = 0
    TYPE_II = 1


def eigenvalue(branch, i0, i1):
    """Spectral value of an index pair; works on scalars and integer arrays.

    This is the single place where integer payloads become floats, so any
    recomputation from an index reproduces the stored value bit-for-bit.
    """
    if branch == Branch.TORUS:
        return FOUR_PI_SQ * (i0 * i0 + i1 * i1)
    return TWO_PI * (i0 * (i0 + 2 * i1 + 1))


@dataclasses.dataclass(frozen=True)
class EigenvalueEntry:
    value: float
    multiplicity: int
    branch: Branch
    index: tuple[int, int]

    def __post_init__(self):
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be >= 1")


def r2(n: int) -> int:
    """Number of ``(a, b)`` in Z^2 with ``a^2 + b^2 = n``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    count = 0
    a_max = math.isqrt(n)
    for a in range(-a_max, a_max + 1):
        rest = n - a * a
        b = math.isqrt(rest)
        if b * b == rest:
            count += 1 if b == 0 else 2
    return count


def r2_table(n_max: int) -> np.ndarray:
    """``r2(n)`` for every ``0 <= n <= n_max`` as an int64 array."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    m = math.isqrt(n_max)
    a = np.arange(0, m + 1, dtype=np.int64)
    b = np.arange(-m, m + 1, dtype=np.int64)
    counts = np.zeros(n_max + 1, dtype=np.int64)
    # rows a > 0 stand for +a and -a
    for lo in range(0, m + 1, 512):
        rows = a[lo : lo + 512]
        sq = rows[:, None] ** 2 + b[None, :] ** 2
        w = np.where(rows == 0, 1, 2)[:, None] * np.ones_like(sq)
        keep = sq <= n_max
        counts += np.bincount(sq[keep], weights=w[keep], minlength=n_max + 1).astype(np.int64)
    return counts


def _largest_multiple_index(limit: float, unit: float) -> int:
    """Largest integer ``q >= 0`` with ``unit * q <= limit`` in float arithmetic."""
    q = int(limit // unit)
    while q > 0 and unit * q > limit:
        q -= 1
    while unit * (q + 1) <= limit:
        q += 1
    return q


@dataclasses.dataclass(frozen=True, eq=False)
class SpectrumTable:
    """Raw spectral entries as parallel arrays, one row per EigenvalueEntry."""

    limit: float
    branch: np.ndarray
    index0: np.ndarray
    index1: np.ndarray
    multiplicity: np.ndarray

    def __len__(self):
        return int(self.branch.size)

    def values(self) -> np.ndarray:
        out = np.empty(len(self), dtype=np.float64)
        tor = self.branch == Branch.TORUS
        out[tor] = eigenvalue(Branch.TORUS, self.index0[tor], self.index1[tor])
        out[~tor] = eigenvalue(Branch.TYPE_II, self.index0[~tor], self.index1[~tor])
        return out

    def entries(self) -> list[EigenvalueEntry]:
        vals = self.values()
        return [
            EigenvalueEntry(float(v), int(mu), Branch(int(br)), (int(i), int(j)))
            for v, mu, br, i, j in zip(vals, self.multiplicity, self.branch, self.index0, self.index1)
        ]


def _torus_table(limit: float, max_entries: int) -> SpectrumTable:
    n_max = _largest_multiple_index(limit, FOUR_PI_SQ)
    if n_max + 1 > max_entries:
        raise CutoffTooLarge(f"torus enumeration up to {limit} needs ~{n_max + 1} entries")
    r = math.isqrt(n_max)
    mm, nn = np.tril_indices(r + 1)  # 0 <= n <= m
    mm = mm.astype(np.int64)
    nn = nn.astype(np.int64)
    norm = mm * mm + nn * nn
    keep = norm <= n_max
    mm, nn, norm = mm[keep], nn[keep], norm[keep]
    # representative of each N: the pair with the largest m
    order = np.lexsort((-mm, norm))
    norm, mm, nn = norm[order], mm[order], nn[order]
    distinct, first = np.unique(norm, return_index=True)
    mult = r2_table(n_max)[distinct]
    size = distinct.size
    return SpectrumTable(
        limit=float(limit),
        branch=np.full(size, Branch.TORUS, dtype=np.uint8),
        index0=mm[first],
        index1=nn[first],
        multiplicity=mult,
    )


def typeII_pair_count(limit: float) -> int:
    """Exact number of ``(c, k)`` pairs with ``2 pi c (c + 2k + 1) <= limit``."""
    b_max = _largest_multiple_index(limit, TWO_PI)
    c = np.arange(1, math.isqrt(b_max) + 2, dtype=np.int64)
    per_c = (b_max // c - c - 1) // 2 + 1
    return int(per_c[per_c > 0].sum())


def _typeII_table(limit: float, max_entries: int) -> SpectrumTable:
    b_max = _largest_multiple_index(limit, TWO_PI)
    c_all = np.arange(1, math.isqrt(b_max) + 2, dtype=np.int64)
    per_c = (b_max // c_all - c_all - 1) // 2 + 1
    live = per_c > 0
    c_all, per_c = c_all[live], per_c[live]
    total = int(per_c.sum())
    if total > max_entries:
        raise CutoffTooLarge(f"type-II enumeration up to {limit} needs {total} entries")
    c = np.repeat(c_all, per_c)
    starts = np.repeat(np.cumsum(per_c) - per_c, per_c)
    k = np.arange(total, dtype=np.int64) - starts
    payload = c * (c + 2 * k + 1)
    order = np.lexsort((c, payload))
    c, k = c[order], k[order]
    return SpectrumTable(
        limit=float(limit),
        branch=np.full(total, Branch.TYPE_II, dtype=np.uint8),
        index0=c,
        index1=k,
        multiplicity=2 * c,
    )


def _check_limit(limit):
    if not (limit >= 0 and math.isfinite(limit)):
        raise ValueError(f"limit must be a finite nonnegative number, got {limit!r}")


def torus_eigenvalues(limit: float, max_entries: int = DEFAULT_MAX_ENTRIES) -> list[EigenvalueEntry]:
    """One entry per distinct torus value ``<= limit``, ascending."""
    _check_limit(limit)
    return _torus_table(limit, max_entries).entries()


def typeII_eigenvalues(limit: float, max_entries: int = DEFAULT_MAX_ENTRIES) -> list[EigenvalueEntry]:
    """One entry per ``(c, k)`` with value ``<= limit``, sorted by value then ``c``.

    Distinct pairs sharing a value (e.g. ``(1, 2)`` and ``(2, 0)`` at 12 pi)
    stay separate here; merging happens in :class:`JumpSequence`.
    """
    _check_limit(limit)
    return _typeII_table(limit, max_entries).entries()


def enumerate_spectrum(
    limit: float, max_entries: int = DEFAULT_MAX_ENTRIES, *, branches=(Branch.TORUS, Branch.TYPE_II)
) -> SpectrumTable:
    _check_limit(limit)
    parts = []
    if Branch.TORUS in branches:
        parts.append(_torus_table(limit, max_entries))
    if Branch.TYPE_II in branches:
        parts.append(_typeII_table(limit, max_entries))
    if sum(len(p) for p in parts) > max_entries:
        raise CutoffTooLarge(f"spectrum up to {limit} exceeds {max_entries} entries")
    return SpectrumTable(
        limit=float(limit),
        branch=np.concatenate([p.branch for p in parts]),
        index0=np.concatenate([p.index0 for p in parts]),
        index1=np.concatenate([p.index1 for p in parts]),
        multiplicity=np.concatenate([p.multiplicity for p in parts]),
    )


@dataclasses.dataclass(frozen=True, eq=False)
class JumpSequence:
    """Exact counting function: distinct eigenvalues with running totals.

    ``cumulative[i]`` is ``N(jumps[i])``; the per-branch arrays split that
    total into torus and type-II parts.  Read-only after construction.
    """

    limit: float
    jumps: np.ndarray
    cumulative: np.ndarray
    torus_cumulative: np.ndarray
    typeII_cumulative: np.ndarray

    def __len__(self):
        return int(self.jumps.size)

    @classmethod
    def from_table(cls, table: SpectrumTable) -> JumpSequence:
        tor = table.branch == Branch.TORUS
        t_vals = eigenvalue(Branch.TORUS, table.index0[tor], table.index1[tor])
        t_mult = table.multiplicity[tor]

        c, k = table.index0[~tor], table.index1[~tor]
        payload = c * (c + 2 * k + 1)
        order = np.argsort(payload, kind="stable")
        payload, h_mult = payload[order], table.multiplicity[~tor][order]
        distinct, starts = np.unique(payload, return_index=True)
        h_mult = np.add.reduceat(h_mult, starts) if distinct.size else h_mult[:0]
        h_vals = TWO_PI * distinct

        values = np.concatenate([t_vals, h_vals])
        mult = np.concatenate([t_mult, h_mult]).astype(np.int64)
        is_torus = np.concatenate([np.ones(t_vals.size, bool), np.zeros(h_vals.size, bool)])
        order = np.argsort(values, kind="stable")
        values, mult, is_torus = values[order], mult[order], is_torus[order]
        if values.size > 1 and np.any(np.diff(values) <= 0):
            # would mean two distinct integer payloads collapsed to one float
            raise HweylError("eigenvalue collision in floating point; exact ordering lost")
        return cls(
            limit=float(table.limit),
            jumps=values,
            cumulative=np.cumsum(mult),
            torus_cumulative=np.cumsum(np.where(is_torus, mult, 0)),
            typeII_cumulative=np.cumsum(np.where(is_torus, 0, mult)),
        )

    def _locate(self, s):
        s_arr = np.asarray(s, dtype=np.float64)
        if np.any(s_arr < 0) or np.any(s_arr > self.limit) or np.any(np.isnan(s_arr)):
            raise OutOfRange(f"query outside [0, {self.limit}]")
        return np.searchsorted(self.jumps, s_arr, side="right") - 1

    def _lookup(self, table, s):
        idx = self._locate(s)
        out = np.where(idx >= 0, table[np.maximum(idx, 0)], 0)
        return int(out) if out.ndim == 0 else out

    def count(self, s):
        """``N(s)``: eigenvalues ``<= s`` with multiplicity."""
        return self._lookup(self.cumulative, s)

    def count_torus(self, s):
        return self._lookup(self.torus_cumulative, s)

    def count_typeII(self, s):
        return self._lookup(self.typeII_cumulative, s)


def merged_jump_sequence(limit: float, max_entries: int = DEFAULT_MAX_ENTRIES) -> JumpSequence:
    """Both branches merged into one exact counting function up to ``limit``."""
    return JumpSequence.from_table(enumerate_spectrum(limit, max_entries))


def torus_jump_sequence(limit: float, max_entries: int = DEFAULT_MAX_ENTRIES) -> JumpSequence:
    return JumpSequence.from_table(enumerate_spectrum(limit, max_entries, branches=(Branch.TORUS,)))


def count_torus(s, spectrum: JumpSequence):
    return spectrum.count_torus(s)


def count_typeII(s, spectrum: JumpSequence):
    return spectrum.count_typeII(s)


def count_total(s, spectrum: JumpSequence):
    return spectrum.count(s)
