import json
import math
from collections import Counter

import pytest
from hypothesis import given, strategies as st

from hweyl.constants import (
    D3_SCALE,
    PREFACTORS,
    b3_estimate,
    brute_force_delta_zero,
    c2_partial,
    constants_report,
    d3_estimate,
    enumerate_delta_zero,
    full_resonance_b3,
    same_parity_pairs,
    spf_sieve,
    square_free,
)


@pytest.mark.parametrize("k, expected", [(1, True), (3, True), (12, False), (30, True), (49, False), (50, False)])
def test_square_free(k, expected):
    assert square_free(k) is expected


@pytest.mark.parametrize(
    "n, allow_equal, expected",
    [(12, False, [(2, 6)]), (3, False, [(1, 3)]), (4, True, [(2, 2)]), (4, False, []), (45, False, [(1, 45), (3, 15), (5, 9)])],
)
def test_same_parity_pairs(n, allow_equal, expected):
    assert same_parity_pairs(n, allow_equal) == expected


@given(st.integers(min_value=1, max_value=5000), st.booleans())
def test_pairs_against_divisor_scan(n, allow_equal):
    scan = [(d, n // d) for d in range(1, n + 1) if n % d == 0 and d <= n // d and (n // d - d) % 2 == 0]
    if not allow_equal:
        scan = [p for p in scan if p[0] != p[1]]
    assert same_parity_pairs(n, allow_equal) == scan


def test_spf_sieve():
    spf = spf_sieve(100)
    assert [int(spf[n]) for n in (2, 9, 15, 49, 97, 100)] == [2, 3, 3, 7, 97, 2]


def test_first_sum1_term():
    terms = [t for t in enumerate_delta_zero(12) if t.sum_id == 1]
    assert len(terms) == 1
    t = terms[0]
    assert (t.kernel, t.m1, t.m2, t.m3) == (3, 1, 1, 2)
    assert t.pairs == ((1, 3), (1, 3), (2, 6))
    assert t.weight == pytest.approx(3**-1.25 * 3**-1.25 * 6**-1.25 * 2**-0.25)
    assert t.weight == pytest.approx(5.744e-3, rel=1e-3)


def test_first_sum2_term():
    terms = [t for t in enumerate_delta_zero(4) if t.sum_id == 2]
    assert [t.pairs for t in terms] == [((1, 1), (1, 1), (2, 2))]
    assert terms[0].weight == pytest.approx(2**-1.5)


def test_no_sum1_terms_below_12():
    assert not [t for t in enumerate_delta_zero(11) if t.sum_id == 1]


@pytest.mark.parametrize("limit", [12, 50, 200])
def test_matches_brute_force_multiset(limit):
    fast = Counter((t.sum_id, t.pairs) for t in enumerate_delta_zero(limit))
    assert fast == Counter(brute_force_delta_zero(limit))


def test_terms_are_exact_resonances():
    for t in enumerate_delta_zero(500):
        n1, n2, n3 = (nu * mu for nu, mu in t.pairs)
        assert (n3 - n1 - n2) ** 2 == 4 * n1 * n2
        assert t.m1 + t.m2 == t.m3
        assert sum(nu for nu, _ in t.pairs) % 2 == 0
        assert t.weight > 0


@pytest.mark.parametrize("limit", [12, 200, 1000])
def test_fast_sums_match_enumeration(limit):
    per = [0.0] * 4
    for t in enumerate_delta_zero(limit):
        per[t.sum_id - 1] += t.weight
    est = b3_estimate(limit)
    for got, raw, c in zip(est.per_sum_partials, per, PREFACTORS):
        assert got == pytest.approx(c * raw, rel=1e-12, abs=1e-300)
    assert est.partial == pytest.approx(sum(est.per_sum_partials), rel=1e-15)


def test_b3_monotone_and_tail_shrinks():
    limits = [500, 1000, 2000, 4000]
    ests = [b3_estimate(L) for L in limits]
    partials = [e.partial for e in ests]
    tails = [e.tail_estimate for e in ests]
    assert partials == sorted(partials)
    assert tails == sorted(tails, reverse=True)
    assert abs(ests[-1].partial - ests[-2].partial) < ests[-2].tail_estimate


def test_b3_needs_limit():
    with pytest.raises(ValueError):
        b3_estimate(11)


def test_d3_definition():
    assert d3_estimate(2000) == pytest.approx((2 * math.pi) ** -2.25 * b3_estimate(2000).partial, rel=1e-15)
    assert D3_SCALE == pytest.approx((2 * math.pi) ** -2.25)


def test_full_resonance_exceeds_four_sums():
    assert full_resonance_b3(2000) > b3_estimate(2000).partial > 0
    assert full_resonance_b3(2000, amplitude=2.0) == pytest.approx(8 * full_resonance_b3(2000))


def test_c2_partials():
    assert c2_partial(1) == pytest.approx(16 / (6 * math.pi**3), rel=1e-14)
    assert c2_partial(1) == pytest.approx(0.08601, abs=1e-5)
    assert c2_partial(2) == pytest.approx(0.11641, abs=1e-5)
    vals = [c2_partial(n) for n in (10, 20, 40, 80)]
    assert vals == sorted(vals)


def test_report_schema():
    rep = constants_report(100, 100)
    assert set(rep) == {"limit", "b3", "d3", "c2"}
    assert set(rep["b3"]) == {"partial", "per_sum", "tail_estimate"}
    assert len(rep["b3"]["per_sum"]) == 4
    json.dumps(rep)
