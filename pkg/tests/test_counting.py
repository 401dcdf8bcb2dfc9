import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hweyl.counting import (
    KAPPA,
    main_term,
    remainder,
    remainder_H_scaled,
    torus_remainder,
    weyl_constants,
    write_remainder_csv,
)
from hweyl.spectrum import merged_jump_sequence

SEQ = merged_jump_sequence(2e5)


def test_kappa_value():
    assert KAPPA == pytest.approx(0.0423290906, rel=1e-9)
    assert weyl_constants().kappa == pytest.approx(KAPPA, rel=1e-15)


def test_main_term_rejects_negative():
    with pytest.raises(ValueError):
        main_term(-1.0)


@pytest.mark.parametrize(
    "s, count, rem",
    [
        (12.0, 1, 1 - KAPPA * 12**1.5),
        (40.0, 15, 15 - KAPPA * 40**1.5),
    ],
)
def test_small_remainders(s, count, rem):
    sample = remainder(s, SEQ)
    assert sample.count == count
    assert sample.remainder == pytest.approx(rem, abs=1e-12)


def test_remainder_array_form():
    s = np.array([12.0, 40.0])
    assert remainder(s, SEQ) == pytest.approx([remainder(12.0, SEQ).remainder, remainder(40.0, SEQ).remainder])


def test_scaled_type_ii_remainder_at_one_eigenvalue():
    # 2 pi t just past 4 pi: N_H = 2
    t = 2.0 + 1e-9
    assert remainder_H_scaled(t, SEQ) == pytest.approx(2 - (2 / 3) * t**1.5 + t / 2, abs=1e-12)


@given(st.floats(min_value=1, max_value=2e5))
def test_branch_remainders_sum_to_full(s):
    t = np.longdouble(s) / (2 * np.longdouble(np.pi))
    lhs = remainder(s, SEQ).remainder
    rhs = remainder_H_scaled(t, SEQ) + torus_remainder(s, SEQ)
    assert abs(lhs - rhs) < 1e-9


def test_csv_columns_and_locale_free():
    import io

    buf = io.StringIO()
    write_remainder_csv(buf, [10.0, 40.0], SEQ)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "s,count,main,remainder"
    assert lines[2].startswith("40,15,10.7085")
    assert len(lines) == 3


def test_torus_remainder_small():
    # N_T(40) = 5 (0 and the four unit vectors)
    assert torus_remainder(40.0, SEQ) == pytest.approx(5 - 40 / (4 * math.pi), abs=1e-13)
