import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate

from hweyl.errors import OutOfRange
from hweyl.mollifier import mollified_count_H, sandwich_check, shell_points, shell_weight
from hweyl.spectrum import merged_jump_sequence

# 30-digit mpmath quadrature of the normalised bump transform
FT_REFERENCE = {
    0.5: 0.40654821872618195,
    1.0: -0.096527332870191751,
    3.0: 0.0056886781300056701,
    10.0: -8.1894783892261048e-5,
    50.0: 1.4130728162410809e-9,
    100.0: 2.3893362045252262e-13,
}
NORMALIZATION = 0.443993816168079437823


def test_normalization(bump):
    assert bump.normalization == pytest.approx(NORMALIZATION, rel=1e-14)


@pytest.mark.parametrize("xi", sorted(FT_REFERENCE))
def test_transform_reference(bump, xi):
    assert bump.ft1(xi) == pytest.approx(FT_REFERENCE[xi], abs=1e-12)
    assert bump.ft1(-xi) == bump.ft1(xi)


def test_transform_off_grid(bump):
    xi = 7.31234
    direct, _ = integrate.quad(lambda x: bump.rho1(x) * math.cos(2 * math.pi * xi * x), -1, 1, limit=200, epsabs=1e-13)
    assert bump.ft1(xi) == pytest.approx(direct, abs=1e-9)


def test_transform_interpolation_error_bounded(bump):
    assert bump.interp_error < 1e-9


def test_transform_zero_beyond_table(bump):
    assert bump.ft1(250.0) == 0.0
    assert abs(bump.ft1(199.99)) < 1e-13  # quadrature roundoff floor


def test_transform_at_zero_is_mass(bump):
    assert bump.ft1(0.0) == pytest.approx(1.0, abs=1e-13)


def test_scaled_transform(bump):
    p = bump.with_epsilon(0.01)
    assert p.ft_scaled(30.0, 70.0) == pytest.approx(bump.ft1(0.3) * bump.ft1(0.7), rel=1e-14)


def test_cdf(bump):
    assert bump.cdf1(-1.0) == 0.0
    assert bump.cdf1(1.0) == pytest.approx(1.0, abs=1e-13)
    assert bump.cdf1(0.0) == pytest.approx(0.5, abs=1e-14)
    assert bump.cdf1(0.3) == pytest.approx(0.74090797464380798, abs=1e-13)


def test_epsilon_window(bump):
    with pytest.raises(ValueError):
        bump.with_epsilon(0.5)
    with pytest.raises(ValueError):
        bump.with_epsilon(0.0)


def test_interior_count_is_sharp(bump):
    # (1,0) at 2 and (1,1) at 4, both well inside t = 5
    assert mollified_count_H(5.0, bump.with_epsilon(1e-3)) == 4.0


def test_point_on_boundary_gets_half_weight(bump):
    # (1,1) sits on the hyperbola at t = 4; the curve bends slightly, so about 1/2
    value = mollified_count_H(4.0, bump.with_epsilon(1e-3))
    assert value == pytest.approx(3.0, abs=1e-3)
    assert shell_points(4.0, 1e-3) == [(1, 1)]


def test_zero_below_first_point(bump):
    assert mollified_count_H(0.0, bump) == 0.0
    assert mollified_count_H(1.5, bump.with_epsilon(0.1)) == 0.0


def _shell_oracle(t, c, k, bump):
    eps = bump.epsilon

    def y_top(u):
        x = c - eps * u  # convolution reflects the bump, which is even
        return min(1.0, max(-1.0, (k - ((t / x - x - 1) / 2)) / eps * -1))

    val, _ = integrate.dblquad(lambda v, u: bump.rho(u, v), -1, 1, lambda u: -1.0, y_top, epsabs=1e-10, epsrel=1e-10)
    return val


@pytest.mark.parametrize("t, eps", [(4.0, 0.2), (9.7, 0.15), (61.3, 0.05), (500.2, 0.02)])
def test_shell_weights_match_2d_quadrature(bump, t, eps):
    p = bump.with_epsilon(eps)
    points = shell_points(t, eps)
    assert points
    for c, k in points[:: max(1, len(points) // 3)][:3]:
        assert shell_weight(t, c, k, p) == pytest.approx(_shell_oracle(t, c, k, p), abs=1e-8)


@given(st.floats(min_value=1, max_value=300), st.floats(min_value=0, max_value=5))
def test_monotone_in_t(bump, t, dt):
    p = bump.with_epsilon(0.05)
    assert mollified_count_H(t, p) <= mollified_count_H(t + dt, p) + 1e-9


@given(st.floats(min_value=2, max_value=900), st.sampled_from([11 / 14, 0.8, 0.9, 1.0]))
def test_sandwich_property(bump, t, gamma):
    seq = merged_jump_sequence(2 * math.pi * 1000)
    assert sandwich_check(t, 1000.0, gamma, 3.0, seq, bump).holds


def test_sandwich_report_fields(bump):
    seq = merged_jump_sequence(2 * math.pi * 1000)
    rep = sandwich_check(100.0, 1000.0, 11 / 14, 3.0, seq, bump)
    assert rep.exact == seq.count_typeII(2 * math.pi * 100)
    assert rep.lower <= rep.exact <= rep.upper


def test_sandwich_preconditions(bump):
    seq = merged_jump_sequence(100)
    with pytest.raises(ValueError):
        sandwich_check(5.0, 10.0, 0.7, 3.0, seq, bump)
    with pytest.raises(ValueError):
        sandwich_check(20.0, 10.0, 0.8, 3.0, seq, bump)
    with pytest.raises(OutOfRange):
        sandwich_check(50.0, 100.0, 0.8, 3.0, seq, bump)
