"""Smooth bump, its Fourier transform, and the mollified type-II count.

The bump is separable: ``rho(x, y) = rho1(x) rho1(y)`` with
``rho1(x) = exp(-1 / (1 - x^2)) / Z`` on ``(-1, 1)``, so its transform is
``rho1_hat(xi) rho1_hat(eta)`` with ``rho1_hat(xi) = int rho1(x) cos(2 pi xi x) dx``.

Counting region.  The type-II lattice points are ``(c, k)`` with ``c >= 1``,
``k >= 0`` and the region is taken as

    A_t = {x > 0, y > -1/2, x (x + 2y + 1) <= t}

so every point with ``k >= 0`` sits strictly inside the straight edges and
only the hyperbola ``x (x + 2y + 1) = t`` is ever within reach of the
mollifier.  With the edge at ``y = 0`` instead, every ``k = 0`` point would
sit on the boundary and lose half its weight, shifting the count by ~t/2.

Since ``g(x, y) = x (x + 2y + 1) - t`` increases in both variables on the
region, a lattice point is fully inside (resp. outside) the mollified set
exactly when the far (resp. near) corner of its ``[-eps, eps]^2`` square is.
Only the remaining shell points need quadrature; there the inner integral in
``y`` is the bump's CDF, leaving a 1-d integral in ``x``.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np
from scipy.interpolate import CubicSpline

from hweyl.errors import OutOfRange, QuadratureFailure
from hweyl.spectrum import TWO_PI, JumpSequence

FT_RANGE = 200.0  # |rho1_hat| < 1e-17 beyond this
DEFAULT_QUAD_TOLERANCE = 1e-10
INTERP_TOLERANCE = 1e-9
MAX_NODES = 4096
MAX_EPSILON = 0.25

_CDF_NODES, _CDF_WEIGHTS = np.polynomial.legendre.leggauss(128)


def _bump_raw(x):
    x = np.asarray(x, dtype=np.float64)
    inside = np.abs(x) < 1.0
    safe = np.where(inside, 1.0 - x * x, 1.0)
    return np.where(inside, np.exp(-1.0 / safe), 0.0)


def _normalization(n: int = 1024) -> float:
    x, w = np.polynomial.legendre.leggauss(n)
    return float(w @ _bump_raw(0.5 * (x + 1.0)))  # 2 * int_0^1, halved by the map


def _ft_quadrature(xi, norm, n):
    x, w = np.polynomial.legendre.leggauss(n)
    x, w = 0.5 * (x + 1.0), 0.5 * w  # [0, 1]; rho1 is even
    dens = _bump_raw(x) / norm
    out = np.empty(xi.size)
    for lo in range(0, xi.size, 4096):
        block = xi[lo : lo + 4096]
        out[lo : lo + 4096] = 2.0 * np.cos(2.0 * np.pi * np.outer(block, x)) @ (w * dens)
    return out


@dataclasses.dataclass(frozen=True, eq=False)
class BumpProfile:
    """Mollifier at scale ``epsilon`` plus a tabulated 1-d Fourier transform.

    The table covers ``[0, ft_range]`` with spacing ``ft_step``; lookups use a
    cubic spline whose measured worst-case error is ``interp_error``.
    """

    epsilon: float
    normalization: float
    ft_step: float
    ft_range: float
    ft_values: np.ndarray
    quad_tolerance: float
    interp_error: float
    _spline: CubicSpline = dataclasses.field(repr=False)

    def rho1(self, x):
        return _bump_raw(x) / self.normalization

    def rho(self, x, y):
        return self.rho1(x) * self.rho1(y)

    def ft1(self, xi):
        """``rho1_hat(xi)``; real, even, and zero past the table range."""
        a = np.abs(np.asarray(xi, dtype=np.float64))
        out = np.where(a <= self.ft_range, self._spline(np.minimum(a, self.ft_range)), 0.0)
        return float(out) if out.ndim == 0 else out

    def ft(self, xi, eta):
        return self.ft1(xi) * self.ft1(eta)

    def ft_scaled(self, xi, eta):
        """``rho_eps_hat(xi, eta) = rho_hat(eps xi, eps eta)``."""
        return self.ft(self.epsilon * np.asarray(xi, dtype=np.float64), self.epsilon * np.asarray(eta, dtype=np.float64))

    def cdf1(self, w):
        """``int_{-1}^{w} rho1``, vectorised; fixed 128-point Gauss-Legendre."""
        w = np.clip(np.asarray(w, dtype=np.float64), -1.0, 1.0)
        half = 0.5 * (w + 1.0)
        nodes = -1.0 + half[..., None] * (_CDF_NODES + 1.0)
        out = half * (self.rho1(nodes) @ _CDF_WEIGHTS)
        return float(out) if out.ndim == 0 else out

    def with_epsilon(self, epsilon: float) -> BumpProfile:
        if not 0 < epsilon <= MAX_EPSILON:
            raise ValueError(f"epsilon must lie in (0, {MAX_EPSILON}]")
        return dataclasses.replace(self, epsilon=float(epsilon))


def build_bump(quad_tolerance: float = DEFAULT_QUAD_TOLERANCE, epsilon: float = MAX_EPSILON, ft_step: float = 0.005) -> BumpProfile:
    """Normalise the bump and tabulate its transform.

    The transform is computed by Gauss-Legendre rules doubled until two
    successive rules agree to ``quad_tolerance`` on the whole table, then
    the spline is checked at every half-step against direct quadrature.
    """
    if quad_tolerance <= 0:
        raise ValueError("quad_tolerance must be positive")
    norm = _normalization()
    grid = np.arange(0.0, FT_RANGE + ft_step / 2, ft_step)
    n = 256
    prev = _ft_quadrature(grid, norm, n)
    while True:
        n *= 2
        if n > MAX_NODES:
            raise QuadratureFailure(f"transform table did not reach {quad_tolerance} within {MAX_NODES} nodes")
        cur = _ft_quadrature(grid, norm, n)
        if np.max(np.abs(cur - prev)) <= quad_tolerance:
            break
        prev = cur
    spline = CubicSpline(grid, cur, bc_type=((1, 0.0), "not-a-knot"))
    mids = grid[:-1] + ft_step / 2
    interp_error = float(np.max(np.abs(spline(mids) - _ft_quadrature(mids, norm, n))))
    if interp_error > INTERP_TOLERANCE:
        raise QuadratureFailure(f"spline error {interp_error:.2e} exceeds {INTERP_TOLERANCE}; use a finer ft_step")
    return BumpProfile(
        epsilon=float(epsilon),
        normalization=norm,
        ft_step=ft_step,
        ft_range=FT_RANGE,
        ft_values=cur,
        quad_tolerance=quad_tolerance,
        interp_error=interp_error,
        _spline=spline,
    )


def _slack(t, c, k, a, b):
    """``t - (c + a)(c + a + 2(k + b) + 1)`` expanded around the lattice point.

    Nonnegative means ``(c + a, k + b)`` lies in the closed region.
    """
    base = t - c * (c + 2 * k + 1)
    return base - a * (2 * c + 2 * k + 1) - a * a - 2 * b * (c + a)


def _last_k(t, c, a, b):
    """Per column, the largest ``k >= -1`` with ``_slack(t, c, k, a, b) >= 0``."""
    guess = np.floor((t / (c + a) - (c + a) - 1.0) / 2.0 - b).astype(np.int64)
    k = np.maximum(guess, -1)
    for _ in range(3):
        up = _slack(t, c, k + 1, a, b) >= 0
        k = np.where(up, k + 1, k)
        down = (k >= 0) & (_slack(t, c, k, a, b) < 0)
        k = np.where(down, k - 1, k)
    return k


def _hyperbola_x(t, y):
    """Positive root ``x`` of ``x (x + 2y + 1) = t``."""
    b = 2.0 * y + 1.0
    return 2.0 * t / (b + math.sqrt(b * b + 4.0 * t))


def shell_weight(t: float, c: int, k: int, profile: BumpProfile) -> float:
    """``(chi_{A_t} * rho_eps)(c, k)`` for a point near the hyperbola."""
    eps = profile.epsilon
    # for s below s_full the whole vertical slice is inside; above s_empty none of it
    s_full = min(1.0, max(-1.0, (_hyperbola_x(t, k + eps) - c) / eps))
    s_empty = min(1.0, max(-1.0, (_hyperbola_x(t, k - eps) - c) / eps))
    head = profile.cdf1(s_full)
    if s_empty <= s_full:
        return head
    base = t - c * (c + 2 * k + 1)
    lin = 2 * c + 2 * k + 1

    def integrand(s):
        x = c + eps * s
        w = (base - eps * s * lin - (eps * s) ** 2) / (2.0 * x * eps)
        return profile.rho1(s) * profile.cdf1(w)

    mid, half = 0.5 * (s_full + s_empty), 0.5 * (s_empty - s_full)
    n, prev = 16, None
    while n <= MAX_NODES:
        x, w = np.polynomial.legendre.leggauss(n)
        cur = half * float(integrand(mid + half * x) @ w)
        if prev is not None and abs(cur - prev) <= profile.quad_tolerance:
            return head + cur
        prev, n = cur, 2 * n
    raise QuadratureFailure(f"shell point ({c}, {k}) at t={t} did not converge")


def _columns(t, eps):
    if t <= 0:
        return np.zeros(0, dtype=np.int64)
    c_max = math.isqrt(int(t)) + 2
    return np.arange(1, c_max + 1, dtype=np.int64)


def mollified_count_H(t: float, profile: BumpProfile) -> float:
    """``sum 2c (chi_{A_t} * rho_eps)(c, k)`` over the type-II lattice."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    eps = profile.epsilon
    c = _columns(t, eps)
    if c.size == 0:
        return 0.0
    k_in = _last_k(t, c, eps, eps)  # square entirely inside
    k_out = _last_k(t, c, -eps, -eps)  # square meets the region
    inside = int(np.sum(2 * c * (k_in + 1)))
    shell = []
    for cc, lo, hi in zip(c.tolist(), k_in.tolist(), k_out.tolist()):
        for kk in range(max(lo + 1, 0), hi + 1):
            shell.append(2 * cc * shell_weight(t, cc, kk, profile))
    return math.fsum([float(inside)] + shell)


def shell_points(t: float, epsilon: float) -> list[tuple[int, int]]:
    """Lattice points whose mollified weight is strictly between the sharp values."""
    c = _columns(t, epsilon)
    if c.size == 0:
        return []
    k_in = _last_k(t, c, epsilon, epsilon)
    k_out = _last_k(t, c, -epsilon, -epsilon)
    return [(cc, kk) for cc, lo, hi in zip(c.tolist(), k_in.tolist(), k_out.tolist()) for kk in range(max(lo + 1, 0), hi + 1)]


@dataclasses.dataclass(frozen=True)
class SandwichReport:
    t: float
    T: float
    gamma: float
    c_gamma: float
    lower: float
    exact: int
    upper: float
    holds: bool


def sandwich_check(
    t: float, T: float, gamma: float, c_gamma: float, spectrum: JumpSequence, profile: BumpProfile
) -> SandwichReport:
    """Compare ``N_H(2 pi t)`` with mollified counts at ``t -/+ c_gamma T^{1 - gamma}``, ``eps = T^-gamma``."""
    if not 1 < t < T:
        raise ValueError("need 1 < t < T")
    if not 0.75 < gamma <= 1.0:
        raise ValueError("gamma must lie in (3/4, 1]")
    if TWO_PI * t > spectrum.limit:
        raise OutOfRange(f"spectrum limit {spectrum.limit} does not cover 2 pi t = {TWO_PI * t}")
    prof = profile.with_epsilon(T**-gamma)
    shift = c_gamma * T ** (1.0 - gamma)
    lower = mollified_count_H(max(t - shift, 0.0), prof)
    upper = mollified_count_H(t + shift, prof)
    exact = int(spectrum.count_typeII(TWO_PI * t))
    return SandwichReport(t, T, gamma, c_gamma, lower, exact, upper, lower <= exact <= upper)
