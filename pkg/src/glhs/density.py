"""The measure nu_t (t < 0): support, density, distribution function and moments.

The density is read off the curve: for x in the support, let z(x) be the
point of the upper half of gamma_t with g_t(z) = x. Then

    rho_t(x) = Im z(x) / (pi x).

Below the junction value ``x_mid`` the preimage lies on the left branch
(where g increases with y), above it on the right branch (where g
decreases). ``x_mid`` equals 1 for every t: on Re z = -1/2 both factors of
g_t have modulus one, and g_t is positive on the curve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import _io
from .curve import _check_t, _g_real, critical_point, g_eval, half_height, half_width
from .errors import DomainError, InvariantViolation, NonRealResult, OutOfSupport
from .numerics import QUAD_TOL, ROOT_TOL, Bracket, find_root, integrate_adaptive

JUNCTION_RTOL = 1e-12
EDGE_OFFSET = 1e-6


@dataclass(frozen=True)
class SupportInterval:
    t: float
    x_lo: float
    x_hi: float
    x_mid: float
    y_t: float
    a_t: float

    def __post_init__(self):
        if not 0 < self.x_lo < self.x_mid < self.x_hi:
            raise InvariantViolation(
                f"support ordering fails: {self.x_lo}, {self.x_mid}, {self.x_hi}"
            )

    @property
    def width(self) -> float:
        return self.x_hi - self.x_lo

    def contains(self, x: float) -> bool:
        return self.x_lo < x < self.x_hi

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "x_lo": self.x_lo,
            "x_mid": self.x_mid,
            "x_hi": self.x_hi,
            "y_t": self.y_t,
            "a_t": self.a_t,
        }

    def to_json(self, dest=None) -> None:
        _io.write_json(dest, self.to_dict())


def support_endpoints(t: float) -> tuple[float, float]:
    """(x_lo, x_hi) = ((1 - t/2 -/+ s) e^{-/+ s}) with s = sqrt(t^2/4 - t)."""
    t = _check_t(t)
    s = math.sqrt(t * t / 4.0 - t)
    # 1 - t/2 - s = 1 / (1 - t/2 + s); the reciprocal form avoids cancellation
    upper = 1.0 - t / 2.0 + s
    return (1.0 / upper) * math.exp(-s), upper * math.exp(s)


@lru_cache(maxsize=1024)
def support(t: float) -> SupportInterval:
    t = _check_t(t)
    x_lo, x_hi = support_endpoints(t)
    y_t = half_height(t)
    g_mid = g_eval(t, complex(-0.5, y_t))
    if abs(g_mid.imag) > 1e-10 * abs(g_mid):
        raise NonRealResult(f"g_t at the junction is not real: {g_mid}")
    return SupportInterval(t, x_lo, x_hi, g_mid.real, y_t, critical_point(t))


def _invert_on_branch(t: float, x: float, sup: SupportInterval, sign: int) -> complex:
    # g at y = 0 is the endpoint value, at y = y_t the junction value; both are
    # taken from the support rather than re-evaluated (the half-width is
    # ill-conditioned right at y_t)
    g0 = sup.x_hi if sign > 0 else sup.x_lo

    def resid(y):
        return _g_real(t, -0.5 + sign * half_width(t, y), y) - x

    y = find_root(resid, Bracket(0.0, sup.y_t, g0 - x, sup.x_mid - x), tol_abs=ROOT_TOL)
    return complex(-0.5 + sign * half_width(t, y), y)


def invert_g(t: float, x: float) -> complex:
    """The upper-half-plane point z of gamma_t with g_t(z) = x."""
    sup = support(_check_t(t))
    x = float(x)
    if not sup.contains(x):
        raise OutOfSupport(f"x={x!r} outside the support ({sup.x_lo!r}, {sup.x_hi!r})")
    if abs(x - sup.x_mid) <= JUNCTION_RTOL * sup.x_mid:
        return complex(-0.5, sup.y_t)
    return _invert_on_branch(t, x, sup, 1 if x > sup.x_mid else -1)


def density_at(t: float, x: float) -> float:
    """rho_t(x) = Im[g_t^{-1}(x)] / (pi x)."""
    return invert_g(t, x).imag / (math.pi * x)


def _pieces(t: float, a: float, b: float):
    """Split (a, b) at the junction so each piece has one branch."""
    mid = support(t).x_mid
    if a < mid < b:
        return [(a, mid), (mid, b)]
    return [(a, b)]


def _integrate(t: float, fn, a: float, b: float, tol_rel: float) -> float:
    return math.fsum(integrate_adaptive(fn, lo, hi, tol_rel) for lo, hi in _pieces(t, a, b))


def moment_from_density(t: float, n: int, tol_rel: float = QUAD_TOL) -> float:
    """m_n(t) = (1/pi) * integral over the support of x^(n-1) Im[g_t^{-1}(x)] dx."""
    t = _check_t(t)
    if int(n) != n or n < 0:
        raise DomainError(f"moment order must be a nonnegative integer, got {n!r}")
    sup = support(t)
    p = int(n) - 1
    return _integrate(
        t, lambda x: x**p * invert_g(t, x).imag / math.pi, sup.x_lo, sup.x_hi, tol_rel
    )


def cdf(t: float, x: float, tol_rel: float = QUAD_TOL) -> float:
    sup = support(_check_t(t))
    if x <= sup.x_lo:
        return 0.0
    if x >= sup.x_hi:
        return 1.0
    value = _integrate(t, lambda u: density_at(t, u), sup.x_lo, x, tol_rel)
    return min(max(value, 0.0), 1.0)


def cdf_grid(t: float, xs: Sequence[float], tol_rel: float = QUAD_TOL) -> np.ndarray:
    """The distribution function at many points, integrating only between neighbours."""
    sup = support(_check_t(t))
    xs = np.asarray(xs, dtype=float)
    order = np.argsort(xs)
    clipped = np.clip(xs[order], sup.x_lo, sup.x_hi)
    out = np.empty_like(clipped)
    acc, prev = 0.0, sup.x_lo
    rho = lambda u: density_at(t, u)
    for i, x in enumerate(clipped):
        if x > prev:
            acc += _integrate(t, rho, prev, x, tol_rel)
            prev = x
        out[i] = acc
    out[clipped >= sup.x_hi] = 1.0
    result = np.empty_like(out)
    result[order] = np.clip(out, 0.0, 1.0)
    return result


def quantile(t: float, p: float, tol_rel: float = QUAD_TOL) -> float:
    """Inverse of :func:`cdf` for 0 < p < 1."""
    if not 0 < p < 1:
        raise DomainError(f"p must lie in (0, 1), got {p!r}")
    sup = support(_check_t(t))
    # reuse the mass below x_mid to integrate only over the relevant branch piece
    mass_mid = cdf(t, sup.x_mid, tol_rel)
    if p < mass_mid:
        lo, hi, base = sup.x_lo, sup.x_mid, 0.0
    else:
        lo, hi, base = sup.x_mid, sup.x_hi, mass_mid
    if p == base:
        return lo
    rho = lambda u: density_at(t, u)

    def resid(x):
        return base + integrate_adaptive(rho, lo, x, tol_rel) - p

    top = 1.0 if hi == sup.x_hi else mass_mid
    return find_root(resid, Bracket(lo, hi, base - p, top - p), tol_abs=1e-13 * hi)


@dataclass(frozen=True)
class DensityProfile:
    t: float
    x: np.ndarray
    rho: np.ndarray
    support: SupportInterval
    grid: str = "log-cosine"

    @property
    def points(self):
        return list(zip(self.x.tolist(), self.rho.tolist()))

    def trapezoid_mass(self) -> float:
        """Trapezoid rule in the grid's own variable (log x for log grids)."""
        if self.grid == "log-cosine":
            return float(np.trapezoid(self.rho * self.x, np.log(self.x)))
        return float(np.trapezoid(self.rho, self.x))

    def to_csv(self, dest=None) -> None:
        _io.write_csv(dest, ("x", "rho"), zip(self.x, self.rho))

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "grid": self.grid,
            "edge_offset": EDGE_OFFSET,
            "support": self.support.to_dict(),
            "x": self.x,
            "rho": self.rho,
        }

    def to_json(self, dest=None) -> None:
        _io.write_json(dest, self.to_dict())


def _grid(sup: SupportInterval, n_points: int, grid: str) -> np.ndarray:
    # offsets scale with each endpoint as well as the width: for very negative t
    # x_lo is many orders of magnitude below the width
    lo = sup.x_lo + EDGE_OFFSET * min(sup.width, sup.x_lo)
    hi = sup.x_hi - EDGE_OFFSET * min(sup.width, sup.x_hi)
    c = 0.5 * (1.0 - np.cos(np.pi * np.arange(n_points) / (n_points - 1)))
    if grid == "cosine":
        x = lo + (hi - lo) * c
    elif grid == "log-cosine":
        x = np.exp(math.log(lo) + (math.log(hi) - math.log(lo)) * c)
    else:
        raise DomainError(f"unknown grid {grid!r}")
    x[0], x[-1] = lo, hi
    return x


def density_profile(t: float, n_points: int = 400, grid: str = "log-cosine") -> DensityProfile:
    """rho_t on a grid clustered at both edges, strictly inside the support.

    The default grid is cosine-spaced in log x: for very negative t the
    support spans many decades and the lower edge is invisible to a grid
    that is linear in x. ``grid="cosine"`` gives the linear variant.
    """
    t = _check_t(t)
    if n_points < 16:
        raise DomainError("n_points must be >= 16")
    sup = support(t)
    x = _grid(sup, n_points, grid)
    rho = np.array([density_at(t, xi) for xi in x])

    prof = DensityProfile(t, x, rho, sup, grid)
    if np.any(rho < 0):
        raise InvariantViolation("negative density value in profile")
    if n_points >= 400:
        mass = prof.trapezoid_mass()
        if not 0.95 <= mass <= 1.0:
            raise InvariantViolation(f"trapezoid mass {mass} outside [0.95, 1]")
    return prof
