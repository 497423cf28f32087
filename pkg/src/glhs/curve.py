"""The Jordan curve gamma_t (t < 0) on which g_t(z) = e^{-t(z+1/2)}(1 + 1/z) is real.

Writing z = x + iy, g_t is real off the real axis exactly when

    -y^2 - y cot(ty) = x^2 + x,

so the curve is traced by the two branches ``x = -1/2 +/- v_t(y)`` with
``v_t(y) = sqrt(1/4 - y^2 - y cot(ty))`` for ``|y| <= y_t``. The vertical
extent ``y_t`` is the first zero of ``f_t(y) + 1`` where
``f_t(y) = 2y sin(ty) + cos(ty)``, using ``4 sin^2(ty) v_t(y)^2 = 1 - f_t(y)^2``.

Only the upper half (y >= 0) is stored; the lower half is its mirror image.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import _io
from .errors import DomainError, InvariantViolation, PoleAtOrigin
from .numerics import Bracket, find_root

_SERIES_CUTOFF = 1e-4
_RADICAND_SLACK = 1e-13


def _check_t(t: float) -> float:
    if not t < 0:
        raise DomainError(f"t must be negative, got {t!r}")
    return float(t)


def _sign_value(sign) -> int:
    if sign in ("+", 1, +1.0, "plus"):
        return 1
    if sign in ("-", -1, -1.0, "minus"):
        return -1
    raise DomainError(f"sign must be '+' or '-', got {sign!r}")


def ycot(t: float, y: float) -> float:
    """y * cot(t*y), with its finite value 1/t at y = 0."""
    u = t * y
    if abs(u) < _SERIES_CUTOFF:
        return 1.0 / t - t * y * y / 3.0 - t**3 * y**4 / 45.0
    return y / math.tan(u)


def _y_over_sin(t: float, y: float) -> float:
    u = t * y
    if abs(u) < _SERIES_CUTOFF:
        return (1.0 + u * u / 6.0) / t
    return y / math.sin(u)


def f_osc(t: float, y: float) -> float:
    """Gate function 2y sin(ty) + cos(ty) on the open interval (pi/t, -pi/t)."""
    t = _check_t(t)
    if not abs(y) < -math.pi / t:
        raise DomainError(f"y={y!r} outside ({math.pi / t!r}, {-math.pi / t!r})")
    return 2.0 * y * math.sin(t * y) + math.cos(t * y)


def f_osc_deriv(t: float, y: float) -> float:
    """d/dy of :func:`f_osc`, written as 2 sin(ty) [ty cot(ty) - (t - 2)/2].

    Defined for 0 <= y < -pi/t; the y = 0 value is the limit 0.
    """
    t = _check_t(t)
    if not 0 <= y < -math.pi / t:
        raise DomainError(f"y={y!r} outside [0, {-math.pi / t!r})")
    if y == 0:
        return 0.0
    return 2.0 * math.sin(t * y) * (t * ycot(t, y) - (t - 2.0) / 2.0)


@lru_cache(maxsize=4096)
def critical_point(t: float) -> float:
    """The stationary point a_t of f_t in [-pi/(2t), -pi/t).

    Solved as ``ty cos(ty) - (t-2)/2 sin(ty) = 0`` (the stationarity condition
    multiplied by sin(ty)), whose value is (t-2)/2 < 0 at the left end and
    pi > 0 at the right end of the bracket.
    """
    t = _check_t(t)
    lo, hi = -math.pi / (2 * t), -math.pi / t

    def h(y):
        u = t * y
        return u * math.cos(u) - 0.5 * (t - 2.0) * math.sin(u)

    return find_root(h, Bracket(lo, hi, 0.5 * (t - 2.0), math.pi))


@lru_cache(maxsize=4096)
def half_height(t: float) -> float:
    """The half-height y_t: the root of f_t(y) = -1 on (0, a_t)."""
    t = _check_t(t)
    a = critical_point(t)
    g = lambda y: 2.0 * y * math.sin(t * y) + math.cos(t * y) + 1.0
    return find_root(g, Bracket(0.0, a, 2.0, g(a)))


def _half_width_sq(t: float, y: float) -> float:
    """v_t(y)^2 = (1 - f)(1 + f) / (4 sin^2(ty)).

    1 - f = 2 sin^2(ty/2) - 2y sin(ty) is a sum of nonnegative terms for
    0 < |y| < -pi/t, so it is free of cancellation near y = 0.
    """
    u = t * y
    s = math.sin(u)
    one_minus_f = 2.0 * math.sin(0.5 * u) ** 2 - 2.0 * y * s
    one_plus_f = 2.0 - one_minus_f
    return one_minus_f * one_plus_f / (4.0 * s * s)


def half_width(t: float, y: float) -> float:
    """v_t(y) = sqrt(1/4 - y^2 - y cot(ty)) for |y| <= y_t, zero at |y| = y_t."""
    t = _check_t(t)
    y = abs(y)
    if y == 0:
        return math.sqrt(0.25 - 1.0 / t)
    if not y < -math.pi / t:
        raise DomainError(f"|y|={y!r} >= -pi/t: outside the curve")
    if abs(t * y) < _SERIES_CUTOFF:
        return math.sqrt(0.25 - y * y - ycot(t, y))
    r = _half_width_sq(t, y)
    if r < 0:
        if r < -_RADICAND_SLACK:
            raise DomainError(f"|y|={y!r} exceeds the half-height y_t={half_height(t)!r}")
        return 0.0
    return math.sqrt(r)


def branch_x(t: float, y: float, sign) -> float:
    """Real part x_t^{+/-}(y) = -1/2 +/- v_t(y) of the curve point at height y."""
    return -0.5 + _sign_value(sign) * half_width(t, y)


def branch_x_deriv(t: float, y: float, sign) -> float:
    """dx_t^{+/-}/dy on the open interval 0 < |y| < y_t."""
    t = _check_t(t)
    sv = _sign_value(sign)
    if y == 0:
        raise DomainError("branch_x_deriv is defined for 0 < |y| < y_t; the y = 0 limit is 0")
    v = half_width(t, y)
    if v == 0:
        raise DomainError("branch_x_deriv is unbounded at |y| = y_t")
    s = math.sin(t * y)
    num = 4.0 * y * s * s + math.sin(2.0 * t * y) - 2.0 * t * y
    return -sv * num / (4.0 * s * s * v)


def g_eval(t: float, z: complex) -> complex:
    """g_t(z) = exp(-t(z + 1/2)) (1 + 1/z)."""
    z = complex(z)
    if z == 0:
        raise PoleAtOrigin("g_t has a pole at z = 0")
    return complex(np.exp(-t * (z + 0.5)) * (1.0 + 1.0 / z))


def _g_real(t: float, x: float, y: float) -> float:
    # g on the curve: y/sin(ty) * e^{-t(x+1/2)} / (y cot(ty) + x), with
    # y cot(ty) + x = -(x^2 + y^2) along the curve
    if y == 0:
        return math.exp(-t * (x + 0.5)) * (1.0 + 1.0 / x)
    return -_y_over_sin(t, y) * math.exp(-t * (x + 0.5)) / (x * x + y * y)


def g_on_curve(t: float, y: float, sign) -> float:
    """Real value of g_t at x_t^{+/-}(y) + iy, for 0 <= y <= y_t."""
    t = _check_t(t)
    if y < 0:
        raise DomainError("g_on_curve takes the upper half, y >= 0")
    return _g_real(t, branch_x(t, y, sign), y)


def k_partials(t: float, x: float, y: float) -> tuple[float, float]:
    """Partial derivatives (d/dx, d/dy) of k_t(x, y) = y e^{-tx} / (sin(ty) (y cot(ty) + x)).

    k_t = e^{t/2} g_t on the curve; here it is treated as a function of two
    free variables. Requires y != 0.
    """
    yc = ycot(t, y)
    s = math.sin(t * y)
    w = x + yc
    e = math.exp(-t * x)
    dk_dx = -y * e / (w * w * s) * (t * w + 1.0)
    dk_dy = e / (w * w * s) * ((t * y * y + x) - t * x * yc)
    return dk_dx, dk_dy


def g_on_curve_slope(t: float, y: float, sign) -> float:
    """d/dy of g_t(x_t^{+/-}(y), y) by the chain rule through k_t, 0 < y < y_t."""
    x = branch_x(t, y, sign)
    dk_dx, dk_dy = k_partials(t, x, y)
    return math.exp(-t / 2.0) * (branch_x_deriv(t, y, sign) * dk_dx + dk_dy)


@dataclass(frozen=True)
class CurveModel:
    """Sampled upper half of gamma_t, rows ordered by increasing y.

    The last row is the junction ``(y_t, -1/2, -1/2)`` where both branches
    meet at the common value ``g_mid``.
    """

    t: float
    y_t: float
    a_t: float
    y: np.ndarray
    x_minus: np.ndarray
    x_plus: np.ndarray
    g_minus: np.ndarray
    g_plus: np.ndarray
    g_mid: float
    checks: dict = field(default_factory=dict, compare=False)

    @property
    def junction(self) -> tuple[float, float, float]:
        return (self.y_t, -0.5, self.g_mid)

    @property
    def g_range(self) -> tuple[float, float]:
        return (float(self.g_minus[0]), float(self.g_plus[0]))

    def points(self, closed: bool = False) -> np.ndarray:
        """Complex curve points; with ``closed`` the full conjugation-symmetric loop."""
        upper_plus = self.x_plus + 1j * self.y
        upper_minus = self.x_minus + 1j * self.y
        if not closed:
            return np.concatenate([upper_plus, upper_minus[::-1]])
        upper = np.concatenate([upper_plus, upper_minus[::-1][1:]])
        return np.concatenate([upper, np.conj(upper[::-1])[1:]])

    def rows(self):
        return zip(self.y, self.x_minus, self.x_plus, self.g_minus, self.g_plus)

    def to_csv(self, dest=None) -> None:
        _io.write_csv(dest, ("y", "x_minus", "x_plus", "g_minus", "g_plus"), self.rows())

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "y_t": self.y_t,
            "a_t": self.a_t,
            "g_mid": self.g_mid,
            "junction": list(self.junction),
            "checks": self.checks,
            "samples": {
                "y": self.y,
                "x_minus": self.x_minus,
                "x_plus": self.x_plus,
                "g_minus": self.g_minus,
                "g_plus": self.g_plus,
            },
        }

    def to_json(self, dest=None) -> None:
        _io.write_json(dest, self.to_dict())


def reality_residual(t: float, x: float, y: float) -> float:
    """y cos(ty) + (x^2 + y^2 + x) sin(ty): zero iff g_t(x + iy) is real."""
    return y * math.cos(t * y) + (x * x + y * y + x) * math.sin(t * y)


def curve_residual(t: float, x: float, y: float) -> float:
    """-y^2 - y cot(ty) - x^2 - x: zero on the non-real part of the curve."""
    return -y * y - ycot(t, y) - x * x - x


def build_curve(t: float, n_samples: int = 256, tol: float = 1e-10) -> CurveModel:
    """Sample gamma_t on a cosine grid of [0, y_t] and validate it.

    Raises :class:`InvariantViolation` naming the offending sample when the
    bracket chain, branch ordering, reality, curve-equation residual or branch
    monotonicity fails.
    """
    t = _check_t(t)
    if n_samples < 16:
        raise DomainError("n_samples must be >= 16")
    a_t = critical_point(t)
    y_t = half_height(t)
    if not 0 < y_t < a_t < -math.pi / t:
        raise InvariantViolation(f"bracket chain 0 < y_t < a_t < -pi/t fails: {y_t}, {a_t}")

    j = np.arange(n_samples)
    ys = 0.5 * y_t * (1.0 - np.cos(np.pi * j / (n_samples - 1)))
    ys[0], ys[-1] = 0.0, y_t

    xm = np.empty(n_samples)
    xp = np.empty(n_samples)
    gm = np.empty(n_samples)
    gp = np.empty(n_samples)
    for i, y in enumerate(ys[:-1]):
        v = half_width(t, y)
        xm[i], xp[i] = -0.5 - v, -0.5 + v
        gm[i], gp[i] = _g_real(t, xm[i], y), _g_real(t, xp[i], y)
    g_mid_c = g_eval(t, complex(-0.5, y_t))
    g_mid = g_mid_c.real
    xm[-1] = xp[-1] = -0.5
    gm[-1] = gp[-1] = g_mid

    max_imag = 0.0
    max_c2 = 0.0
    for i, y in enumerate(ys):
        for x, g in ((xm[i], gm[i]), (xp[i], gp[i])):
            gz = g_eval(t, complex(x, y))
            imag = abs(gz.imag) / (1.0 + abs(gz))
            max_imag = max(max_imag, imag)
            if imag > tol:
                raise InvariantViolation(f"g not real at z={x}+{y}i: {gz}")
            if not g > 0:
                raise InvariantViolation(f"g not positive at z={x}+{y}i: {g}")
            if abs(g - gz.real) > 1e-12 * g:
                raise InvariantViolation(f"real formula disagrees with g at z={x}+{y}i")
            c2 = abs(curve_residual(t, x, y))
            max_c2 = max(max_c2, c2)
            if c2 > tol:
                raise InvariantViolation(f"curve-equation residual {c2:.3e} at z={x}+{y}i")
        if not xm[i] <= -0.5 <= xp[i]:
            raise InvariantViolation(f"branch ordering fails at y={y}")
    if not np.all(np.diff(gm) > 0):
        i = int(np.argmin(np.diff(gm)))
        raise InvariantViolation(f"g_minus not increasing at y={ys[i + 1]}")
    if not np.all(np.diff(gp) < 0):
        i = int(np.argmax(np.diff(gp)))
        raise InvariantViolation(f"g_plus not decreasing at y={ys[i + 1]}")

    checks = {"max_rel_imag_g": max_imag, "max_curve_residual": max_c2}
    return CurveModel(t, y_t, a_t, ys, xm, xp, gm, gp, g_mid, checks)
