"""Moments m_n(t) of the limiting distribution of Z*Z.

Two independent evaluators are provided:

* :func:`moment_closed_form` sums the finite Laguerre-type series
  ``e^{-nt/2}/n * sum_k (-tn)^k/k! * C(n, k+1)``;
* :func:`moment_contour` evaluates the contour integral
  ``e^{-nt/2}/(2 pi i n) * \\oint e^{-ntz} (1 + 1/z)^n dz`` around the origin
  with the periodic trapezoidal rule.

A third route, integration against the density, lives in
:mod:`glhs.density` and is reachable through :func:`moment_table`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np

from . import _io
from .errors import DomainError, InvariantViolation, NonRealResult
from .numerics import integrate_periodic, integrate_periodic_converged

Method = Literal["closed_form", "contour", "density"]
METHODS = ("closed_form", "contour", "density")

CONTOUR_RADIUS = 0.5
CONTOUR_NODES = 256
CANCELLATION_LIMIT = 1e6
DIRECT_SUM_MAX = 60
CONTOUR_RTOL = 1e-10
_EPS = float(np.finfo(float).eps)
_LOG_MAX = math.log(np.finfo(float).max)


class CancellationWarning(RuntimeWarning):
    """The alternating sum (t > 0) lost more than six digits to cancellation."""


def _check_order(n: int) -> int:
    if int(n) != n or n < 0:
        raise DomainError(f"moment order must be a nonnegative integer, got {n!r}")
    return int(n)


def _log_terms(n: int, t: float) -> np.ndarray:
    """log of |(-tn)^k/k! * C(n, k+1)| for k = 0..n-1 (t != 0)."""
    k = np.arange(n, dtype=float)
    lg = np.vectorize(math.lgamma, otypes=[float])
    log_binom = math.lgamma(n + 1) - lg(k + 2) - lg(n - k)
    return k * math.log(abs(t) * n) - lg(k + 1) + log_binom


def log_moment_closed_form(n: int, t: float) -> float:
    """Natural log of m_n(t) for t <= 0, computed entirely in the log domain."""
    n = _check_order(n)
    if t > 0:
        raise DomainError("log_moment_closed_form requires t <= 0")
    if n == 0 or t == 0:
        return 0.0
    logs = _log_terms(n, t)
    top = logs.max()
    lse = top + math.log(math.fsum(np.exp(logs - top)))
    return float(-n * t / 2 - math.log(n) + lse)


def moment_closed_form(n: int, t: float) -> float:
    """m_n(t) from the finite sum.

    For ``t < 0`` every term is positive. Up to n = 60 they are summed
    directly; beyond that the sum is done in the log domain (log-gamma
    binomials), so the result stays accurate far past the point where the
    naive sum overflows. An ``OverflowError`` carrying the log value is raised when
    m_n(t) itself is not representable.

    For ``t > 0`` the sum alternates; a :class:`CancellationWarning` is
    issued when the condition ratio ``sum|terms| / |sum|`` exceeds 1e6.
    """
    n = _check_order(n)
    if n == 0 or t == 0:
        return 1.0
    x = -t * n
    if t < 0 and n <= DIRECT_SUM_MAX and n * (math.log(x) - t / 2) < 600:
        # exact binomials; the guard keeps every term and the prefactor finite
        total = math.fsum(x**k / math.factorial(k) * math.comb(n, k + 1) for k in range(n))
        return math.exp(-n * t / 2) / n * total
    if t < 0:
        logm = log_moment_closed_form(n, t)
        if logm > _LOG_MAX:
            raise OverflowError(
                f"m_{n}({t!r}) overflows double precision: log m = {logm!r}"
            )
        return math.exp(logm)

    logs = _log_terms(n, t)
    signs = np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
    terms = signs * np.exp(logs - n * t / 2 - math.log(n))
    total = math.fsum(terms)
    cond = math.fsum(np.abs(terms)) / abs(total) if total != 0 else math.inf
    if cond > CANCELLATION_LIMIT:
        warnings.warn(
            f"m_{n}({t!r}): cancellation ratio {cond:.3g} in alternating sum",
            CancellationWarning,
            stacklevel=2,
        )
    return total


def _contour_integrand(n: int, t: float, radius: float):
    # z = r e^{i theta}, dz = i z dtheta; the factor i cancels the i of 2 pi i.
    def integrand(theta):
        z = radius * np.exp(1j * theta)
        expo = -n * t * z + n * np.log1p(1.0 / z) + np.log(z)
        return np.exp(expo - scale)

    # scale the exponent by its maximum real part on the circle to keep the
    # integrand O(1) for large n
    probe = radius * np.exp(2j * np.pi * np.arange(64) / 64)
    scale = float(np.max((-n * t * probe + n * np.log1p(1.0 / probe)).real + math.log(radius)))
    return integrand, scale


def moment_contour(
    n: int,
    t: float,
    radius: float = CONTOUR_RADIUS,
    nodes: Optional[int] = None,
) -> float:
    """m_n(t) by trapezoidal quadrature of the contour integral on ``|z| = radius``.

    With ``nodes=None`` the node count starts at 256 and is doubled until
    the sum plateaus; an explicit ``nodes`` uses exactly that many and must
    already agree with the half-node sum.

    Raises :class:`NonRealResult` when the imaginary residual is not
    negligible, or when cancellation on the circle (integrand much larger
    than the result, typical for large radii and very negative t) limits the
    relative accuracy to worse than 1e-10.
    """
    n = _check_order(n)
    if n < 1:
        raise DomainError("moment_contour needs n >= 1")
    if not radius > 0:
        raise DomainError(f"radius must be positive, got {radius!r}")
    if nodes is not None and nodes < 32:
        raise DomainError(f"nodes must be >= 32, got {nodes}")

    integrand, scale = _contour_integrand(n, t, radius)
    if nodes is None:
        raw, nodes = integrate_periodic_converged(integrand, 2 * math.pi, CONTOUR_NODES)
    else:
        raw = integrate_periodic(integrand, 2 * math.pi, nodes)
        half = integrate_periodic(integrand, 2 * math.pi, nodes // 2)
        if abs(raw - half) > CONTOUR_RTOL * abs(raw):
            raise NonRealResult(
                f"{nodes} nodes do not resolve m_{n}({t!r}) on radius {radius!r}: "
                f"halving the nodes moves the sum by {abs(raw - half) / abs(raw):.1e}"
            )
    theta = 2 * math.pi * np.arange(nodes) / nodes
    l1 = float(np.abs(integrand(theta)).mean()) * 2 * math.pi
    raw /= 2 * math.pi * n
    l1 /= 2 * math.pi * n
    if abs(raw.imag) > 1e-10 * (1 + abs(raw.real)):
        raise NonRealResult(
            f"contour value for m_{n}({t!r}) has imaginary part {raw.imag:.3e} "
            f"(real part {raw.real:.3e}); increase nodes or change radius"
        )
    # roundoff in the sum is about eps * int|f|; a radius where the integrand
    # dwarfs the result cannot deliver the requested accuracy
    roundoff = 8 * _EPS * l1 / abs(raw.real) if raw.real else math.inf
    if roundoff > CONTOUR_RTOL:
        raise NonRealResult(
            f"radius {radius!r} is ill-conditioned for m_{n}({t!r}): cancellation "
            f"bounds the relative accuracy at {roundoff:.1e}; use a smaller radius"
        )
    log_prefactor = scale - n * t / 2
    if raw.real <= 0:
        return raw.real * math.exp(log_prefactor)
    logm = math.log(raw.real) + log_prefactor
    if logm > _LOG_MAX:
        raise OverflowError(f"m_{n}({t!r}) overflows double precision: log m = {logm!r}")
    return math.exp(logm)


@dataclass(frozen=True)
class MomentTable:
    t: float
    values: tuple[tuple[int, float], ...]
    method: str

    def __post_init__(self):
        if not self.values or self.values[0] != (0, 1.0):
            raise InvariantViolation("moment table must start with (0, 1.0)")

    @property
    def orders(self) -> np.ndarray:
        return np.array([n for n, _ in self.values])

    @property
    def moments(self) -> np.ndarray:
        return np.array([m for _, m in self.values])

    def check(self, rtol: float = 1e-7) -> None:
        """For t < 0: every entry >= 1 and nondecreasing in n (up to ``rtol``)."""
        if self.t >= 0:
            return
        m = self.moments
        if np.any(m < 1 - rtol):
            raise InvariantViolation(f"moment below 1 in {self.method} table at t={self.t}")
        if np.any(np.diff(m) < -rtol * m[1:]):
            raise InvariantViolation(f"moments decrease in {self.method} table at t={self.t}")

    def to_csv(self, dest=None) -> None:
        _io.write_csv(dest, ("n", "m"), self.values)

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "method": self.method,
            "values": [{"n": n, "m": m} for n, m in self.values],
        }

    def to_json(self, dest=None) -> None:
        _io.write_json(dest, self.to_dict())


def normalize_method(method: str) -> str:
    key = method.replace("-", "_").lower()
    if key not in METHODS:
        raise DomainError(f"unknown method {method!r}; expected one of {METHODS}")
    return key


def moment_table(n_max: int, t: float, method: str = "closed_form") -> MomentTable:
    """Moments m_0..m_{n_max} at time ``t`` by the requested route."""
    if int(n_max) != n_max or n_max < 1:
        raise DomainError(f"n_max must be a positive integer, got {n_max!r}")
    method = normalize_method(method)
    if method == "closed_form":
        compute = moment_closed_form
    elif method == "contour":
        compute = moment_contour
    else:
        from .density import moment_from_density

        compute = lambda n, t: moment_from_density(t, n)
    values = ((0, 1.0),) + tuple((n, compute(n, t)) for n in range(1, int(n_max) + 1))
    table = MomentTable(float(t), values, method)
    table.check()
    return table
