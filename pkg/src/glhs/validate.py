"""Cross-checks run by ``glhs validate``: independent routes must agree."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curve import _check_t, build_curve, f_osc, f_osc_deriv
from .density import moment_from_density, support
from .errors import InvariantViolation
from .moments import moment_closed_form, moment_contour


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    limit: float

    @property
    def passed(self) -> bool:
        return bool(self.value <= self.limit)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name:<34s} {self.value:10.3e}  (limit {self.limit:.1e})"


def run_checks(t: float, n_max: int = 8, curve_samples: int = 1000) -> list[Check]:
    t = _check_t(t)
    checks = []

    contour_err = 0.0
    density_err = 0.0
    for n in range(n_max + 1):
        exact = moment_closed_form(n, t)
        if n >= 1:
            contour_err = max(contour_err, abs(moment_contour(n, t) - exact) / exact)
        density_err = max(density_err, abs(moment_from_density(t, n) - exact) / exact)
    checks.append(Check("moments: contour vs closed form", contour_err, 1e-10))
    checks.append(Check("moments: density vs closed form", density_err, 1e-7))

    sup = support(t)
    checks.append(Check("support: x_lo * x_hi = 1", abs(sup.x_lo * sup.x_hi - 1.0), 1e-12))
    checks.append(Check("roots: f_t(y_t) = -1", abs(f_osc(t, sup.y_t) + 1.0), 1e-12))
    checks.append(Check("roots: f_t'(a_t) = 0", abs(f_osc_deriv(t, sup.a_t)), 1e-12))

    try:
        curve = build_curve(t, curve_samples)
    except InvariantViolation:
        checks.append(Check("curve: invariants", math.inf, 0.0))
        return checks
    checks.append(Check("curve: Im g / (1 + |g|)", curve.checks["max_rel_imag_g"], 1e-10))
    checks.append(Check("curve: defining-equation residual", curve.checks["max_curve_residual"], 1e-10))
    # largest step against the required direction; 0 when strictly monotone
    dm = np.diff(curve.g_minus)
    dp = np.diff(curve.g_plus)
    bad = max(float(np.max(-dm, initial=-np.inf)), float(np.max(dp, initial=-np.inf)))
    checks.append(Check("curve: branch monotonicity", max(bad, 0.0), 0.0))
    return checks
