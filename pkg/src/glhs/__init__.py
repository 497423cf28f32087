"""Limiting spectral distribution of Z*Z for Brownian motion on GL(d, C).

For t < 0 the moments m_n(t) of the limit law nu_t are available three
ways (finite sum, contour quadrature, quadrature against the density), the
density itself is obtained by inverting g_t(z) = e^{-t(z+1/2)}(1 + 1/z)
along the closed curve on which g_t is real, and a Monte Carlo of the
matrix diffusion checks the limit at finite dimension.
"""

from .curve import (
    CurveModel,
    branch_x,
    branch_x_deriv,
    build_curve,
    critical_point,
    f_osc,
    f_osc_deriv,
    g_eval,
    g_on_curve,
    half_height,
    half_width,
)
from .density import (
    DensityProfile,
    SupportInterval,
    cdf,
    density_at,
    density_profile,
    invert_g,
    moment_from_density,
    quantile,
    support,
)
from .errors import (
    DomainError,
    GLHSError,
    InvalidBracket,
    InvariantViolation,
    NoConvergence,
    NonRealResult,
    NumericalBlowup,
    OutOfSupport,
    PoleAtOrigin,
    ResourceExceeded,
)
from .moments import MomentTable, moment_closed_form, moment_contour, moment_table
from .numerics import Bracket, find_root, integrate_adaptive, integrate_periodic
from .simulate import SimConfig, SimResult, empirical_vs_limit, simulate

__version__ = "0.1.0"
