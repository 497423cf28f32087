import io
import json
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from glhs.curve import g_eval, g_on_curve, g_on_curve_slope, half_height
from glhs.density import (
    cdf,
    cdf_grid,
    density_at,
    density_profile,
    invert_g,
    moment_from_density,
    quantile,
    support,
    support_endpoints,
)
from glhs.errors import DomainError, OutOfSupport
from glhs.moments import moment_closed_form, moment_contour
from glhs.numerics import integrate_adaptive


def mp_support(t):
    with mpmath.workdps(40):
        t = mpmath.mpf(t)
        s = mpmath.sqrt(t * t / 4 - t)
        return float((1 - t / 2 - s) * mpmath.exp(-s)), float((1 - t / 2 + s) * mpmath.exp(s))


def y_param_moment(t, n, cut=1e-10):
    """Moments from the branch parametrization in y, as an independent quadrature.

    With y = y_t (1 - s^2) the 1/sqrt singularity of the slopes at the junction
    becomes a bounded integrand in s.
    """
    y_t = half_height(t)

    def f(s):
        y = y_t * (1 - s * s)
        gm, gp = g_on_curve(t, y, "-"), g_on_curve(t, y, "+")
        dm, dp = g_on_curve_slope(t, y, "-"), g_on_curve_slope(t, y, "+")
        return y * (gm ** (n - 1) * dm - gp ** (n - 1) * dp) * 2 * y_t * s

    value, _ = quad(f, cut, 1 - cut, epsabs=0, epsrel=1e-12, limit=500)
    return value / math.pi


def test_support_minus_one():
    sup = support(-1.0)
    lo, hi = mp_support(-1.0)
    assert sup.x_lo == pytest.approx(lo, rel=1e-14)
    assert sup.x_hi == pytest.approx(hi, rel=1e-14)
    assert sup.x_lo == pytest.approx(0.12487, abs=1e-5)
    assert sup.x_hi == pytest.approx(8.0081, abs=1e-4)
    assert sup.x_lo < sup.x_mid < sup.x_hi


def test_support_near_zero():
    sup = support(-0.01)
    assert sup.x_lo == pytest.approx(0.8187, abs=1e-4)
    assert sup.x_hi == pytest.approx(1.2215, abs=1e-4)
    widths = [support(t).width for t in (-1e-1, -1e-2, -1e-3, -1e-4)]
    assert np.all(np.diff(widths) < 0)
    assert widths[-1] < 0.05


@pytest.mark.parametrize("t", np.linspace(-8.0, -0.01, 50))
def test_endpoint_product(t):
    lo, hi = support_endpoints(t)
    assert abs(lo * hi - 1.0) <= 1e-12
    mlo, mhi = mp_support(t)
    assert lo == pytest.approx(mlo, rel=1e-13)
    assert hi == pytest.approx(mhi, rel=1e-13)


@settings(max_examples=50, deadline=None)
@given(t=st.floats(-20.0, -1e-4))
def test_junction_value_is_one(t):
    # on Re z = -1/2 both factors of g_t have modulus one
    assert support(t).x_mid == pytest.approx(1.0, abs=1e-12)


def test_support_rejects_nonnegative_t():
    for t in (0.0, 0.5):
        with pytest.raises(DomainError):
            support(t)


def test_support_json():
    buf = io.StringIO()
    support(-1.0).to_json(buf)
    data = json.loads(buf.getvalue())
    assert set(data) >= {"t", "x_lo", "x_mid", "x_hi"}
    assert data["x_lo"] == support(-1.0).x_lo


def test_invert_junction():
    sup = support(-1.0)
    z = invert_g(-1.0, sup.x_mid)
    assert z == complex(-0.5, sup.y_t)
    assert z.imag == pytest.approx(0.960, abs=5e-4)


def test_invert_plus_branch_at_two():
    z = invert_g(-1.0, 2.0)
    assert z.real > -0.5 and z.imag > 0
    assert g_on_curve(-1.0, z.imag, "+") == pytest.approx(2.0, rel=1e-10)
    assert g_eval(-1.0, z).real == pytest.approx(2.0, rel=1e-10)


def test_invert_endpoint_limits():
    sup = support(-1.0)
    z = invert_g(-1.0, sup.x_hi * (1 - 1e-12))
    assert z.real == pytest.approx((math.sqrt(5) - 1) / 2, abs=1e-5)
    assert z.imag < 1e-5
    z = invert_g(-1.0, sup.x_lo * (1 + 1e-12))
    assert z.real == pytest.approx(-(math.sqrt(5) + 1) / 2, abs=1e-5)
    assert z.imag < 1e-5


def test_invert_out_of_support():
    sup = support(-1.0)
    for x in (sup.x_lo, sup.x_hi, 0.01, 10.0):
        with pytest.raises(OutOfSupport):
            invert_g(-1.0, x)
    assert issubclass(OutOfSupport, DomainError)


@pytest.mark.parametrize("t", [-0.25, -1.0, -4.0])
def test_inversion_round_trip(t):
    sup = support(t)
    rng = np.random.default_rng(7)
    xs = np.exp(rng.uniform(math.log(sup.x_lo), math.log(sup.x_hi), 1000))
    xs = xs[(xs > sup.x_lo) & (xs < sup.x_hi)]
    for x in xs:
        z = invert_g(t, x)
        assert 0 <= z.imag <= sup.y_t
        assert abs(g_eval(t, z) - x) <= 1e-9 * x
        # branch dispatch by the junction value
        assert (z.real <= -0.5) == (x <= sup.x_mid)


def test_density_values():
    sup = support(-1.0)
    assert density_at(-1.0, sup.x_mid) == pytest.approx(sup.y_t / (math.pi * sup.x_mid), rel=1e-15)
    assert density_at(-1.0, sup.x_hi * (1 - 1e-12)) < 1e-6
    assert density_at(-1.0, 2.0) > 0


@pytest.mark.parametrize("t", [-0.25, -1.0, -4.0])
def test_normalization(t):
    sup = support(t)
    rho = lambda x: density_at(t, x)
    mass = integrate_adaptive(rho, sup.x_lo, sup.x_mid, 1e-11) + integrate_adaptive(
        rho, sup.x_mid, sup.x_hi, 1e-11
    )
    assert mass == pytest.approx(1.0, abs=1e-8)


def test_moment_from_density_examples():
    assert moment_from_density(-1.0, 0) == pytest.approx(1.0, abs=1e-8)
    assert moment_from_density(-1.0, 1) == pytest.approx(math.exp(0.5), rel=1e-7)
    assert moment_from_density(-1.0, 2) == pytest.approx(2 * math.e, rel=1e-7)


@pytest.mark.parametrize("t", [-0.25, -1.0, -2.0, -4.0])
def test_moment_route_triangle(t):
    for n in range(9):
        exact = moment_closed_form(n, t)
        assert moment_from_density(t, n) == pytest.approx(exact, rel=1e-7)
        if n:
            assert moment_contour(n, t) == pytest.approx(exact, rel=1e-10)


@pytest.mark.parametrize("t", [-0.25, -1.0, -4.0])
def test_y_parametrized_oracle(t):
    for n in range(9):
        ref = y_param_moment(t, n)
        assert moment_from_density(t, n) == pytest.approx(ref, rel=1e-8)


def test_continuity_toward_point_mass():
    for t in (-1e-2, -1e-3, -1e-4):
        sup = support(t)
        assert sup.width < 5 * math.sqrt(-t)
        assert moment_from_density(t, 1) == pytest.approx(math.exp(-t / 2), rel=1e-7)
    assert abs(moment_from_density(-1e-4, 1) - 1) < 1e-4


def test_moment_from_density_rejects_bad_order():
    with pytest.raises(DomainError):
        moment_from_density(-1.0, -1)
    with pytest.raises(DomainError):
        moment_from_density(-1.0, 1.5)


def test_cdf_boundaries_and_clamping():
    sup = support(-1.0)
    assert cdf(-1.0, sup.x_lo) == 0.0
    assert cdf(-1.0, sup.x_hi) == 1.0
    assert cdf(-1.0, 0.0) == 0.0
    assert cdf(-1.0, 100.0) == 1.0


def test_quantile_round_trip():
    sup = support(-1.0)
    median = quantile(-1.0, 0.5)
    assert sup.x_lo < median < sup.x_hi
    for p in (0.01, 0.25, 0.5, 0.9, 0.999):
        assert cdf(-1.0, quantile(-1.0, p)) == pytest.approx(p, abs=1e-8)
    with pytest.raises(DomainError):
        quantile(-1.0, 1.0)


def test_cdf_grid_matches_pointwise():
    sup = support(-2.0)
    xs = np.array([sup.x_hi + 1, 0.5, sup.x_lo - 1e-3, 1.0, 3.0, 0.2])
    grid = cdf_grid(-2.0, xs)
    single = np.array([cdf(-2.0, x) for x in xs])
    np.testing.assert_allclose(grid, single, atol=1e-10)
    assert grid[0] == 1.0 and grid[2] == 0.0


@pytest.mark.parametrize("t", [-1e-4, -0.01, -1.0, -10.0, -100.0])
def test_profile_invariants(t):
    prof = density_profile(t, 400)
    sup = prof.support
    assert np.all(prof.x > sup.x_lo) and np.all(prof.x < sup.x_hi)
    assert np.all(np.diff(prof.x) > 0)
    assert np.all(prof.rho >= 0)
    assert 0.95 <= prof.trapezoid_mass() <= 1.0


def test_profile_cosine_grid_and_edges():
    prof = density_profile(-1.0, 400, grid="cosine")
    sup = prof.support
    assert prof.x[0] - sup.x_lo == pytest.approx(1e-6 * min(sup.width, sup.x_lo), rel=1e-6)
    assert 0.95 <= prof.trapezoid_mass() <= 1.0
    with pytest.raises(DomainError):
        density_profile(-1.0, 8)


def test_profile_shapes():
    prof = density_profile(-1.0, 400)
    peak = int(np.argmax(prof.rho))
    assert 0 < peak < 399
    near = density_profile(-0.01, 400)
    assert abs(near.x[int(np.argmax(near.rho))] - 1) < 0.2
    assert np.all(np.abs(near.x - 1) < 0.25)


def test_profile_serialization():
    prof = density_profile(-1.0, 32)
    buf = io.StringIO()
    prof.to_csv(buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "x,rho" and len(lines) == 33
    assert [float(v) for v in lines[5].split(",")] == [prof.x[4], prof.rho[4]]
    buf = io.StringIO()
    prof.to_json(buf)
    data = json.loads(buf.getvalue())
    assert data["support"]["x_hi"] == prof.support.x_hi
    assert len(data["rho"]) == 32
