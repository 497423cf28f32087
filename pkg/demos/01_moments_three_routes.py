"""
Moments three ways
==================

The moments m_n(t) of the limit distribution can be computed from a finite
sum, from a contour integral around the origin, or by integrating x^n
against the density. All three should agree.
"""

import math

from glhs.moments import log_moment_closed_form
from glhs import moment_closed_form, moment_contour, moment_from_density

t = -1.0

# the closed form gives the first few in recognisable shape
print("m_1(-1) =", moment_closed_form(1, t), " e^(1/2) =", math.exp(0.5))
print("m_2(-1) =", moment_closed_form(2, t), " 2e     =", 2 * math.e)

# contour: trapezoid rule on |z| = 1/2, nodes doubled until the sum settles
# density: adaptive quadrature of x^(n-1) Im g^{-1}(x) / pi over the support
print(f"{'n':>2} {'closed form':>22} {'contour rel.err':>16} {'density rel.err':>16}")
for n in range(1, 9):
    exact = moment_closed_form(n, t)
    c = abs(moment_contour(n, t) - exact) / exact
    d = abs(moment_from_density(t, n) - exact) / exact
    print(f"{n:2d} {exact:22.15g} {c:16.2e} {d:16.2e}")

# for very negative t the moments grow quickly; the log-domain sum keeps going
print("m_100(-4) =", moment_closed_form(100, -4.0))
# past the double range only the logarithm is representable
print("log m_200(-4) =", log_moment_closed_form(200, -4.0))
