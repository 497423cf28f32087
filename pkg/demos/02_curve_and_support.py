"""
The curve and the support
=========================

g_t(z) = e^{-t(z+1/2)} (1 + 1/z) is real on a closed curve around the
origin. The curve has two branches x = -1/2 -/+ v(y) that meet at the top,
z = -1/2 + i y_t, and g_t maps each branch monotonically onto one half of
the support.
"""

import numpy as np

from glhs import build_curve, support

t = -1.0
curve = build_curve(t, 200)
print(f"half-height y_t = {curve.y_t:.6f}, critical point a_t = {curve.a_t:.6f}")

# left branch: g increases from x_lo to the junction; right: decreases from x_hi
lo, hi = curve.g_range
print(f"g along the curve spans [{lo:.5f}, {hi:.5f}]")
print("left branch increasing: ", bool(np.all(np.diff(curve.g_minus) > 0)))
print("right branch decreasing:", bool(np.all(np.diff(curve.g_plus) < 0)))

# the junction value is 1 for every t: on Re z = -1/2 both factors of g_t
# have modulus one
for s in (-0.1, -1.0, -5.0):
    sup = support(s)
    print(f"t={s:5}: x_lo={sup.x_lo:.6g} x_mid={sup.x_mid:.15f} x_hi={sup.x_hi:.6g} "
          f"x_lo*x_hi={sup.x_lo * sup.x_hi:.15f}")

# a few samples of the curve itself
for y, xm, xp in list(zip(curve.y, curve.x_minus, curve.x_plus))[::40]:
    print(f"y={y:.4f}  x-={xm:+.5f}  x+={xp:+.5f}")
