"""
The ratio grid and the figure-eight integral
============================================

On the grid (M_k - 1)/(M_k + N - 2) = k/12 the values x_{M_k,N} trace out a
curve in k/12. For the figure-eight knot the analogous curve is
f(x) = 4 int_{pi x}^{5 pi/6} log(2 sin t) dt.
"""

# %%
from fractions import Fraction

from colored_homfly.asymptotics import f_integral, figure_eight_volume, integral_analogue, m_grid
from colored_homfly.invariants import SIX_ONE

print("M_k at N=75:", [str(m_grid(75, k)) for k in range(1, 12)])

# %%
# f(0) is the hyperbolic volume of the figure-eight knot, f vanishes at 5/6.
print("f(0) =", figure_eight_volume(100))
for k in range(0, 11):
    x = Fraction(k, 12)
    print(f"f({x}) = {float(f_integral(x)):.6f}")

# %%
# The 6_1 grid at two sizes of N; the curves nearly overlap.
small = integral_analogue(SIX_ONE, 30)
large = integral_analogue(SIX_ONE, 50)
for (r, x1, _), (_, x2, _) in zip(small, large):
    print(f"k/12={str(r):5s}  N=30: {float(x1):8.4f}   N=50: {float(x2):8.4f}")
