"""
Exact Laurent arithmetic in a and q
===================================

Quantum integers, framed quantum integers and Gaussian binomials are all
sparse Laurent polynomials in two variables with rational coefficients.
"""

# %%
# Quantum integers are symmetric under q -> 1/q.
from colored_homfly.laurent import (
    QMQ,
    RationalFn,
    exact_div,
    framed_integer,
    gauss_binomial,
    invert_vars,
    quantum_integer,
)

for k in range(1, 5):
    print(f"[{k}] =", quantum_integer(k))

# %%
# A framed quantum integer keeps the q - 1/q denominator until it is
# specialized, so it lives in ``RationalFn``.
f2 = framed_integer(2)
print("[2;a] =", f2)

# %%
# Division is exact or it raises. Here [6] / [3] = q^3 + q^-3.
print("[6]/[3] =", exact_div(quantum_integer(6), quantum_integer(3)))

# %%
# Gaussian binomials at base q^2 and q^-2 are mirror images.
up, down = gauss_binomial(4, 2, 2), gauss_binomial(4, 2, -2)
print("[4 choose 2]_{q^2}  =", up)
print("[4 choose 2]_{q^-2} =", down)
print("mirror check:", invert_vars(up) == down)

# %%
# Rational functions compare by cross-multiplication, so unreduced
# forms are still equal.
x = RationalFn(quantum_integer(2) * QMQ, QMQ * QMQ)
y = RationalFn(quantum_integer(2), QMQ)
print("equal after cross-multiplication:", x == y)
