"""
Evaluating at roots of unity
============================

At q = exp(i pi/(M+N-2)) and a = q^M, with color N-1, the sums are done
numerically in multiprecision. Exact zeros of [k] and [k;a] are decided on
the integers before any floating point work.
"""

# %%
from fractions import Fraction

import mpmath

from colored_homfly.invariants import FIVE_TWO, WHITEHEAD, colored_homfly
from colored_homfly.numeric import EvalPoint, eval_invariant, fig8_sine, point_values

pt = EvalPoint.of(2, 4, precision=128)
res = eval_invariant(FIVE_TWO, pt)
print("5_2 at M=2, N=4:", mpmath.nstr(res.value, 25))

# %%
# The same value from the exact polynomial.
with mpmath.workprec(200):
    a, q = point_values(pt)
    print("exact substitution:", mpmath.nstr(colored_homfly(FIVE_TWO, 3)(a, q), 25))

# %%
# Two evaluation paths: an O(n^2) factored one and a term-by-term one.
for method in ("factored", "direct"):
    r = eval_invariant(FIVE_TWO, EvalPoint.of(Fraction(13, 10), 30), method=method)
    print(f"{method:9s} {mpmath.nstr(r.value, 20)}  terms={r.terms_evaluated}  bits={r.precision_used}")

# %%
# At M = 13/10 many summands of the Whitehead sum vanish exactly.
r = eval_invariant(WHITEHEAD, EvalPoint.of("1.3", 100))
print(f"WH: {r.terms_evaluated} terms evaluated, {r.terms_skipped_zero} skipped as exact zeros")

# %%
# The figure-eight knot uses its sine product formula. At M=2 this is the
# Kashaev invariant, and 2 pi log(H_N)/N creeps down toward the volume.
for N in (2, 250, 1000, 2000):
    v = fig8_sine(EvalPoint.of(2, N))
    print(f"N={N:5d}  H={mpmath.nstr(v, 8)}  2pi log(H)/N={mpmath.nstr(2 * mpmath.pi * mpmath.log(v) / N, 8)}")
