"""
Colored HOMFLY polynomials of twist knots and the Whitehead link
================================================================

``colored_homfly(knot, n)`` returns the exact invariant with color n as a
rational function. Knots reduce to Laurent polynomials, while the
Whitehead link keeps a q-only clearing factor.
"""

# %%
import time

from colored_homfly.invariants import (
    FIVE_TWO,
    SIX_ONE,
    WHITEHEAD,
    Twist,
    clear_denominator,
    colored_homfly,
    colored_invariant,
)
from colored_homfly.laurent import jones_specialize

# %%
# Color 1 gives the classical HOMFLY polynomial.
print("5_2:", colored_invariant(FIVE_TWO, 1).reduced)
print("6_1:", colored_invariant(SIX_ONE, 1).reduced)

# %%
# The twist family K_p covers 5_2 (p = 3) and 6_1 (p = 4).
for n in (1, 2, 3):
    same = colored_homfly(Twist(3), n) == colored_homfly(FIVE_TWO, n)
    print(f"K_3 == 5_2 at n={n}:", same)

# %%
# Sizes grow quickly with the color.
for n in range(1, 6):
    start = time.perf_counter()
    inv = colored_invariant(Twist(5), n)
    print(f"K_5, n={n}: {len(inv.reduced):5d} terms, {time.perf_counter() - start:.2f}s")

# %%
# The Whitehead link value carries a clearing factor.
num, factor = clear_denominator(colored_homfly(WHITEHEAD, 2))
print("WH n=2 clearing factor:", factor, "| numerator terms:", len(num))

# %%
# Setting a = q^2 gives the colored Jones polynomial, as a dict of q-powers.
jones = jones_specialize(colored_invariant(FIVE_TWO, 1).reduced)
print("Jones of 5_2 (q-exponent: coefficient):", dict(sorted(jones.items())))
