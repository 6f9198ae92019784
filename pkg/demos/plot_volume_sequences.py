"""
Sequences toward volume and Chern-Simons
========================================

x + i y = 2 pi Log(H_{N+1}/H_N) is sampled over a range of N. The imaginary
part is only meaningful modulo 2 pi^2, so it is compared at the branch
nearest the target.
"""

# %%
from colored_homfly.asymptotics import TARGETS, nearest_branch, sequence
from colored_homfly.invariants import FIVE_TWO, WHITEHEAD

# %%
# A short run at M=2 (the acceptance runs go up to N=175).
for knot in (FIVE_TWO, WHITEHEAD):
    target = TARGETS[knot]
    print(f"{knot}: target ({target.vol}, {target.cs})")
    for s in sequence(knot, 2, 20, 60, 10):
        y = nearest_branch(s.y, target.cs)
        print(f"  N={s.N:3d}  x={float(s.x):.5f}  y={float(y):.5f}  distance={s.distance(target):.4f}")

# %%
# Non-integer M works the same way. ``threads`` spreads the samples over
# processes without changing any digit.
rows = sequence(FIVE_TWO, "3/2", 20, 40, 10, threads=2)
for s in rows:
    print(f"M=3/2 N={s.N}  x={float(s.x):.5f}")
