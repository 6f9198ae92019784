"""
An independent oracle from the skein relation
=============================================

The oracle switches and smooths crossings of an encoded diagram until every
diagram is descending. It knows nothing about the colored formulas, so at
color 1 it is an independent check on them.
"""

# %%
from colored_homfly.invariants import colored_homfly, parse_knot
from colored_homfly.oracle import fixture_names, homfly_skein, load_fixture, skein_triple_check
from colored_homfly.oracle.catalog import KNOT_OF

print("fixtures:", ", ".join(fixture_names()))

# %%
# A fixture is a list of crossings with four endpoint labels each.
d = load_fixture("5_2")
print(f"5_2 has {len(d.crossings)} crossings and writhe {d.writhe}")

# %%
# Compare the oracle with the symbolic formulas at color 1.
for name, knot in KNOT_OF.items():
    if name == "4_1":
        continue
    ok = homfly_skein(load_fixture(name)) == colored_homfly(parse_knot(knot), 1)
    print(f"{name:8s} oracle == formula: {ok}")

# %%
# Reidemeister variants give the same value.
for variant, base in [("5_2_r3", "5_2"), ("wh_r2", "wh")]:
    print(variant, homfly_skein(load_fixture(variant)) == homfly_skein(load_fixture(base)))

# %%
# Mirroring flips every sign and inverts both variables.
m = load_fixture("6_1").mirror()
print("mirror rule:", homfly_skein(m) == homfly_skein(load_fixture("6_1")).invert_vars())

# %%
# The skein relation itself holds exactly at every crossing.
print("skein triples:", all(skein_triple_check(d, i) for i in range(len(d.crossings))))
