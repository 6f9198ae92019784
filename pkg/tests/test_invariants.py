import json
import random
from pathlib import Path

import mpmath
import pytest

from colored_homfly.invariants import (
    FIGURE_EIGHT,
    FIVE_TWO,
    SIX_ONE,
    WHITEHEAD,
    ColoredInvariant,
    KnotId,
    Twist,
    clear_denominator,
    colored_homfly,
    colored_invariant,
    h_52,
    h_61,
    h_twist,
    h_whitehead,
    parse_knot,
    reduce_invariant,
    strip_prefactor,
    twist_parameters,
    writhe_prefactor,
)
from colored_homfly.laurent import ONE, QMQ, BiLaurent, NonDivisibleError, RationalFn, mono, quantum_integer

FROZEN = json.loads((Path(__file__).parent / "data" / "frozen_values.json").read_text())


def test_knot_ids():
    assert Twist(3).same_knot(FIVE_TWO) and Twist(4).same_knot(SIX_ONE)
    assert not Twist(5).same_knot(FIVE_TWO)
    assert parse_knot("twist:7") == Twist(7)
    assert parse_knot("WH") == WHITEHEAD and parse_knot("4_1") == FIGURE_EIGHT
    for bad in ["7_3", "twist:2", ""]:
        with pytest.raises(ValueError):
            parse_knot(bad)
    assert str(Twist(5)) == "twist:5"
    assert WHITEHEAD.num_components == 2


def test_twist_parameters():
    assert twist_parameters(3) == (2, 6, 1)
    assert twist_parameters(4) == (2, 2, -1)
    assert twist_parameters(5) == (3, 8, 1)
    assert twist_parameters(6) == (3, 4, -1)


@pytest.mark.parametrize("n", range(1, 5))
def test_twist_family_matches_explicit_sums(n):
    assert h_twist(3, n) == h_52(n)
    assert h_twist(4, n) == h_61(n)


def test_color_zero_rejected():
    for f in (h_52, h_61, h_whitehead):
        with pytest.raises(ValueError):
            f(0)
    with pytest.raises(ValueError):
        h_twist(5, 0)
    with pytest.raises(ValueError):
        h_twist(2, 1)


@pytest.mark.parametrize("knot", [FIVE_TWO, SIX_ONE, Twist(5), Twist(6)])
@pytest.mark.parametrize("n", range(1, 5))
def test_knots_reduce_to_integer_polynomials(knot, n):
    p = reduce_invariant(colored_homfly(knot, n))
    assert p.is_integral()


def test_unknot_normalization_at_a_equals_q():
    # at a = q (one-dimensional representation) every knot invariant is 1
    for knot in [FIVE_TWO, SIX_ONE, Twist(5)]:
        for n in (1, 2):
            p = reduce_invariant(colored_homfly(knot, n))
            assert p.substitute(a_exp=(0, 1)) == ONE


@pytest.mark.parametrize("n", range(1, 4))
def test_whitehead_denominator(n):
    v = h_whitehead(n)
    num, factor = clear_denominator(v)
    assert factor != ONE and factor.is_q_only()
    # the clearing factor divides a product of (q - q^-1) and [k] factors with k <= n
    bound = QMQ**n
    for k in range(2, n + 1):
        bound = bound * quantum_integer(k) ** n
    from colored_homfly.laurent import exact_div
    exact_div(bound * mono(0, 10 * n), factor)
    with pytest.raises(NonDivisibleError):
        reduce_invariant(v)
    inv = colored_invariant(WHITEHEAD, n)
    assert inv.reduced * v.den == v.num * inv.clearing_factor


def test_colored_invariant_consistency_check():
    v = h_52(1)
    with pytest.raises(ValueError):
        ColoredInvariant(FIVE_TWO, 1, v, reduce_invariant(v) + ONE)
    assert colored_invariant(FIVE_TWO, 1).reduced == reduce_invariant(v)


def test_whitehead_n1_only_boundary_terms():
    from colored_homfly.coefficients import alpha, bracket_ratio, s_coeff
    s = s_coeff(1, 1)
    direct = (s * s.invert_vars() * alpha(1, 1, 1) + bracket_ratio(1, 0) * alpha(1, 1, 0)) * writhe_prefactor(1, 2)
    assert h_whitehead(1) == direct


@pytest.mark.parametrize("knot,power", [(FIVE_TWO, 6), (SIX_ONE, 2), (Twist(5), 8), (Twist(6), 4), (WHITEHEAD, 2)])
def test_prefactor_roundtrip(knot, power):
    v = colored_homfly(knot, 2)
    stripped = strip_prefactor(v, 2, power)
    assert stripped * writhe_prefactor(2, power) == v


@pytest.mark.parametrize("key", ["5_2:2", "6_1:2", "wh:2", "twist:5:2"])
def test_regression_pins(key):
    rec = FROZEN["pinned"][key]
    expected = BiLaurent.from_records(rec["polynomial"]), BiLaurent.from_records(rec["clearing_factor"])
    knot, n = key.rsplit(":", 1)
    assert clear_denominator(colored_homfly(parse_knot(knot), int(n))) == expected


def _random_points(seed=7):
    rng = random.Random(seed)
    pts = []
    for _ in range(3):
        r_a, r_q = 1 + rng.random(), 0.5 + rng.random()
        pts.append((mpmath.mpc(r_a * mpmath.cos(rng.random()), r_a * mpmath.sin(rng.random())),
                    mpmath.mpc(r_q * mpmath.cos(rng.random()), r_q * mpmath.sin(rng.random()))))
        pts.append((mpmath.expjpi(rng.random()), mpmath.expjpi(rng.random())))
    return pts


@pytest.mark.parametrize("knot", [FIVE_TWO, SIX_ONE, Twist(5), Twist(6), WHITEHEAD])
@pytest.mark.parametrize("n", range(1, 4))
def test_reduced_form_matches_sum_off_and_on_circle(knot, n):
    v = colored_homfly(knot, n)
    num, factor = clear_denominator(v)
    with mpmath.workprec(128):
        for a, q in _random_points():
            exact = v(a, q)
            red = num(a, q) / factor(a, q)
            assert abs(exact - red) <= mpmath.mpf(10) ** -20 * abs(exact)


def test_jones_specialization_of_mirror_pair():
    # 6_1 value at a = q^2 is a Laurent polynomial in q with integer coefficients
    from colored_homfly.invariants import jones_specialize
    j = jones_specialize(reduce_invariant(h_61(2)))
    assert all(isinstance(c, int) for c in j.values())
    assert sum(j.values()) == 1  # q = 1 gives the unknot value


def test_no_formula_for_figure_eight():
    with pytest.raises(ValueError):
        colored_homfly(FIGURE_EIGHT, 1)
