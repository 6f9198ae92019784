"""Symbolic colored HOMFLY polynomials of 5_2, 6_1, twist knots and the Whitehead link.

All sums run in a fixed lexicographic order. Terms sharing a closing
denominator are accumulated as polynomials first and divided once at the end.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .coefficients import alpha, alpha_at, bracket_ratio, gamma, s_coeff
from .laurent import (
    ONE,
    ZERO,
    BiLaurent,
    NonDivisibleError,
    RationalFn,
    exact_div,
    invert_vars,
    jones_specialize,
    mono,
    q_gcd,
)

__all__ = [
    "KnotId",
    "ColoredInvariant",
    "parse_knot",
    "twist_parameters",
    "writhe_prefactor",
    "h_52",
    "h_61",
    "h_twist",
    "h_whitehead",
    "colored_homfly",
    "reduce_invariant",
    "clear_denominator",
    "jones_specialize",
]


@dataclass(frozen=True)
class KnotId:
    """A supported knot or link: ``4_1``, ``5_2``, ``6_1``, ``wh`` or ``twist`` with ``p >= 3``."""

    tag: str
    p: int | None = None

    def __post_init__(self):
        if self.tag not in {"4_1", "5_2", "6_1", "wh", "twist"}:
            raise ValueError(f"unknown knot tag {self.tag!r}")
        if self.tag == "twist" and (self.p is None or self.p < 3):
            raise ValueError("twist knots need p >= 3")
        if self.tag != "twist" and self.p is not None:
            raise ValueError("only twist knots take a parameter")

    @property
    def canonical(self) -> KnotId:
        """Twist(3) is 5_2 and Twist(4) is 6_1."""
        if self.tag == "twist" and self.p == 3:
            return FIVE_TWO
        if self.tag == "twist" and self.p == 4:
            return SIX_ONE
        return self

    def same_knot(self, other: KnotId) -> bool:
        return self.canonical == other.canonical

    @property
    def num_components(self) -> int:
        return 2 if self.tag == "wh" else 1

    def __str__(self) -> str:
        return f"twist:{self.p}" if self.tag == "twist" else self.tag


FIGURE_EIGHT = KnotId("4_1")
FIVE_TWO = KnotId("5_2")
SIX_ONE = KnotId("6_1")
WHITEHEAD = KnotId("wh")


def Twist(p: int) -> KnotId:
    return KnotId("twist", p)


_ALIASES = {
    "4_1": FIGURE_EIGHT, "41": FIGURE_EIGHT, "fig8": FIGURE_EIGHT, "figure-eight": FIGURE_EIGHT,
    "5_2": FIVE_TWO, "52": FIVE_TWO,
    "6_1": SIX_ONE, "61": SIX_ONE,
    "wh": WHITEHEAD, "whitehead": WHITEHEAD,
}


def parse_knot(text: str) -> KnotId:
    key = text.strip().lower()
    if key in _ALIASES:
        return _ALIASES[key]
    m = re.fullmatch(r"(?:twist|k)[:_]?(-?\d+)", key)
    if m:
        return Twist(int(m.group(1)))
    raise ValueError(f"unsupported knot {text!r}; use 4_1, 5_2, 6_1, wh or twist:p")


@dataclass(frozen=True)
class ColoredInvariant:
    knot: KnotId
    color: int
    value: RationalFn
    reduced: BiLaurent | None = None
    clearing_factor: BiLaurent | None = None

    def __post_init__(self):
        if self.reduced is not None:
            factor = ONE if self.clearing_factor is None else self.clearing_factor
            if self.reduced * self.value.den != self.value.num * factor:
                raise ValueError("reduced value does not match the unreduced invariant")


def writhe_prefactor(n: int, power: int) -> BiLaurent:
    """``{a^n q^(n(n-1))}^power``."""
    return mono(n * power, n * (n - 1) * power)


def twist_parameters(p: int) -> tuple[int, int, int]:
    """``(p', p'', eps)`` for the twist knot with ``p`` half-twists."""
    pp = (p + 1) // 2
    if p % 2 == 0:
        return pp, p - 2, -1
    return pp, p + 3, 1


def _check_color(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"color must be an integer >= 1, got {n!r}")


def _twist_weight(n: int, u: int) -> BiLaurent:
    # a^{-2u} q^{-2u(u-1) - 4u(n-u)}: two kinks of u strands plus their crossings with the other n-u
    return mono(-2 * u, -2 * u * (u - 1) - 4 * u * (n - u))


def _collect(acc: dict[int, BiLaurent], n: int) -> RationalFn:
    # acc[m]: polynomial coefficient of [n-1;a]...[n-m;a] / ([n]...[n+1-m])
    total = RationalFn.of(ZERO)
    for m in sorted(acc):
        if acc[m]:
            total = total + bracket_ratio(n, n - m) * acc[m]
    return total


def _clasp_twist_sum(n: int, eps: int, power: int) -> RationalFn:
    acc: dict[int, BiLaurent] = {}
    for i in range(n + 1):
        outer = alpha_at(n, n, i, eps)
        for j in range(i + 1):
            e_a = -2 * (2 * n - 2 * i + j)
            e_q = -2 * (2 * n * n - 2 * n - 2 * i * i + 2 * i + 2 * i * j - j * j - j)
            head = outer * alpha(i, i, j) * mono(e_a, e_q)
            for k in range(i - j + 1):
                m = i - j - k
                acc[m] = acc.get(m, ZERO) + head * alpha(i - j, i - j, k)
    return _collect(acc, n) * writhe_prefactor(n, power)


@lru_cache(maxsize=None)
def h_52(n: int) -> RationalFn:
    _check_color(n)
    return _clasp_twist_sum(n, 1, 6)


@lru_cache(maxsize=None)
def h_61(n: int) -> RationalFn:
    _check_color(n)
    return _clasp_twist_sum(n, -1, 2)


@lru_cache(maxsize=None)
def h_twist(p: int, n: int) -> RationalFn:
    """Colored HOMFLY of the twist knot with ``p`` half-twists.

    The nested sum runs over compositions ``(j_1, ..., j_p')`` in
    lexicographic order. A kink weight follows the clasp and every
    resolved full twist except the last one, matching the explicit
    three-fold sums for 5_2 and 6_1.
    """
    if p < 3:
        raise ValueError(f"twist knots need p >= 3, got {p}")
    _check_color(n)
    pp, ppp, eps = twist_parameters(p)
    acc: dict[int, BiLaurent] = {}

    def descend(level: int, remaining: int, coeff: BiLaurent) -> None:
        if level == pp:
            acc[remaining] = acc.get(remaining, ZERO) + coeff
            return
        for j in range(remaining + 1):
            term = coeff * alpha(remaining, remaining, j)
            if level < pp - 1:
                term = term * _twist_weight(n, n - (remaining - j))
            descend(level + 1, remaining - j, term)

    for i in range(n + 1):
        descend(0, i, alpha_at(n, n, i, eps) * _twist_weight(n, n - i))
    return _collect(acc, n) * writhe_prefactor(n, ppp)


@lru_cache(maxsize=None)
def h_whitehead(n: int) -> RationalFn:
    _check_color(n)
    total = RationalFn.of(ZERO)
    for i in range(1, n):
        a_i = alpha(n, n, i)
        for j in range(i + 1):
            s = s_coeff(n, i - j)
            total = total + gamma(n - i, i, i, j) * s * s.invert_vars() * a_i
    s = s_coeff(n, n)
    total = total + s * s.invert_vars() * alpha(n, n, n)
    total = total + bracket_ratio(n, 0) * alpha(n, n, 0)
    return total * writhe_prefactor(n, 2)


def colored_homfly(knot: KnotId, n: int) -> RationalFn:
    knot = knot.canonical
    if knot.tag == "5_2":
        return h_52(n)
    if knot.tag == "6_1":
        return h_61(n)
    if knot.tag == "wh":
        return h_whitehead(n)
    if knot.tag == "twist":
        return h_twist(knot.p, n)
    raise ValueError(f"no symbolic formula for {knot}")


def clear_denominator(v: RationalFn) -> tuple[BiLaurent, BiLaurent]:
    """Split ``v`` into ``(polynomial, q-only denominator)`` with the denominator made minimal.

    The denominator is divided by its gcd with every a-slice of the numerator.
    """
    num, den = v.num, v.den
    g = den
    for ea in num.a_degrees():
        slice_poly = BiLaurent({(0, eq): c for eq, c in num.a_slice(ea).items()})
        g = q_gcd(g, slice_poly)
        if len(g) == 1:
            break
    num = exact_div(num, g)
    den = exact_div(den, g)
    # normalize the denominator to a unit-free form (lowest q-power 0, positive top coefficient)
    if len(den) == 1:
        ((_, eq), c), = den.items()
        return exact_div(num, den), ONE
    lo = min(eq for _, eq in den)
    lead = den[(0, max(eq for _, eq in den))]
    unit = mono(0, lo, 1 if lead > 0 else -1)
    return exact_div(num, unit), exact_div(den, unit)


def reduce_invariant(v: RationalFn, allow_denominator: bool = False) -> BiLaurent | tuple[BiLaurent, BiLaurent]:
    """Exact Laurent polynomial of ``v``.

    With ``allow_denominator`` the result is ``(numerator, clearing_factor)``
    where the clearing factor is the minimal q-only denominator left over
    (1 when ``v`` is a polynomial).
    """
    if allow_denominator:
        return clear_denominator(v)
    try:
        return exact_div(v.num, v.den)
    except NonDivisibleError as exc:
        raise NonDivisibleError(f"invariant does not reduce to a Laurent polynomial: {exc}", exc.a_degree) from exc


def colored_invariant(knot: KnotId, n: int) -> ColoredInvariant:
    value = colored_homfly(knot, n)
    if knot.canonical.tag == "wh":
        reduced, factor = clear_denominator(value)
        return ColoredInvariant(knot, n, value, reduced, factor)
    return ColoredInvariant(knot, n, value, reduce_invariant(value))


def strip_prefactor(v: RationalFn, n: int, power: int) -> RationalFn:
    return v * writhe_prefactor(n, -power)


__all__ += ["FIGURE_EIGHT", "FIVE_TWO", "SIX_ONE", "WHITEHEAD", "Twist", "colored_invariant", "strip_prefactor", "invert_vars"]
