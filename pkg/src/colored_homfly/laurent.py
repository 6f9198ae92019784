"""Exact bivariate Laurent polynomials in ``a`` and ``q``.

:class:`BiLaurent` stores a sparse map ``(e_a, e_q) -> coefficient`` with exact
rational coefficients (``int`` where possible, :class:`fractions.Fraction`
otherwise). :class:`RationalFn` is a quotient whose denominator involves ``q``
only, which is all the skein formulas ever need.
"""
from __future__ import annotations

import json
from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Union

Coeff = Union[int, Fraction]


class NonDivisibleError(ArithmeticError):
    """Exact division left a remainder."""

    def __init__(self, message: str, a_degree: int | None = None):
        super().__init__(message)
        self.a_degree = a_degree


def _norm(c) -> Coeff:
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    if isinstance(c, Rational):
        return _norm(Fraction(c))
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


class BiLaurent:
    """Immutable sparse Laurent polynomial in ``a`` and ``q``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], Coeff] | Iterable = ()):
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms
        clean = {}
        for (ea, eq), c in items:
            c = _norm(c)
            if c:
                clean[(int(ea), int(eq))] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> BiLaurent:
        # trusted constructor: terms already normalized and zero-free
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, ea: int = 0, eq: int = 0, coeff: Coeff = 1) -> BiLaurent:
        return cls({(ea, eq): coeff})

    @classmethod
    def const(cls, c: Coeff) -> BiLaurent:
        return cls({(0, 0): c})

    # -- container protocol -------------------------------------------------
    @property
    def terms(self) -> dict[tuple[int, int], Coeff]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __getitem__(self, key: tuple[int, int]) -> Coeff:
        return self._terms.get(key, 0)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_q_only(self) -> bool:
        return all(ea == 0 for ea, _ in self._terms)

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self._terms.values())

    def a_degrees(self) -> list[int]:
        return sorted({ea for ea, _ in self._terms})

    def a_slice(self, ea: int) -> dict[int, Coeff]:
        return {eq: c for (fa, eq), c in self._terms.items() if fa == ea}

    # -- arithmetic ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, BiLaurent):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == BiLaurent.const(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other) -> BiLaurent:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = _norm(v)
            else:
                out.pop(k, None)
        return BiLaurent._raw(out)

    __radd__ = __add__

    def __neg__(self) -> BiLaurent:
        return BiLaurent._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> BiLaurent:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> BiLaurent:
        return (-self) + other

    def __mul__(self, other) -> BiLaurent:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return BiLaurent._raw({})
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            ((fa, fq), d), = b.items()
            return BiLaurent._raw({(ea + fa, eq + fq): _norm(c * d) for (ea, eq), c in a.items()})
        out: dict = defaultdict(int)
        bitems = list(b.items())
        for (ea, eq), c in a.items():
            for (fa, fq), d in bitems:
                out[(ea + fa, eq + fq)] += c * d
        return BiLaurent._raw({k: _norm(v) for k, v in out.items() if v})

    __rmul__ = __mul__

    def __pow__(self, e: int) -> BiLaurent:
        if not isinstance(e, int) or e < 0:
            raise ValueError("BiLaurent powers must be non-negative integers")
        result = ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, ea: int = 0, eq: int = 0) -> BiLaurent:
        """Multiply by the monomial ``a**ea * q**eq``."""
        return BiLaurent._raw({(fa + ea, fq + eq): c for (fa, fq), c in self._terms.items()})

    def scale(self, c: Coeff) -> BiLaurent:
        c = _norm(c)
        if not c:
            return ZERO
        return BiLaurent._raw({k: _norm(v * c) for k, v in self._terms.items()})

    def substitute(self, a_exp: tuple[int, int] = (1, 0), q_exp: tuple[int, int] = (0, 1)) -> BiLaurent:
        """Monomial substitution ``a -> a**a_exp[0] q**a_exp[1]``, ``q -> a**q_exp[0] q**q_exp[1]``."""
        out: dict = defaultdict(int)
        for (ea, eq), c in self._terms.items():
            out[(ea * a_exp[0] + eq * q_exp[0], ea * a_exp[1] + eq * q_exp[1])] += c
        return BiLaurent(out)

    def __call__(self, a, q):
        """Evaluate at numeric ``a`` and ``q`` (any type supporting ``**`` with ints)."""
        total = 0
        for (ea, eq), c in self._terms.items():
            total = total + c * a**ea * q**eq
        return total

    # -- display / serialization -------------------------------------------
    def sorted_terms(self) -> list[tuple[tuple[int, int], Coeff]]:
        return sorted(self._terms.items())

    def __repr__(self) -> str:
        return f"BiLaurent({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (ea, eq), c in sorted(self._terms.items(), reverse=True):
            mono = []
            if ea:
                mono.append("a" if ea == 1 else f"a^{ea}")
            if eq:
                mono.append("q" if eq == 1 else f"q^{eq}")
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if mono:
                body = "*".join(mono)
                if mag != 1:
                    body = f"{mag}*{body}"
            else:
                body = str(mag)
            parts.append((sign, body))
        first_sign, first = parts[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def to_records(self) -> list[dict]:
        recs = []
        for (ea, eq), c in self.sorted_terms():
            c = Fraction(c)
            recs.append({"e_a": ea, "e_q": eq, "coeff_num": c.numerator, "coeff_den": c.denominator})
        return recs

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_records(), **kwargs)

    @classmethod
    def from_records(cls, records: Iterable[Mapping]) -> BiLaurent:
        out: dict = defaultdict(int)
        for r in records:
            out[(r["e_a"], r["e_q"])] += Fraction(r["coeff_num"], r.get("coeff_den", 1))
        return cls(out)

    @classmethod
    def from_json(cls, text: str) -> BiLaurent:
        return cls.from_records(json.loads(text))


def _coerce(x) -> BiLaurent:
    if isinstance(x, BiLaurent):
        return x
    if isinstance(x, (int, Fraction)):
        return BiLaurent.const(x)
    return NotImplemented


ZERO = BiLaurent._raw({})
ONE = BiLaurent._raw({(0, 0): 1})
A = BiLaurent._raw({(1, 0): 1})
Q = BiLaurent._raw({(0, 1): 1})


def mono(ea: int = 0, eq: int = 0, coeff: Coeff = 1) -> BiLaurent:
    return BiLaurent.monomial(ea, eq, coeff)


# ---------------------------------------------------------------------------
# univariate helpers on q-slices, {e_q: coeff}
# ---------------------------------------------------------------------------

def _div_slice(num: dict[int, Coeff], den: dict[int, Coeff]) -> dict[int, Coeff] | None:
    """Exact Laurent division of q-slices; ``None`` when a remainder is left."""
    if not num:
        return {}
    rem = dict(num)
    d_hi = max(den)
    d_lo = min(den)
    lead = den[d_hi]
    n_lo = min(rem)
    quot: dict[int, Coeff] = {}
    den_items = list(den.items())
    while rem:
        hi = max(rem)
        e = hi - d_hi
        if e + d_lo < n_lo:
            return None
        c = rem[hi]
        c = c // lead if isinstance(c, int) and isinstance(lead, int) and c % lead == 0 else Fraction(c) / lead
        c = _norm(c)
        quot[e] = c
        for de, dc in den_items:
            k = e + de
            v = rem.get(k, 0) - c * dc
            if v:
                rem[k] = _norm(v)
            else:
                rem.pop(k, None)
    return quot


def exact_div(num: BiLaurent, den: BiLaurent) -> BiLaurent:
    """Return ``r`` with ``r * den == num``; ``den`` must be a nonzero q-only polynomial."""
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if not den.is_q_only():
        raise ValueError("exact_div needs a q-only divisor")
    dslice = den.a_slice(0)
    out = {}
    by_a: dict[int, dict[int, Coeff]] = defaultdict(dict)
    for (ea, eq), c in num.items():
        by_a[ea][eq] = c
    for ea in sorted(by_a):
        qs = _div_slice(by_a[ea], dslice)
        if qs is None:
            raise NonDivisibleError(f"not divisible in the a^{ea} slice by {den}", a_degree=ea)
        for eq, c in qs.items():
            out[(ea, eq)] = c
    return BiLaurent._raw(out)


def _slice_mul(x: dict[int, Coeff], y: dict[int, Coeff]) -> dict[int, Coeff]:
    out: dict = defaultdict(int)
    for e, c in x.items():
        for f, d in y.items():
            out[e + f] += c * d
    return {k: _norm(v) for k, v in out.items() if v}


def _slice_rem(x: dict[int, Coeff], y: dict[int, Coeff]) -> dict[int, Coeff]:
    # polynomial remainder, both shifted to start at degree 0
    rem = {k: Fraction(v) for k, v in x.items()}
    y_hi = max(y)
    lead = Fraction(y[y_hi])
    while rem and max(rem) >= y_hi:
        hi = max(rem)
        c = rem[hi] / lead
        for e, d in y.items():
            k = hi - y_hi + e
            v = rem.get(k, 0) - c * d
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return rem


def _shift_to_zero(x: dict[int, Coeff]) -> dict[int, Coeff]:
    lo = min(x)
    return {k - lo: v for k, v in x.items()}


def q_gcd(x: BiLaurent, y: BiLaurent) -> BiLaurent:
    """Greatest common divisor of two q-only polynomials, up to a unit.

    Normalized to lowest exponent 0 with an integer content-free coefficient
    vector and positive leading coefficient.
    """
    if not (x.is_q_only() and y.is_q_only()):
        raise ValueError("q_gcd needs q-only polynomials")
    if x.is_zero():
        return y
    if y.is_zero():
        return x
    u = _shift_to_zero(x.a_slice(0))
    v = _shift_to_zero(y.a_slice(0))
    while v:
        u, v = v, _slice_rem(u, v)
        if v:
            v = _shift_to_zero(v)
    # clear denominators and content
    from math import gcd, lcm

    dens = [Fraction(c).denominator for c in u.values()]
    m = lcm(*dens)
    ints = {k: int(Fraction(c) * m) for k, c in u.items()}
    g = 0
    for c in ints.values():
        g = gcd(g, c)
    if ints[max(ints)] < 0:
        g = -g
    return BiLaurent._raw({(0, k): c // g for k, c in ints.items()})


# ---------------------------------------------------------------------------
# rational functions with q-only denominators
# ---------------------------------------------------------------------------

class RationalFn:
    """Quotient ``num / den`` with ``den`` a nonzero q-only :class:`BiLaurent`.

    Values are kept unreduced. Addition uses the least common multiple of
    the denominators (univariate gcd in ``q``), so sums do not inflate.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = _coerce(num) if not isinstance(num, BiLaurent) else num
        den = _coerce(den) if not isinstance(den, BiLaurent) else den
        if num is NotImplemented or den is NotImplemented:
            raise TypeError("RationalFn parts must be BiLaurent or rationals")
        if den.is_zero():
            raise ZeroDivisionError("RationalFn with zero denominator")
        if not den.is_q_only():
            raise ValueError(f"denominator must be q-only, got {den}")
        self.num = num
        self.den = den

    @classmethod
    def of(cls, x) -> RationalFn:
        if isinstance(x, RationalFn):
            return x
        return cls(x, ONE)

    def __repr__(self) -> str:
        return f"RationalFn(({self.num}) / ({self.den}))"

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (BiLaurent, int, Fraction)):
            other = RationalFn.of(other)
        if not isinstance(other, RationalFn):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None  # equality is cross-multiplied; no canonical hash

    def __add__(self, other) -> RationalFn:
        if isinstance(other, (BiLaurent, int, Fraction)):
            other = RationalFn.of(other)
        if not isinstance(other, RationalFn):
            return NotImplemented
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.den == other.den:
            return RationalFn(self.num + other.num, self.den)
        g = q_gcd(self.den, other.den)
        f1 = exact_div(other.den, g)
        f2 = exact_div(self.den, g)
        return RationalFn(self.num * f1 + other.num * f2, self.den * f1)

    __radd__ = __add__

    def __neg__(self) -> RationalFn:
        return RationalFn(-self.num, self.den)

    def __sub__(self, other) -> RationalFn:
        if isinstance(other, (BiLaurent, int, Fraction)):
            other = RationalFn.of(other)
        if not isinstance(other, RationalFn):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> RationalFn:
        return (-self) + other

    def __mul__(self, other) -> RationalFn:
        if isinstance(other, (BiLaurent, int, Fraction)):
            return RationalFn(self.num * other, self.den)
        if not isinstance(other, RationalFn):
            return NotImplemented
        return RationalFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> RationalFn:
        if not isinstance(e, int):
            raise TypeError("integer exponent required")
        if e < 0:
            raise ValueError("negative powers need an a-free numerator; use inverse()")
        return RationalFn(self.num**e, self.den**e)

    def inverse(self) -> RationalFn:
        """Reciprocal; only defined when the numerator is q-only as well."""
        return RationalFn(self.den, self.num)

    def invert_vars(self) -> RationalFn:
        return RationalFn(invert_vars(self.num), invert_vars(self.den))

    def reduce(self) -> BiLaurent:
        """Exact polynomial value; raises :class:`NonDivisibleError` otherwise."""
        return exact_div(self.num, self.den)

    def __call__(self, a, q):
        return self.num(a, q) / self.den(a, q)


# ---------------------------------------------------------------------------
# quantum integers and friends
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def quantum_integer(n: int) -> BiLaurent:
    """``[n] = q^(n-1) + q^(n-3) + ... + q^(1-n)``; zero at ``n = 0``, odd in ``n``."""
    if n < 0:
        return -quantum_integer(-n)
    return BiLaurent._raw({(0, n - 1 - 2 * t): 1 for t in range(n)})


QMQ = BiLaurent._raw({(0, 1): 1, (0, -1): -1})  # q - q^-1


def framed_numerator(n: int) -> BiLaurent:
    """``a q^n - a^-1 q^-n``, the numerator of ``[n;a]``."""
    return BiLaurent._raw({(1, n): 1, (-1, -n): -1})


def framed_integer(n: int) -> RationalFn:
    return RationalFn(framed_numerator(n), QMQ)


@lru_cache(maxsize=None)
def gauss_binomial(n: int, r: int, base_exp: int = 1) -> BiLaurent:
    """Gaussian binomial ``[n choose r]`` at base ``q**base_exp``."""
    if not 0 <= r <= n:
        raise ValueError(f"gauss_binomial needs 0 <= r <= n, got n={n}, r={r}")
    if base_exp == 0:
        raise ValueError("base_exp must be nonzero")
    num = ONE
    den = ONE
    for t in range(r):
        num = num * BiLaurent._raw({(0, 0): 1, (0, base_exp * (n - t)): -1})
        den = den * BiLaurent._raw({(0, 0): 1, (0, base_exp * (r - t)): -1})
    return exact_div(num, den)


def invert_vars(p: BiLaurent) -> BiLaurent:
    """``a -> a^-1``, ``q -> q^-1``."""
    return BiLaurent._raw({(-ea, -eq): c for (ea, eq), c in p.items()})


def jones_specialize(p: BiLaurent) -> dict[int, Coeff]:
    """Substitute ``a = q^2``; returns a univariate ``{e_q: coeff}`` map."""
    out: dict = defaultdict(int)
    for (ea, eq), c in p.items():
        out[2 * ea + eq] += c
    return {k: _norm(v) for k, v in sorted(out.items()) if v}
