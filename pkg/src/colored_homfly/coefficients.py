"""Closed-form skein coefficients for twisted and encircled symmetrized strands.

``alpha``   resolution of antiparallel twisted strands (full twist, m and n strands)
``beta``    deleting/slipping expansion of two symmetrizers joined by j strands
``gamma``   annulus coefficient for three symmetrizers of sizes i, j, k
``c_coeff`` intermediate coefficients of the annulus recursion
``s_coeff`` a clasp of m strands around n strands, closed off

Descending bracket products are empty (equal to 1) whenever the upper index
falls below the lower one.
"""
from __future__ import annotations

from functools import lru_cache

from .laurent import (
    ONE,
    QMQ,
    BiLaurent,
    RationalFn,
    framed_numerator,
    gauss_binomial,
    invert_vars,
    mono,
    quantum_integer,
)


def qint_product(top: int, bottom: int) -> BiLaurent:
    """``[top][top-1]...[bottom]``; 1 when ``top < bottom``."""
    out = ONE
    for t in range(top, bottom - 1, -1):
        out = out * quantum_integer(t)
    return out


def framed_product(top: int, bottom: int) -> RationalFn:
    """``[top;a][top-1;a]...[bottom;a]``; 1 when ``top < bottom``."""
    num = ONE
    count = 0
    for t in range(top, bottom - 1, -1):
        num = num * framed_numerator(t)
        count += 1
    return RationalFn(num, QMQ**count)


def bracket_ratio(n: int, i: int) -> RationalFn:
    """``[n-1;a]...[i;a] / ([n]...[i+1])``, the closing factor of a symmetrizer trace."""
    r = framed_product(n - 1, i)
    return RationalFn(r.num, r.den * qint_product(n, i + 1))


@lru_cache(maxsize=None)
def alpha(m: int, n: int, i: int) -> BiLaurent:
    """Coefficient of the i-th term when a full antiparallel twist of m and n strands is resolved.

    The expression is symmetric in ``m`` and ``n``; only ``0 <= i <= min(m, n)``
    is required.
    """
    if i < 0 or i > min(m, n):
        raise ValueError(f"alpha needs 0 <= i <= min(m, n), got m={m}, n={n}, i={i}")
    out = mono(-i, -i * (i - 1), (-1) ** i) * QMQ**i
    for t in range(i):
        out = out * gauss_binomial(m - t, 1, -2)
    return out * gauss_binomial(n, i, -2)


@lru_cache(maxsize=None)
def alpha_mirror(m: int, n: int, i: int) -> BiLaurent:
    """``alpha`` with ``a -> a^-1`` and ``q -> q^-1`` (the mirrored twist)."""
    return invert_vars(alpha(m, n, i))


def alpha_at(m: int, n: int, i: int, eps: int) -> BiLaurent:
    return alpha(m, n, i) if eps > 0 else alpha_mirror(m, n, i)


def beta(i: int, j: int, k: int, m: int, n: int) -> RationalFn:
    if not (1 <= i <= j <= min(m, n) - 1):
        raise ValueError(f"beta needs 1 <= i <= j <= min(m, n) - 1, got i={i}, j={j}, m={m}, n={n}")
    if not 0 <= k <= i:
        raise ValueError(f"beta needs 0 <= k <= i, got k={k}, i={i}")
    num = (
        mono(0, k * (k - i))
        * qint_product(m - j, m - j - k + 1)
        * qint_product(n - j, n - j - k + 1)
        * qint_product(j, j - (i - k) + 1)
        * gauss_binomial(i, k, 2)
    )
    den = qint_product(m, m - i + 1) * qint_product(n, n - i + 1)
    return RationalFn(num, den) * framed_product(m + n - j - k - 1, m + n - j - i)


def gamma(i: int, j: int, k: int, l: int) -> RationalFn:
    if min(i, j, k) < 1:
        raise ValueError(f"gamma needs positive i, j, k, got {i}, {j}, {k}")
    if not 0 <= l <= min(j, k):
        raise ValueError(f"gamma needs 0 <= l <= min(j, k), got l={l}")
    num = mono(0, -(i - 1) * l) * qint_product(i, 1) * gauss_binomial(i - 1 + l, i - 1, 2)
    den = qint_product(i + j, j + 1) * qint_product(i + k, k + 1)
    closing = RationalFn(framed_numerator(j + k - 2 * l), QMQ)
    return RationalFn(num, den) * framed_product(i + j + k - l - 1, j + k - l + 1) * closing


def c_coeff(l1: int, l2: int, i: int, j: int, k: int) -> RationalFn:
    """Coefficient of ``C_{i-l1, j-l2, k-l2}`` in the expansion of ``C_{i,j,k}``."""
    if not (0 <= l1 <= i and 0 <= l2 <= min(j, k)):
        raise ValueError(f"c_coeff out of range: l1={l1}, l2={l2}, i={i}, j={j}, k={k}")
    s = l1 + l2
    num = (
        mono(0, -l1 * l2)
        * qint_product(j, j - l2 + 1)
        * qint_product(k, k - l2 + 1)
        * qint_product(i, i - l1 + 1)
        * gauss_binomial(s, l1, 2)
    )
    den = qint_product(i + j, i + j - s + 1) * qint_product(i + k, i + k - s + 1)
    return RationalFn(num, den) * framed_product(i + j + k - l2 - 1, i + j + k - l2 - l1)


def _s_sum(lo: int, hi: int, n: int) -> RationalFn:
    # sum_{i=0}^{lo} alpha_{lo,hi}^i(a^-1, q^-1) [n-1;a]...[i;a] / ([n]...[i+1])
    total = RationalFn.of(0)
    for i in range(lo + 1):
        total = total + bracket_ratio(n, i) * alpha_mirror(lo, hi, i)
    return total


def s_coeff_upper(m: int, n: int) -> RationalFn:
    """Branch written for ``m >= n``."""
    if m < n:
        raise ValueError("s_coeff_upper needs m >= n")
    return _s_sum(n, m, n)


def s_coeff_lower(m: int, n: int) -> RationalFn:
    """Branch written for ``n >= m``."""
    if n < m:
        raise ValueError("s_coeff_lower needs n >= m")
    return _s_sum(m, n, n)


@lru_cache(maxsize=None)
def s_coeff(m: int, n: int) -> RationalFn:
    """Scalar left when ``m`` strands clasp ``n`` strands whose ends are then closed."""
    if m < 0 or n < 0:
        raise ValueError("s_coeff needs m, n >= 0")
    return s_coeff_upper(m, n) if m >= n else s_coeff_lower(m, n)
