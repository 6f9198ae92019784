"""Uncolored HOMFLY polynomial by switch/smooth skein recursion.

Normalization: ``a H(L+) - a^-1 H(L-) = (q - q^-1) H(L0)`` and ``H(unknot) = 1``.
A descending diagram with ``c`` components is an unlink and has value
``[0;a]^(c-1)``.
"""
from __future__ import annotations

from ..laurent import QMQ, RationalFn, framed_numerator, mono
from .diagram import Diagram

MAX_CROSSINGS = 12


class CrossingBudgetError(ValueError):
    pass


def _unlink(c: int) -> RationalFn:
    return RationalFn(framed_numerator(0) ** (c - 1), QMQ ** (c - 1))


def homfly_skein(d: Diagram, budget: int = MAX_CROSSINGS) -> RationalFn:
    """HOMFLY polynomial of a closed diagram (normalized so the unknot is 1)."""
    if len(d.crossings) > budget:
        raise CrossingBudgetError(f"{len(d.crossings)} crossings exceeds the budget of {budget}")
    d.validate()
    memo: dict = {}
    return _homfly(d, memo)


def _homfly(d: Diagram, memo: dict) -> RationalFn:
    key = d.canonical_key()
    hit = memo.get(key)
    if hit is not None:
        return hit
    idx = d.first_undercrossing()
    if idx is None:
        val = _unlink(d.num_components())
    else:
        s = d.crossings[idx].sign
        switched = _homfly(d.switch(idx), memo)
        smoothed = _homfly(d.smooth(idx), memo)
        # H(L+) = a^-2 H(L-) + a^-1 z H(L0);  H(L-) = a^2 H(L+) - a z H(L0)
        if s > 0:
            val = switched * mono(-2, 0) + smoothed * (mono(-1, 0) * QMQ)
        else:
            val = switched * mono(2, 0) - smoothed * (mono(1, 0) * QMQ)
    memo[key] = val
    return val


def skein_triple_check(d: Diagram, index: int) -> bool:
    """Check the skein relation at one crossing with three independent evaluations."""
    plus = homfly_skein(d.set_sign(index, 1))
    minus = homfly_skein(d.set_sign(index, -1))
    zero = homfly_skein(d.smooth(index))
    return plus * mono(1, 0) - minus * mono(-1, 0) == zero * QMQ
