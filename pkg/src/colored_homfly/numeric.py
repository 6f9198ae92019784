"""High-precision evaluation at ``q = exp(i*pi/(M+N-2))``, ``a = q^M``.

With ``M = M_num/M_den`` and ``D = M_num + (N-2) M_den`` every phase in the
sums is an integer multiple of ``pi/(2D)``, so a single table of powers of
``zeta = exp(i*pi/(2D))`` covers all monomials, quantum integers
``[k] = sin(k*theta)/sin(theta)`` and framed integers
``[k;a] = sin((M+k)*theta)/sin(theta)``. Factors are kept as
``(phase index, real magnitude)`` pairs; magnitudes that vanish at the
root of unity are recognized on the rational data and carried as exact
zeros, never compared in floating point.

Two summation routes are provided. ``method="direct"`` evaluates every
summand of the nested sums. ``method="factored"`` (default) exploits that
the innermost sums only depend on the number of strands left, which turns
the O(n^3) (or O(n^(p'+1))) sums into O(n^2) passes.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

import mpmath

from .invariants import KnotId, parse_knot, twist_parameters

log = logging.getLogger(__name__)

DEFAULT_MAX_DOUBLINGS = 4
AGREEMENT = 1e-12


class NumericFailure(ArithmeticError):
    """Precision exhausted or a vanishing denominator at the evaluation point."""

    def __init__(self, message: str, max_magnitude=None):
        super().__init__(message)
        self.max_magnitude = max_magnitude


@dataclass(frozen=True)
class EvalPoint:
    """``q = exp(i pi/(M+N-2))``, ``a = q^M`` with ``M = M_num/M_den`` and color ``n = N-1``.

    ``precision`` is the working precision in bits; ``None`` selects the
    adaptive default.
    """

    M_num: int
    M_den: int
    N: int
    precision: int | None = None

    def __post_init__(self):
        if self.M_den <= 0:
            raise ValueError("M_den must be positive")
        if self.N < 2:
            raise ValueError("N must be at least 2")
        if self.M_num + (self.N - 2) * self.M_den <= 0:
            raise ValueError("need M + N - 2 > 0")
        _, md, D = self.reduced
        if md % D == 0:
            raise ValueError(f"q = +-1 at M={self.M}, N={self.N}: theta is a multiple of pi")
        if self.precision is not None and self.precision < 16:
            raise ValueError("precision must be at least 16 bits")

    @classmethod
    def of(cls, M, N: int, precision: int | None = None) -> EvalPoint:
        M = Fraction(M)
        return cls(M.numerator, M.denominator, N, precision)

    @property
    def M(self) -> Fraction:
        return Fraction(self.M_num, self.M_den)

    @property
    def n(self) -> int:
        return self.N - 1

    @property
    def reduced(self) -> tuple[int, int, int]:
        """``(M_num, M_den, D)`` in lowest terms."""
        g = gcd(self.M_num, self.M_den)
        mn, md = self.M_num // g, self.M_den // g
        return mn, md, mn + (self.N - 2) * md

    def with_precision(self, bits: int | None) -> EvalPoint:
        return EvalPoint(self.M_num, self.M_den, self.N, bits)

    def conjugate_params(self) -> tuple[int, int]:
        return self.M_num, self.M_den

    def default_precision(self) -> int:
        return max(256, 16 * self.N)


@dataclass
class EvalResult:
    value: mpmath.mpc
    precision_used: int
    terms_evaluated: int = 0
    terms_skipped_zero: int = 0
    max_magnitude: float = 0.0
    meta: dict = field(default_factory=dict)

    def as_record(self, digits: int | None = None) -> dict:
        re, im = self.value.real, self.value.imag
        if digits is None:
            digits = max(1, min(30, int(self.precision_used * 0.30103) - 8))
        return {
            "re": mpmath.nstr(re, digits, strip_zeros=False),
            "im": mpmath.nstr(im, digits, strip_zeros=False),
            "precision_used": self.precision_used,
            "terms_evaluated": self.terms_evaluated,
            "terms_skipped_zero": self.terms_skipped_zero,
        }


def _zero(x) -> bool:
    # exact zeros are carried as the int 0, never as a floating value
    return x.__class__ is int and x == 0


class _Prefix:
    """Prefix products of a real sequence with exact zeros counted separately."""

    def __init__(self, ctx, values):
        self.zeros = [0]
        self.prod = [ctx.mpf(1)]
        for v in values:
            if v == 0:
                self.zeros.append(self.zeros[-1] + 1)
                self.prod.append(self.prod[-1])
            else:
                self.zeros.append(self.zeros[-1])
                self.prod.append(self.prod[-1] * v)

    def span(self, lo: int, hi: int):
        """``(zero count, nonzero product)`` over indices ``lo..hi`` (1 when empty)."""
        if hi < lo:
            return 0, 1
        return self.zeros[hi + 1] - self.zeros[lo], self.prod[hi + 1] / self.prod[lo]


class PointTables:
    """Per-point tables shared by every summand."""

    def __init__(self, pt: EvalPoint, ctx, max_index: int):
        self.pt = pt
        self.ctx = ctx
        mn, md, D = pt.reduced
        self.mn, self.md, self.D = mn, md, D
        self.period = 4 * D
        zeta = ctx.expjpi(ctx.mpf(1) / (2 * D))
        tab = [ctx.mpc(1)]
        for _ in range(self.period - 1):
            tab.append(tab[-1] * zeta)
        self.zeta = tab
        self.sin_theta = self._sinpi(md)
        self.lo = -max_index
        self.hi = max_index
        # [k] and [k;a] on lo..hi
        self.qint = {}
        self.framed = {}
        for k in range(self.lo, self.hi + 1):
            self.qint[k] = 0 if (k * md) % D == 0 else self._sinpi(k * md) / self.sin_theta
            self.framed[k] = 0 if (mn + k * md) % D == 0 else self._sinpi(mn + k * md) / self.sin_theta
        self.qint_prefix = _Prefix(ctx, [self.qint[k] for k in range(0, self.hi + 1)])
        self.framed_prefix = _Prefix(ctx, [self.framed[k] for k in range(self.lo, self.hi + 1)])
        self.two_sin = 2 * self.sin_theta
        self.max_magnitude = ctx.mpf(0)

    def _sinpi(self, k: int):
        # sin(pi k / D)
        return self.zeta[(2 * k) % self.period].imag

    # -- phases (units of pi/(2D)) ---------------------------------------
    def phase_a(self, e: int) -> int:
        return 2 * self.mn * e

    def phase_q(self, e: int) -> int:
        return 2 * self.md * e

    def phase_i(self, e: int) -> int:
        return self.D * e

    def unit(self, phase: int):
        return self.zeta[phase % self.period]

    # -- real products with zero tracking -----------------------------------
    def qint_span(self, top: int, bottom: int):
        """``[top][top-1]...[bottom]`` for ``0 <= bottom``."""
        if top < bottom:
            return 0, 1
        return self.qint_prefix.span(bottom, top)

    def framed_span(self, top: int, bottom: int):
        """``[top;a]...[bottom;a]``."""
        if top < bottom:
            return 0, 1
        return self.framed_prefix.span(bottom - self.lo, top - self.lo)

    def combine(self, nums, dens):
        """Product of spans in ``nums`` over spans in ``dens``; exact 0 when a numerator zero survives.

        Any zero in a denominator is an error, even when a numerator zero
        could formally cancel it: 0/0 has no value at the point.
        """
        if any(zd for zd, _ in dens):
            raise NumericFailure(
                f"vanishing denominator at M={self.pt.M}, N={self.pt.N}", float(abs(self.max_magnitude))
            )
        v = self.ctx.mpf(1)
        for zn, x in nums:
            if zn:
                return 0
            v *= x
        for _, x in dens:
            v /= x
        return v

    def qbin(self, m: int, r: int):
        """Symmetric quantum binomial ``[m]!/([r]![m-r]!)``."""
        return self.combine([self.qint_span(m, m - r + 1)], [self.qint_span(r, 1)])

    # -- coefficients as (phase, magnitude) ---------------------------------
    def alpha(self, m: int, n: int, i: int):
        """``alpha_{m,n}^i(a, q)``; ``alpha(a^-1, q^-1)`` is the complex conjugate."""
        mag = self.combine([self.qint_span(m, m - i + 1), self.qint_span(n, n - i + 1)], [self.qint_span(i, 1)])
        if not _zero(mag):
            mag = mag * self.two_sin**i
            if i % 2:
                mag = -mag
        e_q = -i * (i - 1) - (i * (m - 1) - i * (i - 1) // 2) - i * (n - i)
        phase = self.phase_i(i) + self.phase_a(-i) + self.phase_q(e_q)
        return phase, mag

    def closing_ratio(self, n: int, bottom: int):
        """``[n-1;a]...[bottom;a] / ([n]...[bottom+1])`` as a real magnitude."""
        return self.combine([self.framed_span(n - 1, bottom)], [self.qint_span(n, bottom + 1)])

    def value(self, phase: int, mag):
        if _zero(mag):
            return self.ctx.mpc(0)
        a = abs(mag)
        if a > self.max_magnitude:
            self.max_magnitude = a
        return self.unit(phase) * mag


def _prefactor_phase(t: PointTables, n: int, power: int) -> int:
    return t.phase_a(n * power) + t.phase_q(n * (n - 1) * power)


def _weight_phase(t: PointTables, n: int, u: int) -> int:
    return t.phase_a(-2 * u) + t.phase_q(-2 * u * (u - 1) - 4 * u * (n - u))


# ---------------------------------------------------------------------------
# 5_2 / 6_1 triple sums
# ---------------------------------------------------------------------------

def _clasp_twist(t: PointTables, n: int, eps: int, power: int, method: str, stats: dict):
    ctx = t.ctx
    R = [t.closing_ratio(n, n - m) for m in range(n + 1)]
    total = ctx.mpc(0)
    alpha_n = [t.alpha(n, n, i) for i in range(n + 1)]
    if eps < 0:
        alpha_n = [(-ph, mag) for ph, mag in alpha_n]
    if method == "direct":
        for i in range(n + 1):
            ph_i, mag_i = alpha_n[i]
            for j in range(i + 1):
                ph_j, mag_j = t.alpha(i, i, j)
                e_a = -2 * (2 * n - 2 * i + j)
                e_q = -2 * (2 * n * n - 2 * n - 2 * i * i + 2 * i + 2 * i * j - j * j - j)
                head_ph = ph_i + ph_j + t.phase_a(e_a) + t.phase_q(e_q)
                for k in range(i - j + 1):
                    r = R[i - j - k]
                    if _zero(r) or _zero(mag_i) or _zero(mag_j):
                        stats["skipped"] += 1
                        continue
                    ph_k, mag_k = t.alpha(i - j, i - j, k)
                    if _zero(mag_k):
                        stats["skipped"] += 1
                        continue
                    total += t.value(head_ph + ph_k, mag_i * mag_j * mag_k * r)
                    stats["evaluated"] += 1
    else:
        # U[s] = sum_k alpha_{s,s}^k R[s-k]
        U = []
        live = []  # number of non-skipped k terms per s
        for s in range(n + 1):
            acc = ctx.mpc(0)
            cnt = 0
            for k in range(s + 1):
                r = R[s - k]
                if _zero(r):
                    continue
                ph, mag = t.alpha(s, s, k)
                if _zero(mag):
                    continue
                acc += t.value(ph, mag * r)
                cnt += 1
            U.append(acc)
            live.append(cnt)
        for i in range(n + 1):
            ph_i, mag_i = alpha_n[i]
            for j in range(i + 1):
                s = i - j
                if _zero(mag_i):
                    stats["skipped"] += s + 1
                    continue
                ph_j, mag_j = t.alpha(i, i, j)
                if _zero(mag_j) or live[s] == 0:
                    stats["skipped"] += s + 1
                    continue
                e_a = -2 * (2 * n - 2 * i + j)
                e_q = -2 * (2 * n * n - 2 * n - 2 * i * i + 2 * i + 2 * i * j - j * j - j)
                ph = ph_i + ph_j + t.phase_a(e_a) + t.phase_q(e_q)
                total += t.value(ph, mag_i * mag_j) * U[s]
                stats["evaluated"] += live[s]
                stats["skipped"] += s + 1 - live[s]
    return total * t.unit(_prefactor_phase(t, n, power))


# ---------------------------------------------------------------------------
# twist knots K_p
# ---------------------------------------------------------------------------

def _twist(t: PointTables, p: int, n: int, method: str, stats: dict):
    ctx = t.ctx
    pp, ppp, eps = twist_parameters(p)
    R = [t.closing_ratio(n, n - m) for m in range(n + 1)]
    alpha_cache: dict = {}

    def al(r, j):
        key = (r, j)
        if key not in alpha_cache:
            alpha_cache[key] = t.alpha(r, r, j)
        return alpha_cache[key]

    outer = []
    for i in range(n + 1):
        ph, mag = t.alpha(n, n, i)
        if eps < 0:
            ph = -ph
        outer.append((ph + _weight_phase(t, n, n - i), mag))

    if method == "direct":
        total = ctx.mpc(0)

        def descend(level, remaining, ph, mag):
            nonlocal total
            if level == pp:
                r = R[remaining]
                if _zero(mag) or _zero(r):
                    stats["skipped"] += 1
                    return
                total += t.value(ph, mag * r)
                stats["evaluated"] += 1
                return
            for j in range(remaining + 1):
                ph_j, mag_j = al(remaining, j)
                nph = ph + ph_j
                if level < pp - 1:
                    nph += _weight_phase(t, n, n - (remaining - j))
                nmag = 0 if (_zero(mag) or _zero(mag_j)) else mag * mag_j
                descend(level + 1, remaining - j, nph, nmag)

        for i in range(n + 1):
            descend(0, i, *outer[i])
    else:
        # transfer matrix over the number of remaining strands
        vec = [t.value(ph, mag) if not _zero(mag) else ctx.mpc(0) for ph, mag in outer]
        # number of summands that reach each state, and how many of them carry a zero factor
        count = [1] * (n + 1)
        zero = [1 if _zero(outer[i][1]) else 0 for i in range(n + 1)]
        for level in range(pp):
            new = [ctx.mpc(0)] * (n + 1)
            ncount = [0] * (n + 1)
            nzero = [0] * (n + 1)
            for r in range(n + 1):
                if count[r] == 0:
                    continue
                for j in range(r + 1):
                    r2 = r - j
                    ncount[r2] += count[r]
                    ph, mag = al(r, j)
                    if _zero(mag):
                        nzero[r2] += count[r]
                        continue
                    nzero[r2] += zero[r]
                    if level < pp - 1:
                        ph += _weight_phase(t, n, n - r2)
                    new[r2] += vec[r] * t.value(ph, mag)
            vec, count, zero = new, ncount, nzero
        total = ctx.mpc(0)
        for r in range(n + 1):
            if _zero(R[r]):
                stats["skipped"] += count[r]
                continue
            total += vec[r] * R[r]
            stats["evaluated"] += count[r] - zero[r]
            stats["skipped"] += zero[r]
    return total * t.unit(_prefactor_phase(t, n, ppp))


# ---------------------------------------------------------------------------
# Whitehead link
# ---------------------------------------------------------------------------

def _s_values(t: PointTables, n: int, stats: dict):
    """``S_{n,m}(a,q)`` for ``m = 0..n`` as complex values."""
    out = []
    for m in range(n + 1):
        acc = t.ctx.mpc(0)
        for i in range(m + 1):
            ph, mag = t.alpha(m, n, i)
            r = t.closing_ratio(m, i)
            if _zero(mag) or _zero(r):
                continue
            acc += t.value(-ph, mag * r)  # alpha(a^-1, q^-1) is the conjugate phase
        out.append(acc)
    return out


def _gamma(t: PointTables, i: int, j: int, k: int, l: int):
    mag = t.combine(
        [t.qint_span(i, 1), t.framed_span(i + j + k - l - 1, j + k - l + 1), t.framed_span(j + k - 2 * l, j + k - 2 * l),
         t.qint_span(i - 1 + l, l + 1)],
        [t.qint_span(i + j, j + 1), t.qint_span(i + k, k + 1), t.qint_span(i - 1, 1)],
    )
    # [i-1+l choose i-1]_{q^2} = q^{(i-1) l} * symmetric binomial
    ph = t.phase_q(-(i - 1) * l + (i - 1) * l)
    return ph, mag


def _whitehead(t: PointTables, n: int, stats: dict):
    ctx = t.ctx
    S = _s_values(t, n, stats)
    SS = [s.real**2 + s.imag**2 for s in S]  # S(a,q) S(a^-1,q^-1) = |S|^2
    total = ctx.mpc(0)
    for i in range(1, n):
        ph_a, mag_a = t.alpha(n, n, i)
        for j in range(i + 1):
            ph_g, mag_g = _gamma(t, n - i, i, i, j)
            if _zero(mag_a) or _zero(mag_g) or SS[i - j] == 0:
                stats["skipped"] += 1
                continue
            total += t.value(ph_a + ph_g, mag_a * mag_g) * SS[i - j]
            stats["evaluated"] += 1
    ph, mag = t.alpha(n, n, n)
    if _zero(mag) or SS[n] == 0:
        stats["skipped"] += 1
    else:
        total += t.value(ph, mag) * SS[n]
        stats["evaluated"] += 1
    r = t.closing_ratio(n, 0)
    if _zero(r):
        stats["skipped"] += 1
    else:
        total += t.value(0, r)
        stats["evaluated"] += 1
    return total * t.unit(_prefactor_phase(t, n, 2))


# ---------------------------------------------------------------------------
# figure-eight
# ---------------------------------------------------------------------------

def _fig8(ctx, pt: EvalPoint, stats: dict):
    mn, md, D = pt.reduced
    total = ctx.mpf(1)
    running = ctx.mpf(1)
    stats["evaluated"] += 1
    for i in range(1, pt.N):
        # factor 2 sin((M + i - 2) pi / (M + N - 2))
        k = mn + (i - 2) * md
        if k % D == 0:
            stats["skipped"] += pt.N - i
            break
        running *= 2 * ctx.sinpi(ctx.mpf(k) / D)
        total += running * running
        stats["evaluated"] += 1
    return ctx.mpc(total)


def _max_index(knot: KnotId, n: int) -> int:
    # widest bracket index touched by any family (the Whitehead gamma reaches 2n)
    return 2 * n + 4


def _evaluate_at(knot: KnotId, pt: EvalPoint, bits: int, method: str) -> EvalResult:
    ctx = mpmath.MPContext()
    ctx.prec = bits + 32  # guard bits for table construction
    n = pt.n
    stats = {"evaluated": 0, "skipped": 0}
    k = knot.canonical
    t = None
    if k.tag == "4_1":
        val = _fig8(ctx, pt, stats)
    else:
        t = PointTables(pt, ctx, _max_index(knot, n))
        if k.tag == "5_2":
            val = _clasp_twist(t, n, 1, 6, method, stats)
        elif k.tag == "6_1":
            val = _clasp_twist(t, n, -1, 2, method, stats)
        elif k.tag == "twist":
            val = _twist(t, k.p, n, method, stats)
        else:
            val = _whitehead(t, n, stats)
    biggest = float(t.max_magnitude) if t is not None else float(val.real)
    if not (ctx.isfinite(val.real) and ctx.isfinite(val.imag)):
        raise NumericFailure(f"non-finite value for {knot} at M={pt.M}, N={pt.N}", biggest)
    ctx.prec = bits
    return EvalResult(_export(+val), bits, stats["evaluated"], stats["skipped"], biggest)


def _export(x):
    # private-context numbers do not pickle; rewrap in plain mpmath types without rounding
    if hasattr(x, "_mpc_"):
        out = object.__new__(mpmath.mpc)
        out._mpc_ = x._mpc_
    else:
        out = object.__new__(mpmath.mpf)
        out._mpf_ = x._mpf_
    return out


def eval_invariant(knot: KnotId | str, pt: EvalPoint, method: str = "factored",
                   max_doublings: int = DEFAULT_MAX_DOUBLINGS) -> EvalResult:
    """Value of the colored invariant of ``knot`` with color ``N-1`` at ``pt``.

    With a fixed ``pt.precision`` the sum is evaluated once at that
    precision. Otherwise precision starts at ``max(256, 16 N)`` bits and is
    doubled until two successive results agree to ``1e-12`` relative.
    """
    if isinstance(knot, str):
        knot = parse_knot(knot)
    if method not in ("factored", "direct"):
        raise ValueError(f"unknown method {method!r}")
    if pt.precision is not None:
        return _evaluate_at(knot, pt, pt.precision, method)
    # the sine sum has only positive terms, so it starts low regardless of N
    bits = 256 if knot.tag == "4_1" else pt.default_precision()
    prev = _evaluate_at(knot, pt, bits, method)
    for _ in range(max_doublings):
        bits *= 2
        cur = _evaluate_at(knot, pt, bits, method)
        scale = max(abs(cur.value), mpmath.mpf(2) ** (-bits))
        if abs(cur.value - prev.value) / scale < AGREEMENT:
            return cur
        log.info("precision %d bits not yet stable for %s at M=%s N=%d", bits // 2, knot, pt.M, pt.N)
        prev = cur
    raise NumericFailure(
        f"no agreement after {max_doublings} doublings (last {bits} bits) for {knot} at M={pt.M}, N={pt.N}",
        prev.max_magnitude,
    )


def eval_qint(k: int, pt: EvalPoint):
    """``[k] = sin(k theta) / sin(theta)`` at the point's precision."""
    ctx = mpmath.MPContext()
    ctx.prec = pt.precision or pt.default_precision()
    mn, md, D = pt.reduced
    if (k * md) % D == 0:
        return mpmath.mpf(0)
    return _export(ctx.sinpi(ctx.mpf(k * md) / D) / ctx.sinpi(ctx.mpf(md) / D))


def framed_is_zero(k: int, pt: EvalPoint) -> bool:
    """Whether ``[k;a]`` vanishes exactly, decided on the rational data."""
    mn, md, D = pt.reduced
    return (mn + k * md) % D == 0


def eval_framed(k: int, pt: EvalPoint):
    """``[k;a] = sin((M+k) theta) / sin(theta)``; exact zero when flagged."""
    ctx = mpmath.MPContext()
    ctx.prec = pt.precision or pt.default_precision()
    mn, md, D = pt.reduced
    if framed_is_zero(k, pt):
        return mpmath.mpf(0)
    return _export(ctx.sinpi(ctx.mpf(mn + k * md) / D) / ctx.sinpi(ctx.mpf(md) / D))


def fig8_sine(pt: EvalPoint):
    """Sum over ``i`` of the squared running products ``prod 2 sin((M+t-2) pi/(M+N-2))``."""
    return eval_invariant(KnotId("4_1"), pt).value.real


def point_values(pt: EvalPoint, ctx=None):
    """``(a, q)`` as complex numbers at the point."""
    ctx = ctx or mpmath.mp
    mn, md, D = pt.reduced
    return ctx.expjpi(ctx.mpf(mn) / D), ctx.expjpi(ctx.mpf(md) / D)
