"""Volume-conjecture sequences ``x + i y = 2 pi Log(H_{M,N+1} / H_{M,N})``.

Also the ratio grid ``(M_k - 1)/(M_k + N - 2) = k/divisions`` and the
figure-eight integral ``f(x) = 4 int_{pi x}^{5 pi/6} log(2 sin t) dt``.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .invariants import FIGURE_EIGHT, FIVE_TWO, SIX_ONE, WHITEHEAD, KnotId, parse_knot
from .numeric import EvalPoint, NumericFailure, eval_invariant

TWO_PI_SQ = 2 * mpmath.pi**2


@dataclass(frozen=True)
class VolumeTarget:
    knot: KnotId
    vol: float
    cs: float


TARGETS = {
    FIVE_TWO: VolumeTarget(FIVE_TWO, 2.82812, -3.02413),
    SIX_ONE: VolumeTarget(SIX_ONE, 3.16396, -6.79074),
    WHITEHEAD: VolumeTarget(WHITEHEAD, 3.66386, 2.46742),
}


@dataclass(frozen=True)
class AsymptoticsSample:
    M: Fraction
    N: int
    x: mpmath.mpf
    y: mpmath.mpf
    precision: int

    def distance(self, target: VolumeTarget) -> float:
        return distance_to_target(self.x, self.y, target)


def nearest_branch(y, center) -> mpmath.mpf:
    """Representative of ``y`` modulo ``2 pi^2`` closest to ``center``."""
    y = mpmath.mpf(y)
    k = mpmath.nint((mpmath.mpf(center) - y) / TWO_PI_SQ)
    return y + k * TWO_PI_SQ


def distance_to_target(x, y, target: VolumeTarget) -> float:
    y = nearest_branch(y, target.cs)
    return float(mpmath.hypot(mpmath.mpf(x) - target.vol, y - target.cs))


def _check_knot(knot) -> KnotId:
    return parse_knot(knot) if isinstance(knot, str) else knot


def _h(args):
    knot, M, N, precision = args
    res = eval_invariant(knot, EvalPoint.of(M, N, precision))
    if res.value == 0:
        raise NumericFailure(f"H vanishes for {knot} at M={M}, N={N}", res.max_magnitude)
    return res


def _xy(h0, h1, M, N) -> AsymptoticsSample:
    z = 2 * mpmath.pi * mpmath.log(mpmath.mpc(h1.value) / h0.value)
    return AsymptoticsSample(Fraction(M), N, z.real, z.imag, min(h0.precision_used, h1.precision_used))


def xy_pair(knot, M, N: int, precision: int | None = None) -> AsymptoticsSample:
    """``(x, y)`` with both H values evaluated at their own roots of unity."""
    knot = _check_knot(knot)
    if N < 2:
        raise ValueError("N must be at least 2")
    M = Fraction(M)
    return _xy(_h((knot, M, N, precision)), _h((knot, M, N + 1, precision)), M, N)


def _run(tasks, threads: int):
    if threads <= 1 or len(tasks) <= 1:
        return [_h(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(_h, tasks))


def sequence(knot, M, N_from: int, N_to: int, N_step: int = 1, precision: int | None = None,
             threads: int = 1) -> list[AsymptoticsSample]:
    """Samples for ``N = N_from, N_from + N_step, ... <= N_to`` in increasing order."""
    knot = _check_knot(knot)
    if N_step < 1:
        raise ValueError("N_step must be at least 1")
    if N_from > N_to:
        return []
    if N_from < 2:
        raise ValueError("N must be at least 2")
    M = Fraction(M)
    Ns = list(range(N_from, N_to + 1, N_step))
    needed = sorted(set(Ns) | {N + 1 for N in Ns})
    values = dict(zip(needed, _run([(knot, M, N, precision) for N in needed], threads)))
    return [_xy(values[N], values[N + 1], M, N) for N in Ns]


def m_grid(N: int, k: int, divisions: int = 12) -> Fraction:
    """``M_k`` with ``(M_k - 1)/(M_k + N - 2) = k/divisions``."""
    if not 1 <= k < divisions:
        raise ValueError(f"need 1 <= k < divisions, got k={k}, divisions={divisions}")
    r = Fraction(k, divisions)
    return (1 + r * (N - 2)) / (1 - r)


def theta(M, N: int):
    M = Fraction(M)
    if M + N - 2 <= 0:
        raise ValueError("need M + N - 2 > 0")
    r = (M - 1) / (M + N - 2)
    return mpmath.pi * r.numerator / r.denominator


def integral_analogue(knot, N: int, precision: int | None = None, divisions: int = 12,
                      threads: int = 1) -> list[tuple[Fraction, mpmath.mpf, Fraction]]:
    """``(k/divisions, x_{M_k,N}, M_k)`` for ``k = 1 .. divisions-1``."""
    knot = _check_knot(knot)
    Ms = [m_grid(N, k, divisions) for k in range(1, divisions)]
    tasks = [(knot, M, NN, precision) for M in Ms for NN in (N, N + 1)]
    hs = _run(tasks, threads)
    out = []
    for k, M in enumerate(Ms, start=1):
        s = _xy(hs[2 * (k - 1)], hs[2 * (k - 1) + 1], M, N)
        out.append((Fraction(k, divisions), s.x, M))
    return out


def f_integral(x, precision: int = 64) -> mpmath.mpf:
    """``4 int_{pi x}^{5 pi/6} log(2 sin t) dt`` for ``0 <= x <= 5/6``.

    The logarithmic singularity at ``t = 0`` is split off as ``log t``,
    which integrates in closed form; the smooth remainder
    ``log(2 sin t / t)`` goes to Gauss-Legendre quadrature.
    """
    ctx = mpmath.MPContext()
    ctx.prec = precision + 20
    x = Fraction(x) if not isinstance(x, float) else Fraction(x).limit_denominator(10**15)
    if not 0 <= x <= Fraction(5, 6):
        raise ValueError("x must lie in [0, 5/6]")
    if x == Fraction(5, 6):
        return mpmath.mpf(0)
    lo = ctx.pi * x.numerator / x.denominator
    hi = 5 * ctx.pi / 6

    def smooth(t):
        return ctx.log(2 * ctx.sinc(t))  # sinc(t) = sin(t)/t, analytic at 0

    def log_part(t):
        return t * ctx.log(t) - t if t > 0 else ctx.mpf(0)

    # split at pi/2 so each Gauss-Legendre panel sees a gently varying integrand
    mid = ctx.pi / 2
    pts = [lo, hi] if lo >= mid else [lo, mid, hi]
    smooth_int = ctx.quad(smooth, pts, method="gauss-legendre")
    val = 4 * (smooth_int + log_part(hi) - log_part(lo))
    ctx.prec = precision
    return mpmath.mpf(+val)


def figure_eight_volume(precision: int = 64) -> mpmath.mpf:
    return f_integral(0, precision)


TARGETS[FIGURE_EIGHT] = VolumeTarget(FIGURE_EIGHT, float(figure_eight_volume()), 0.0)
