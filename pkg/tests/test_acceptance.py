"""Acceptance checks, one printed PASS/FAIL line per criterion.

Run under pytest (``pytest tests/test_acceptance.py -s``) or directly as a
script. Tolerances and time budgets are pinned below.
"""
from __future__ import annotations

import contextlib
import io
import math
import sys
import time
from fractions import Fraction
from pathlib import Path

import mpmath
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from colored_homfly import asymptotics  # noqa: E402
from colored_homfly.cli import main as cli_main  # noqa: E402
from colored_homfly.invariants import (  # noqa: E402
    FIVE_TWO,
    SIX_ONE,
    WHITEHEAD,
    Twist,
    clear_denominator,
    colored_homfly,
    h_52,
    h_61,
    h_twist,
    h_whitehead,
    reduce_invariant,
)
from colored_homfly.numeric import EvalPoint, eval_invariant, fig8_sine, point_values  # noqa: E402
from colored_homfly.oracle import homfly_skein, load_fixture  # noqa: E402

# pinned tolerances and budgets (seconds)
ORACLE_BUDGET = 60
TWIST_BUDGET = 120
RECURRENCE_BUDGET = 120
CROSS_PATH_REL = mpmath.mpf(10) ** -20
CROSS_PATH_BITS = 128
CROSS_PATH_BUDGET = 60
FIG8_VOL = 2.029883
FIG8_TOL = 0.05
FIG8_N = 2000
FIG8_BUDGET = 10
INTEGRAL_TOL = 1e-10
INTEGRAL_BUDGET = 10
SEQ_RANGE = (80, 175, 5)
SEQ_BUDGET = 30 * 60
SEQ_TOL = {FIVE_TWO: 0.15, SIX_ONE: 0.2, WHITEHEAD: 0.2}
GRID_NS = (75, 125)
GRID_TOL = 0.2

_sequences: dict = {}


def report(k: int, ok: bool, detail: str) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {k}: {detail}", flush=True)


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


# -- criterion implementations: each returns (ok, detail) ------------------------------

def criterion_1():
    with Timer() as t:
        pairs = [
            ("5_2", reduce_invariant(h_52(1))),
            ("6_1", reduce_invariant(h_61(1))),
            ("twist_5", reduce_invariant(h_twist(5, 1))),
        ]
        bad = [name for name, v in pairs if homfly_skein(load_fixture(name)) != v]
        # the link keeps a clearing factor; compare as (numerator, factor) pairs
        if clear_denominator(homfly_skein(load_fixture("wh"))) != clear_denominator(h_whitehead(1)):
            bad.append("wh")
    ok = not bad and t.seconds < ORACLE_BUDGET
    return ok, f"oracle equality at color 1 for 5_2, 6_1, twist_5, wh; mismatches={bad or 'none'}; {t.seconds:.1f}s"


def criterion_2():
    with Timer() as t:
        bad = [(p, n) for n in range(1, 5) for p, h in ((3, h_52), (4, h_61)) if h_twist(p, n) != h(n)]
    ok = not bad and t.seconds < TWIST_BUDGET
    return ok, f"h_twist(3|4, n) equals h_52|h_61 for n=1..4; mismatches={bad or 'none'}; {t.seconds:.1f}s"


def criterion_3():
    import test_coefficients as tc
    import test_laurent as tl

    checks = [
        ("beta recurrence", tc.test_beta_recurrence),
        ("c recurrence", tc.test_c_recurrence),
        ("gamma assembly", tc.test_gamma_assembly),
        *[(f"pascal base {b}", lambda b=b: tl.test_gauss_binomial_pascal(b)) for b in (1, 2, -2)],
        *[(f"S branches n={n}", lambda n=n: tc.test_s_branches_agree_on_diagonal(n)) for n in range(7)],
    ]
    failed = []
    with Timer() as t:
        for name, fn in checks:
            try:
                fn()
            except AssertionError:
                failed.append(name)
    ok = not failed and t.seconds < RECURRENCE_BUDGET
    return ok, f"{len(checks)} recurrence suites, failed={failed or 'none'}; {t.seconds:.1f}s"


def criterion_4():
    worst = mpmath.mpf(0)
    with Timer() as t:
        for knot in (FIVE_TWO, SIX_ONE, Twist(5), Twist(6), WHITEHEAD):
            for n in (1, 2, 3):
                num, factor = clear_denominator(colored_homfly(knot, n))
                pt = EvalPoint.of(2, n + 1, CROSS_PATH_BITS)
                with mpmath.workprec(2 * CROSS_PATH_BITS):
                    a, q = point_values(pt)
                    exact = num(a, q) / factor(a, q)
                    for method in ("factored", "direct"):
                        got = eval_invariant(knot, pt, method=method).value
                        worst = max(worst, abs(got - exact) / abs(exact))
    ok = worst < CROSS_PATH_REL and t.seconds < CROSS_PATH_BUDGET
    return ok, f"worst relative gap {mpmath.nstr(worst, 3)} (< 1e-20) at M=2, N=n+1, n<=3; {t.seconds:.1f}s"


def criterion_5():
    v = fig8_sine(EvalPoint.of(2, 2))
    return v == 5, f"fig8_sine(2, 2) = {mpmath.nstr(v, 20)}"


def criterion_6():
    with Timer() as t:
        x = 2 * mpmath.pi * mpmath.log(fig8_sine(EvalPoint.of(2, FIG8_N))) / FIG8_N
    gap = abs(float(x) - FIG8_VOL)
    ok = gap < FIG8_TOL and t.seconds < FIG8_BUDGET
    return ok, f"2 pi log(fig8_sine(2,{FIG8_N}))/{FIG8_N} = {float(x):.6f}, gap {gap:.4f} (< {FIG8_TOL}); {t.seconds:.2f}s"


def halving_quadrature(tol: float = 1e-13) -> float:
    """f(0) by composite Simpson in plain floats, halving the step until stable.

    The substitution t = c s^6 tames the log singularity at t = 0.
    """
    c = 5 * math.pi / 6

    def g(s):
        return 0.0 if s == 0 else 4 * 6 * c * s**5 * math.log(2 * math.sin(c * s**6))

    n, prev = 16, None
    while True:
        h = 1 / n
        total = g(0) + g(1) + sum((4 if i % 2 else 2) * g(i * h) for i in range(1, n))
        cur = total * h / 3
        if prev is not None and abs(cur - prev) < tol:
            return cur
        prev, n = cur, 2 * n


def criterion_7():
    with Timer() as t:
        f0 = asymptotics.f_integral(0)
        ref = halving_quadrature()
        end = asymptotics.f_integral(Fraction(5, 6))
    gap = abs(float(f0) - ref)
    ok = gap < INTEGRAL_TOL and end == 0 and t.seconds < INTEGRAL_BUDGET
    return ok, f"f(0) = {mpmath.nstr(f0, 15)}, halving oracle {ref:.15f}, gap {gap:.1e}; f(5/6) = {end}; {t.seconds:.2f}s"


def _sequence(knot):
    if knot not in _sequences:
        with Timer() as t:
            rows = asymptotics.sequence(knot, 2, *SEQ_RANGE)
        _sequences[knot] = (rows, t.seconds)
    return _sequences[knot]


def _convergence(knot):
    rows, seconds = _sequence(knot)
    target = asymptotics.TARGETS[knot]
    first, last = rows[0].distance(target), rows[-1].distance(target)
    tol = SEQ_TOL[knot]
    ok = len(rows) == 20 and last < first and last < tol and seconds < SEQ_BUDGET
    return ok, (f"{knot} M=2 N=80..175: distance {first:.4f} -> {last:.4f} (< {tol}), "
                f"final (x, y) = ({float(rows[-1].x):.5f}, {float(asymptotics.nearest_branch(rows[-1].y, target.cs)):.5f}); {seconds:.0f}s")


def criterion_8():
    return _convergence(FIVE_TWO)


def criterion_9():
    return _convergence(SIX_ONE)


def criterion_10():
    return _convergence(WHITEHEAD)


def criterion_11():
    with Timer() as t:
        grids = [asymptotics.integral_analogue(SIX_ONE, N) for N in GRID_NS]
    gaps = [abs(float(a[1] - b[1])) for a, b in zip(*grids)]
    ok = len(gaps) == 11 and max(gaps) < GRID_TOL
    return ok, f"6_1 grids N={GRID_NS[0]} vs {GRID_NS[1]}: max gap {max(gaps):.4f} (< {GRID_TOL}) over k=1..11; {t.seconds:.0f}s"


def _cli(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli_main(argv)
    return code, buf.getvalue()


def criterion_12():
    runs = [
        ["asympt", "--knot", "5_2", "--M", "2", "--N-range", "80:100:5"],
        ["asympt", "--knot", "wh", "--M", "13/10", "--N-range", "40:60:10", "--format", "json"],
        ["grid", "--knot", "6_1", "--N", "30"],
        ["integral", "--x-range", "0:5/6:20"],
    ]
    same = []
    for argv in runs:
        one = _cli(argv + ["--threads", "1"])
        two = _cli(argv + ["--threads", "2"])
        same.append(one == two and one[0] == 0)
    return all(same), f"{sum(same)}/{len(runs)} CLI runs byte-identical between --threads 1 and 2"


CRITERIA = {k: globals()[f"criterion_{k}"] for k in range(1, 13)}
SLOW = {8, 9, 10, 11}


@pytest.mark.parametrize("k", [pytest.param(k, marks=pytest.mark.slow) if k in SLOW else k for k in CRITERIA])
def test_criterion(k, capsys):
    ok, detail = CRITERIA[k]()
    with capsys.disabled():
        print()
        report(k, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    results = []
    for k, fn in CRITERIA.items():
        ok, detail = fn()
        report(k, ok, detail)
        results.append(ok)
    sys.exit(0 if all(results) else 1)
