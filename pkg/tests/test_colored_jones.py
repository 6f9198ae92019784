"""Independent colored check: U_q(sl2) R-matrix traces of braid closures.

The Jones specialization of H_n is a = q^-2 with q inverted; the braid words
below are closures of the same knots, with chirality fixed so the values match.
"""
import cmath
from functools import reduce

import numpy as np
import pytest

from colored_homfly.invariants import FIVE_TWO, SIX_ONE, WHITEHEAD, Twist, colored_homfly

BRAIDS = {
    FIVE_TWO: ([1, 1, 1, 2, -1, 2], 3),
    SIX_ONE: ([1, 1, 2, -1, -3, 2, -3], 4),
    Twist(5): ([1, 1, 1, 2, -1, 2, 3, -2, 3], 4),
    WHITEHEAD: ([1, 1, -2, 1, -2], 3),
}


def qint(k, q):
    return (q**k - q**-k) / (q - 1 / q)


def irrep(d, q):
    K = np.diag([q ** (d - 1 - 2 * j) for j in range(d)])
    E = np.zeros((d, d), complex)
    F = np.zeros((d, d), complex)
    for j in range(d):
        if j > 0:
            E[j - 1, j] = qint(j, q)
        if j < d - 1:
            F[j + 1, j] = qint(d - 1 - j, q)
    return K, E, F


def braiding(d, q):
    K, E, F = irrep(d, q)
    weights = [d - 1 - 2 * j for j in range(d)]
    cartan = np.diag([q ** (wi * wj / 2) for wi in weights for wj in weights])
    series = np.zeros((d * d, d * d), complex)
    Ek, Fk, fact = np.eye(d), np.eye(d), 1
    for k in range(d):
        if k:
            Ek, Fk, fact = Ek @ E, Fk @ F, fact * qint(k, q)
        series += q ** (k * (k - 1) / 2) * (q - 1 / q) ** k / fact * np.kron(Ek, Fk)
    swap = np.zeros((d * d, d * d))
    for i in range(d):
        for j in range(d):
            swap[j * d + i, i * d + j] = 1
    return swap @ cartan @ series, K


def colored_jones(word, strands, d, q):
    R, K = braiding(d, q)
    Rinv = np.linalg.inv(R)
    # the framing change of one positive kink is a scalar on the irrep
    twist = np.einsum("iaja->ij", (np.kron(np.eye(d), K) @ R).reshape(d, d, d, d))[0, 0]
    rho = np.eye(d**strands, dtype=complex)
    for g in word:
        i = abs(g) - 1
        rho = rho @ reduce(np.kron, [np.eye(d**i), R if g > 0 else Rinv, np.eye(d ** (strands - i - 2))])
    writhe = sum(1 if g > 0 else -1 for g in word)
    mu = reduce(np.kron, [K] * strands)
    return twist**-writhe * np.trace(mu @ rho) / qint(d, q)


def test_braiding_satisfies_braid_relation():
    R, _ = braiding(3, cmath.exp(0.41j))
    one = np.eye(3)
    a, b = np.kron(R, one), np.kron(one, R)
    assert np.abs(a @ b @ a - b @ a @ b).max() < 1e-10


@pytest.mark.parametrize("knot", list(BRAIDS))
@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("q", [cmath.exp(0.37j), 0.83 + 0.21j])
def test_jones_specialization(knot, n, q):
    word, strands = BRAIDS[knot]
    expected = colored_jones(word, strands, n + 1, q)
    got = complex(colored_homfly(knot, n)(q**-2, q**-1))
    assert abs(got - expected) < 1e-8 * max(1, abs(expected))
