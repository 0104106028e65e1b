"""Shared test helpers: tiny independent oracles built only on the scalar
field operations, so they share no code path with the batch kernels or
the closed forms they are used to check."""

import numpy as np
import pytest

from detcodes import make_field


def scalar_rank(field, M):
    """Gaussian elimination using only Field scalar ops."""
    M = [[int(x) for x in row] for row in np.atleast_2d(M)]
    nrows, ncols = len(M), len(M[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = field.inv(M[r][c])
        for i in range(r + 1, nrows):
            f = field.mul(M[i][c], inv)
            if f:
                for j in range(ncols):
                    M[i][j] = field.sub(M[i][j], field.mul(f, M[r][j]))
        r += 1
    return r


def scalar_dot(field, u, v):
    acc = 0
    for a, b in zip(u, v):
        acc = field.add(acc, field.mul(int(a), int(b)))
    return acc


def naive_codeword(field, F, points):
    """Evaluate the form with coefficient matrix F point by point."""
    F = np.asarray(F)
    return [scalar_dot(field, F.flatten(), P.flatten()) for P in points]


@pytest.fixture(scope="session")
def f2():
    return make_field(2)


@pytest.fixture(scope="session")
def f3():
    return make_field(3)


@pytest.fixture(scope="session")
def f4():
    return make_field(2, 2)
