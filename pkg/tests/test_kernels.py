"""The two kernel routes (table-driven jit path and the prime-field blowup
fallback) must agree with each other and with scalar field arithmetic."""

import os
import subprocess
import sys

import numpy as np
import pytest

from detcodes import _kernels, gf
from conftest import scalar_dot, scalar_rank

FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2), (2, 3)]


def _random_mats(rng, q, count, l, m):
    return rng.integers(0, q, size=(count, l, m), dtype=np.int64)


@pytest.mark.parametrize("p,e", FIELDS)
def test_rank_fallback_matches_scalar_oracle(p, e):
    field = gf.make_field(p, e)
    rng = np.random.default_rng(20240800 + p * 10 + e)
    for l, m in [(1, 1), (2, 2), (2, 3), (3, 3), (3, 5)]:
        mats = _random_mats(rng, field.q, 40, l, m)
        got = _kernels._rank_batch_np(field, mats)
        expect = np.array([scalar_rank(field, M) for M in mats])
        assert (got == expect).all()


@pytest.mark.parametrize("p,e", FIELDS)
def test_public_rank_matches_fallback(p, e):
    field = gf.make_field(p, e)
    rng = np.random.default_rng(p * 100 + e)
    mats = _random_mats(rng, field.q, 64, 3, 4)
    assert (
        _kernels.rank_batch(field, mats) == _kernels._rank_batch_np(field, mats)
    ).all()


@pytest.mark.parametrize("p,e", FIELDS)
def test_matmul_fallback_matches_scalar_oracle(p, e):
    field = gf.make_field(p, e)
    rng = np.random.default_rng(7 * p + e)
    A = rng.integers(0, field.q, size=(3, 4), dtype=np.int64)
    B = rng.integers(0, field.q, size=(4, 5), dtype=np.int64)
    got = _kernels._matmul_np(field, A, B)
    for i in range(3):
        for j in range(5):
            assert got[i, j] == scalar_dot(field, A[i], B[:, j])


@pytest.mark.parametrize("p,e", FIELDS)
def test_public_matmul_matches_fallback(p, e):
    field = gf.make_field(p, e)
    rng = np.random.default_rng(13 * p + e)
    A = rng.integers(0, field.q, size=(4, 6), dtype=np.int64)
    B = rng.integers(0, field.q, size=(6, 3), dtype=np.int64)
    assert (
        _kernels.gf_matmul(field, A, B) == _kernels._matmul_np(field, A, B)
    ).all()


def test_matmul_batch_matches_per_item(f3):
    rng = np.random.default_rng(99)
    A = rng.integers(0, 3, size=(5, 4), dtype=np.int64)
    B = rng.integers(0, 3, size=(7, 4, 6), dtype=np.int64)
    got = _kernels.gf_matmul_batch(f3, A, B)
    assert got.shape == (7, 5, 6)
    for k in range(7):
        assert (got[k] == _kernels.gf_matmul(f3, A, B[k])).all()


def test_rank_batch_handles_chunking(f2):
    # More matrices than one fallback chunk still yields correct ranks.
    n = _kernels._RANK_CHUNK + 17
    rng = np.random.default_rng(5)
    mats = rng.integers(0, 2, size=(n, 2, 2), dtype=np.int64)
    got = _kernels.rank_batch(f2, mats)
    dets = (mats[:, 0, 0] & mats[:, 1, 1]) ^ (mats[:, 0, 1] & mats[:, 1, 0])
    anyent = mats.reshape(n, 4).any(axis=1)
    expect = np.where(dets == 1, 2, np.where(anyent, 1, 0))
    assert (got == expect).all()


def test_env_flag_selects_fallback():
    # A fresh interpreter with the flag set must report the fallback path
    # and still produce correct ranks.
    code = (
        "import numpy as np\n"
        "from detcodes import _kernels, gf\n"
        "assert _kernels.USE_NUMBA is False\n"
        "f = gf.make_field(2, 2)\n"
        "mats = np.array([[[1, 0], [0, 1]], [[1, 2], [2, 0]], [[0, 0], [0, 0]]])\n"
        "print(_kernels.rank_batch(f, mats).tolist())\n"
    )
    env = dict(os.environ, DETCODES_NO_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", code], env=env, capture_output=True, text=True
    )
    assert out.returncode == 0, out.stderr
    assert out.stdout.strip().endswith("[2, 2, 0]")
