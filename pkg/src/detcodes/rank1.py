"""Structure of rank-1 matrices and of linear spaces of matrices:
outer-product factorization, the rank-1 sum dichotomy, classification of
constant-rank-1 spaces, and exhaustive extremal rank-1 counting.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import matq
from ._kernels import gf_matmul_batch, rank_batch
from .counting import rank1_bound
from .errors import BudgetExceeded, EquationViolated, NotRankOne

ELEMENT_BUDGET = 10_000_000


def factor(field, M) -> tuple[np.ndarray, np.ndarray]:
    """Canonical outer-product factorization M = u^T v of a rank-1 matrix.

    u is scaled so its first nonzero entry is 1, which pins down the
    otherwise scalar-ambiguous pair uniquely.
    """
    M = matq.as_matrix(M, field.q)
    nz = np.argwhere(M != 0)
    if len(nz) == 0:
        raise NotRankOne("zero matrix has no rank-1 factorization")
    i0, j0 = (int(x) for x in nz[0])
    v = M[i0].copy()
    pivinv = field.inv(int(M[i0, j0]))
    u = np.array([field.mul(int(M[i, j0]), pivinv) for i in range(M.shape[0])], dtype=np.int64)
    if not (matq.outer(field, u, v) == M).all():
        raise NotRankOne("matrix is not an outer product of two vectors")
    return u, v


def rank1_sum_check(field, u, a, x, v, b, y) -> bool:
    """Dichotomy for a rank-1 sum of two rank-1 matrices.

    Requires u^T v + a^T b = x^T y with all six vectors nonzero; returns
    True iff span(u, a, x) or span(v, b, y) is one-dimensional.  The
    dichotomy is a theorem: exhaustive sweeps must never see False.
    """
    vecs = [np.asarray(w, dtype=np.int64) for w in (u, a, x, v, b, y)]
    u, a, x, v, b, y = vecs
    if any(not w.any() for w in vecs):
        raise EquationViolated("all six vectors must be nonzero")
    lhs = matq.outer(field, u, v)
    t = field.tables
    lhs = t.add[lhs, matq.outer(field, a, b)]
    if not (lhs == matq.outer(field, x, y)).all():
        raise EquationViolated("u^T v + a^T b != x^T y")
    left = matq.rank(field, np.stack([u, a, x]))
    right = matq.rank(field, np.stack([v, b, y]))
    return left == 1 or right == 1


@dataclass(frozen=True)
class Rank1SpaceClass:
    """Classification of a linear space of matrices.

    ``row`` type: a fixed row direction u with E = {u^T v : v in V};
    ``col`` type: a fixed column direction v with E = {u^T v : u in U}.
    One-dimensional spaces satisfy both; they are reported as row type.
    """

    tag: str  # "row" | "col" | "not-constant-rank1"
    vector: np.ndarray | None = None
    subspace: np.ndarray | None = None  # RREF basis of V (row) or U (col)


def count_rank1(field, basis, l: int, m: int) -> int:
    """Exact number of rank-1 elements of the span of the given basis."""
    basis = matq.as_matrix(basis, field.q)
    if field.q ** basis.shape[0] > ELEMENT_BUDGET:
        raise BudgetExceeded(f"q^{basis.shape[0]} elements exceed the budget")
    elems = matq.span_vectors(field, basis)
    ranks = rank_batch(field, elems.reshape(len(elems), l, m))
    return int(np.count_nonzero(ranks == 1))


def classify_space(field, basis, l: int, m: int) -> Rank1SpaceClass:
    basis = matq.as_matrix(basis, field.q)
    r = basis.shape[0]
    if r == 0:
        return Rank1SpaceClass(
            tag="row",
            vector=np.zeros(l, dtype=np.int64),
            subspace=np.zeros((0, m), dtype=np.int64),
        )
    if count_rank1(field, basis, l, m) != field.q**r - 1:
        return Rank1SpaceClass(tag="not-constant-rank1")
    assert r <= m, "constant-rank-1 spaces cannot exceed dimension m"
    factors = [factor(field, row.reshape(l, m)) for row in basis]
    us = np.stack([u for u, _ in factors])
    vs = np.stack([v for _, v in factors])
    if matq.rank(field, us) == 1:
        # canonical u is shared exactly (first nonzero entry scaled to 1)
        vbasis, _ = matq.rref(field, vs)
        return Rank1SpaceClass(tag="row", vector=us[0], subspace=vbasis)
    assert matq.rank(field, vs) == 1
    # rescale so every row uses one common v, then collect the u's
    v0 = vs[0]
    j0 = int(np.flatnonzero(v0)[0])
    us_scaled = []
    for u, v in factors:
        lam = field.mul(int(v[j0]), field.inv(int(v0[j0])))
        us_scaled.append([field.mul(int(x), lam) for x in u])
    ubasis, _ = matq.rref(field, np.array(us_scaled, dtype=np.int64))
    return Rank1SpaceClass(tag="col", vector=v0, subspace=ubasis)


def max_rank1_exhaustive(field, l: int, m: int, r: int) -> tuple[int, np.ndarray]:
    """Maximum rank-1 count over all r-dimensional subspaces of the l x m
    matrix space, with the first (canonical-order) maximizing witness.
    """
    q = field.q
    coeffs = matq.coeff_vectors(field, r)
    best = -1
    witness = None
    for batch in matq.subspace_batches(field, l * m, r):
        elems = gf_matmul_batch(field, coeffs, batch)
        ranks = rank_batch(field, elems.reshape(-1, l, m)).reshape(len(batch), q**r)
        counts = (ranks == 1).sum(axis=1)
        i = int(counts.argmax())
        if counts[i] > best:
            best = int(counts[i])
            witness = batch[i].copy()
    bound = rank1_bound(r, l, m, q)
    assert best <= bound.max_rank1, "extremal count exceeds the proven bound"
    if not bound.from_coset_argument:
        assert best == q**r - 1, "for r <= m the constant-rank-1 maximum is exact"
    return best, witness
