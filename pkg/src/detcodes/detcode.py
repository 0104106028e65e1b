"""Evaluation codes on rank-bounded matrix varieties, plus brute-force
oracles: codeword weights, weight enumerators, subcode support weights,
generalized Hamming weights, and subcode support-weight spectra.

A linear form f = sum f_ij X_ij is identified with its coefficient
matrix F throughout; the matrix space doubles as the form space.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import matq
from ._kernels import gf_matmul, gf_matmul_batch, rank_batch
from .counting import _exact_div
from .errors import BadParameters, BudgetExceeded, ShapeMismatch

NAIVE_COST_BUDGET = 200_000_000  # forms x domain points for the naive path


# eq=False: domains are cached and compared by identity (ndarray field)
@dataclass(frozen=True, eq=False)
class EvaluationDomain:
    field: object
    l: int
    m: int
    t: int
    mode: str
    points: np.ndarray  # (n, l, m), canonical order

    def __len__(self) -> int:
        return len(self.points)


@lru_cache(maxsize=64)
def make_domain(field, l: int, m: int, t: int, mode: str) -> EvaluationDomain:
    pts = matq.enumerate_matrices(field, l, m, t, mode)
    pts.setflags(write=False)
    return EvaluationDomain(field=field, l=l, m=m, t=t, mode=mode, points=pts)


def evaluate(dom: EvaluationDomain, F) -> np.ndarray:
    """Codeword of the linear form with coefficient matrix F."""
    F = matq.as_matrix(F, dom.field.q)
    if F.shape != (dom.l, dom.m):
        raise ShapeMismatch(f"form shape {F.shape} != domain shape {(dom.l, dom.m)}")
    flat_pts = dom.points.reshape(len(dom), dom.l * dom.m)
    return gf_matmul(dom.field, F.reshape(1, -1), flat_pts.T)[0]


def generator_matrix(dom: EvaluationDomain) -> np.ndarray:
    """(l*m) x n matrix whose row (i, j) evaluates X_ij on the domain."""
    return dom.points.reshape(len(dom), dom.l * dom.m).T.copy()


@lru_cache(maxsize=64)
def weight_table(dom: EvaluationDomain) -> tuple[int, ...]:
    """w_r = #{M in the domain : tau_r(M) != 0} for r = 0..l.

    By the partial-trace reduction these are all the codeword weights.
    """
    add_t = dom.field.tables.add
    acc = np.zeros(len(dom), dtype=np.int64)
    out = [0]
    for r in range(1, dom.l + 1):
        acc = add_t[acc, dom.points[:, r - 1, r - 1]]
        out.append(int(np.count_nonzero(acc)))
    return tuple(out)


def weight_of_form(dom: EvaluationDomain, F) -> int:
    """Hamming weight of the codeword of F, via rank(F) only."""
    F = matq.as_matrix(F, dom.field.q)
    return weight_table(dom)[matq.rank(dom.field, F)]


@dataclass(frozen=True)
class SpectrumReport:
    mode: str
    pairs: tuple[tuple[int, int], ...]  # (weight, codeword count), weight-sorted
    total: int

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)

    def min_distance(self) -> int:
        return min(w for w, _ in self.pairs if w > 0)


def _spectrum_from(mode, weight_counts: dict[int, int]) -> SpectrumReport:
    pairs = tuple(sorted((w, c) for w, c in weight_counts.items() if c))
    return SpectrumReport(mode=mode, pairs=pairs, total=sum(c for _, c in pairs))


def brute_weight_enumerator(field, l, m, t, mode) -> SpectrumReport:
    """Weight enumerator by exhaustive computation, grouped by form rank.

    Forms of equal coefficient-matrix rank share a weight, so one domain
    scan per rank class suffices; the per-rank codeword counts come from
    an exhaustive rank histogram of the full matrix space.
    """
    dom = make_domain(field, l, m, t, mode)
    wt = weight_table(dom)
    _, ranks = matq._space_ranks(field, l, m)
    hist = np.bincount(ranks, minlength=l + 1)
    counts: Counter[int] = Counter()
    for r in range(l + 1):
        counts[wt[r]] += int(hist[r])
    return _spectrum_from(mode, counts)


def naive_weight_enumerator(field, l, m, t, mode, chunk: int = 4096) -> SpectrumReport:
    """Fully naive oracle: evaluate every form over the whole domain."""
    dom = make_domain(field, l, m, t, mode)
    nforms = field.q ** (l * m)
    if nforms * len(dom) > NAIVE_COST_BUDGET:
        raise BudgetExceeded("naive enumeration cost exceeds the budget")
    forms = matq.all_matrices(field, l, m).reshape(nforms, l * m)
    gen = generator_matrix(dom)
    counts: Counter[int] = Counter()
    for lo in range(0, nforms, chunk):
        words = gf_matmul(field, forms[lo : lo + chunk], gen)
        for w in np.count_nonzero(words, axis=1):
            counts[int(w)] += 1
    return _spectrum_from(mode, counts)


def support_weight(dom: EvaluationDomain, basis, method: str = "both") -> int:
    """Support weight of the subcode spanned by the given forms.

    ``average`` uses the rank-determined weights of all q^r elements;
    ``union`` counts coordinates hit by the basis codewords; ``both``
    computes the two independently and asserts agreement.
    """
    basis = matq.as_matrix(basis, dom.field.q)
    r, nm = basis.shape
    if nm != dom.l * dom.m:
        raise ShapeMismatch("basis must live in the form space of the domain")
    if r == 0:
        raise BadParameters("support weight of the zero subcode is undefined here")
    q = dom.field.q
    results = {}
    if method in ("average", "both"):
        elems = matq.span_vectors(dom.field, basis)
        ranks = rank_batch(dom.field, elems.reshape(len(elems), dom.l, dom.m))
        wt = weight_table(dom)
        total = sum(wt[int(rk)] for rk in ranks)
        results["average"] = _exact_div(total, q**r - q ** (r - 1))
    if method in ("union", "both"):
        words = gf_matmul(dom.field, basis, generator_matrix(dom))
        results["union"] = int(np.count_nonzero(words.any(axis=0)))
    if method == "both":
        assert results["average"] == results["union"], (
            "support-weight routes disagree",
            results,
        )
    return results["average" if method != "union" else "union"]


def _subspace_supports(dom: EvaluationDomain, batch: np.ndarray) -> np.ndarray:
    """Support weights of a stack of subcode bases, via rank grouping."""
    S, r, nm = batch.shape
    q = dom.field.q
    coeffs = matq.coeff_vectors(dom.field, r)
    elems = gf_matmul_batch(dom.field, coeffs, batch)  # (S, q^r, nm)
    ranks = rank_batch(dom.field, elems.reshape(S * q**r, dom.l, dom.m))
    wt = np.array(weight_table(dom), dtype=np.int64)
    sums = wt[ranks].reshape(S, q**r).sum(axis=1)
    denom = q**r - q ** (r - 1)
    rem = sums % denom
    if rem.any():
        raise AssertionError("support-weight sum not divisible; implementation bug")
    return sums // denom


def brute_ghw(field, l, m, t, mode, r, prune: bool = True) -> int:
    """r-th generalized Hamming weight by exhaustive subcode search."""
    from .formulas import griesmer_wei  # local import to avoid a cycle

    if not 1 <= r <= l * m:
        raise BadParameters(f"subcode dimension r={r} not in [1, {l * m}]")
    dom = make_domain(field, l, m, t, mode)
    wt = weight_table(dom)
    d1 = min(wt[1:])
    floor = griesmer_wei(d1, r, field.q)
    best = None
    for batch in matq.subspace_batches(field, l * m, r):
        supports = _subspace_supports(dom, batch)
        lo = int(supports.min())
        if best is None or lo < best:
            best = lo
        if prune and best == floor:
            return best
    return best


def subcode_spectrum(field, l, m, t, mode, r) -> dict[int, int]:
    """Histogram: support weight -> number of r-dimensional subcodes."""
    if not 1 <= r <= l * m:
        raise BadParameters(f"subcode dimension r={r} not in [1, {l * m}]")
    dom = make_domain(field, l, m, t, mode)
    counts: Counter[int] = Counter()
    for batch in matq.subspace_batches(field, l * m, r):
        supports = _subspace_supports(dom, batch)
        for w, c in zip(*np.unique(supports, return_counts=True)):
            counts[int(w)] += int(c)
    return dict(sorted(counts.items()))


def export_generator(dom: EvaluationDomain) -> str:
    """Generator matrix text: header 'q l m t mode n k', then k rows."""
    gen = generator_matrix(dom)
    k, n = gen.shape
    header = f"{dom.field.q} {dom.l} {dom.m} {dom.t} {dom.mode} {n} {k}"
    return header + "\n" + matq.format_matrix(gen) + "\n"
