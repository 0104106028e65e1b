"""Exact closed-form counts: Gaussian binomials, rank-r matrix counts,
code lengths, and the extremal rank-1 bounds.

Everything here is arbitrary-precision integer arithmetic; no floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import BadParameters, InternalFormulaMismatch, NonIntegerDivision


def _exact_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    if r:
        raise NonIntegerDivision(f"{a} is not divisible by {b}")
    return q


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of GF(q)^n.

    Returns 0 for k < 0 or k > n (the vanishing convention needed inside
    alternating sums with out-of-range indices).
    """
    if k < 0 or k > n:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return _exact_div(num, den)


def mu(l: int, m: int, r: int, q: int) -> int:
    """Number of l x m matrices over GF(q) of rank r.

    Three equivalent closed forms are evaluated and cross-asserted.
    """
    if r < 0:
        raise BadParameters(f"rank must be nonnegative, got {r}")
    if r > min(l, m):
        return 0
    prod_lm = 1
    for i in range(r):
        prod_lm = prod_lm * (q ** (l - i) - 1) * (q ** (m - i) - 1)
        prod_lm = _exact_div(prod_lm, q ** (i + 1) - 1)
    form_a = q ** comb(r, 2) * prod_lm
    form_b = gaussian_binomial(m, r, q)
    form_c = gaussian_binomial(l, r, q)
    for i in range(r):
        form_b *= q**l - q**i
        form_c *= q**m - q**i
    if not form_a == form_b == form_c:
        raise InternalFormulaMismatch(
            f"rank-count forms disagree: {form_a}, {form_b}, {form_c}"
        )
    return form_a


def mu_hat(l: int, m: int, j: int, q: int) -> int:
    """Number of projective points of rank exactly j (j >= 1)."""
    if j < 1:
        raise BadParameters("projective rank classes start at j = 1")
    return _exact_div(mu(l, m, j, q), q - 1)


def lengths(l: int, m: int, t: int, q: int) -> tuple[int, int]:
    """(affine length n, projective length n_hat) of the rank-<=t codes."""
    if not 1 <= t <= l <= m:
        raise BadParameters(f"need 1 <= t <= l <= m, got t={t}, l={l}, m={m}")
    n_hat = sum(mu_hat(l, m, j, q) for j in range(1, t + 1))
    n = 1 + n_hat * (q - 1)
    assert n == sum(mu(l, m, j, q) for j in range(t + 1))
    return n, n_hat


@dataclass(frozen=True)
class Rank1Bound:
    """Upper bound on rank-1 matrices in an r-dimensional matrix space.

    ``from_coset_argument`` is True when r > m, where the bound is
    q^(r-1) + q^2 - q - 1 and at least ``rank2_floor`` elements must have
    rank >= 2.  For r <= m that argument does not apply; the maximum is
    simply q^r - 1, attained by a constant-rank-1 space.
    """

    max_rank1: int
    rank2_floor: int | None
    from_coset_argument: bool


def rank1_bound(r: int, l: int, m: int, q: int) -> Rank1Bound:
    if l < 2 or l > m:
        raise BadParameters(f"need 2 <= l <= m, got l={l}, m={m}")
    if r < 0 or r > l * m:
        raise BadParameters(f"dimension r={r} not in [0, {l * m}]")
    if r <= m:
        return Rank1Bound(max_rank1=q**r - 1, rank2_floor=None, from_coset_argument=False)
    bound = q ** (r - 1) + q**2 - q - 1
    floor = (q ** (r - 1) - q) * (q - 1)
    assert bound + floor == q**r - 1
    return Rank1Bound(max_rank1=bound, rank2_floor=floor, from_coset_argument=True)
