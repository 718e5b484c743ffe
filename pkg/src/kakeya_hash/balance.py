"""Balanced flats, shift-balanced subspaces and Chebyshev-type audits.

A k-flat R is tau-balanced with respect to S when
``| |R & S| - E_k(S) | <= tau * E_k(S)`` with ``E_k(S) = |S| / q**(n-k)``.
All comparisons are done on integers after clearing denominators.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .hashcore import PointSet
from .linalg import (
    Flat,
    Subspace,
    coset_indices,
    decode_index,
    encode_vectors,
    enumerate_subspaces,
    check_budget,
    gaussian_binomial,
)

DEFAULT_WITNESSES = 16


def expected_intersection(S: PointSet, k: int) -> Fraction:
    """E_k(S) = |S| / q**(n-k)."""
    if not 0 <= k <= S.n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={S.n}")
    return Fraction(S.size, S.ctx.q ** (S.n - k))


def _within(counts, size: int, scale: int, tau: Fraction):
    """|count - size/scale| <= tau * size/scale, elementwise and exact."""
    counts = np.asarray(counts, dtype=np.int64)
    rhs = tau.numerator * size
    worst = (int(counts.max(initial=0)) * scale + size) * tau.denominator
    if max(worst, rhs) < 2**62:
        return np.abs(counts * scale - size) * tau.denominator <= rhs
    dev = np.abs(counts.astype(object) * scale - size)
    return (dev * tau.denominator <= rhs).astype(bool)


def _check(sub_n: int, S: PointSet) -> None:
    if sub_n != S.n:
        raise ValueError(f"dimension mismatch: {sub_n} vs {S.n}")


def is_balanced(R: Flat, S: PointSet, tau) -> bool:
    _check(R.n, S)
    tau = Fraction(tau)
    hits = int(S.membership[R.point_indices()].sum())
    return bool(_within([hits], S.size, S.ctx.q ** (S.n - R.k), tau)[0])


def coset_counts(A: Subspace, S: PointSet, membership: np.ndarray | None = None) -> np.ndarray:
    """|(a + A) & S| for every canonical shift a, in ``A.shifts()`` order."""
    _check(A.n, S)
    mem = S.membership if membership is None else membership
    return mem[coset_indices(A)].sum(axis=1)


def is_shift_balanced(A: Subspace, S: PointSet, tau,
                      membership: np.ndarray | None = None) -> tuple[bool, tuple[int, ...] | None]:
    """Whether every shift of A is tau-balanced; otherwise the first bad shift."""
    tau = Fraction(tau)
    counts = coset_counts(A, S, membership)
    ok = _within(counts, S.size, S.ctx.q ** (S.n - A.k), tau)
    if bool(np.all(ok)):
        return True, None
    bad = int(np.argmin(ok))
    return False, tuple(int(x) for x in A.shifts()[bad])


@dataclass(frozen=True)
class BalanceReport:
    n: int
    k: int
    q: int
    tau: Fraction
    total_subspaces: int
    shift_balanced_count: int
    fraction: Fraction
    witnesses: tuple[tuple[Subspace, tuple[int, ...]], ...] = field(default=())

    @property
    def delta(self) -> Fraction:
        return 1 - self.fraction


def shift_balanced_fraction(S: PointSet, k: int, tau, *, budget: int | None = None,
                            max_witnesses: int = DEFAULT_WITNESSES) -> BalanceReport:
    """Exact fraction of k-dimensional subspaces that are tau-shift-balanced."""
    ctx, n = S.ctx, S.n
    tau = Fraction(tau)
    total = gaussian_binomial(n, k, ctx.q)
    check_budget(total * ctx.q**n, budget, "shift_balanced_fraction")
    mem = S.membership
    good = 0
    witnesses = []
    for A in enumerate_subspaces(ctx, n, k):
        ok, shift = is_shift_balanced(A, S, tau, mem)
        if ok:
            good += 1
        elif len(witnesses) < max_witnesses:
            witnesses.append((A, shift))
    return BalanceReport(n, k, ctx.q, tau, total, good, Fraction(good, total), tuple(witnesses))


# --- Chebyshev audits ------------------------------------------------------------

@dataclass(frozen=True)
class ClaimAudit:
    """Result of one exhaustive audit.

    ``bound`` is the stated bound (with q in the denominator); it is only
    guaranteed when ``hypothesis_holds`` (E_{k-2} >= q). ``general_bound``
    replaces q by E_{k-2}; the same Chebyshev argument proves it for every
    nonempty S, so ``passed`` checks against it. ``passed_stated`` is the
    comparison with ``bound``.
    """

    fraction: Fraction
    bound: Fraction | float
    general_bound: Fraction | float
    hypothesis_holds: bool
    passed: bool
    passed_stated: bool
    flats: int
    e_k2: Fraction


def _inf_or(num: Fraction, den: Fraction) -> Fraction | float:
    return math.inf if den == 0 else num / den


def _unbalanced_flats(S: PointSet, j: int, sigma: Fraction, mem: np.ndarray,
                      within: Flat | None = None) -> tuple[int, int]:
    """(number of sigma-unbalanced j-flats, number of j-flats), optionally inside a flat."""
    ctx, n = S.ctx, S.n
    scale = ctx.q ** (n - j)
    bad = total = 0
    if within is None:
        for A in enumerate_subspaces(ctx, n, j):
            counts = mem[coset_indices(A)].sum(axis=1)
            bad += int(np.count_nonzero(~_within(counts, S.size, scale, sigma)))
            total += len(counts)
        return bad, total
    # j-flats inside T = shift + U: images of j-flats of F_q^k under the parametrisation
    U = within.subspace
    basis = np.array(U.basis, dtype=np.int64).reshape(U.k, n)
    shift = np.array(within.shift, dtype=np.int64)
    for B in enumerate_subspaces(ctx, U.k, j):
        local = coset_indices(B)  # indices into F_q^k
        coords = decode_index(ctx, U.k, local)  # (cosets, q**j, k)
        pts = ctx.add(ctx.matmul(coords.reshape(-1, U.k), basis), shift[None, :])
        idx = encode_vectors(ctx, pts).reshape(local.shape)
        counts = mem[idx].sum(axis=1)
        bad += int(np.count_nonzero(~_within(counts, S.size, scale, sigma)))
        total += len(counts)
    return bad, total


def audit_claim_concentration(S: PointSet, k: int, sigma, *,
                              budget: int | None = None) -> ClaimAudit:
    """Fraction of all (k-2)-flats that are sigma-unbalanced vs 1/(sigma**2 q)."""
    if k < 3 or k > S.n:
        raise ValueError("need 3 <= k <= n")
    sigma = Fraction(sigma)
    if sigma < 0:
        raise ValueError("sigma must be nonnegative")
    ctx, n, j = S.ctx, S.n, k - 2
    check_budget(gaussian_binomial(n, j, ctx.q) * ctx.q**n, budget, "audit_claim_concentration")
    e = expected_intersection(S, j)
    bad, total = _unbalanced_flats(S, j, sigma, S.membership)
    frac = Fraction(bad, total)
    bound = _inf_or(Fraction(1), sigma**2 * ctx.q)
    general = _inf_or(Fraction(1), sigma**2 * e) if S.size else math.inf
    return ClaimAudit(frac, bound, general, e >= ctx.q, frac <= general, frac <= bound, total, e)


def audit_claim_anticoncentration(T: Flat, S: PointSet, tau, sigma, *,
                                  budget: int | None = None) -> ClaimAudit:
    """Fraction of (k-2)-flats inside a tau-unbalanced k-flat T that are
    sigma-unbalanced, vs 1 - (1+tau)/((tau-sigma)**2 q)."""
    tau, sigma = Fraction(tau), Fraction(sigma)
    k = T.k
    if k < 3:
        raise ValueError("need k >= 3")
    if sigma >= tau:
        raise ValueError("need sigma < tau")
    if is_balanced(T, S, tau):
        raise ValueError("T is tau-balanced with respect to S")
    ctx = S.ctx
    check_budget(gaussian_binomial(k, k - 2, ctx.q) * ctx.q**k, budget, "audit_claim_anticoncentration")
    e = expected_intersection(S, k - 2)
    bad, total = _unbalanced_flats(S, k - 2, sigma, S.membership, within=T)
    frac = Fraction(bad, total)
    gap = (tau - sigma) ** 2
    bound = 1 - (1 + tau) / (gap * ctx.q)
    general = 1 - (1 + tau) / (gap * e)  # e > 0: T unbalanced forces S nonempty
    return ClaimAudit(frac, bound, general, e >= ctx.q, frac >= general, frac >= bound, total, e)
