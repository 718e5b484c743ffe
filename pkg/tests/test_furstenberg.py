from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kakeya_hash.furstenberg import (
    FurstenbergQuery,
    audit_lower_bound_exhaustive,
    is_furstenberg,
    is_rich,
    lower_bound,
    min_furstenberg_size,
    rich_direction_fraction,
    richness_threshold,
)
from kakeya_hash.hashcore import PointSet
from kakeya_hash.linalg import (
    BudgetExceeded,
    Flat,
    Subspace,
    enumerate_flats,
    enumerate_subspaces,
    field_make,
    gaussian_binomial,
)
from kakeya_hash.rng import make_rng

F2, F3 = field_make(2), field_make(3)
GRID = [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)]


def naive_rich_fraction(K, k, m):
    """Oracle: group every k-flat by direction and count points one by one."""
    pts = set(K)
    best = {}
    for R in enumerate_flats(K.ctx, K.n, k):
        hits = sum(tuple(int(x) for x in v) in pts for v in R.vectors())
        best[R.subspace] = max(best.get(R.subspace, 0), hits)
    return Fraction(sum(b >= m for b in best.values()), len(best))


def line(ctx, n, direction, shift):
    return Flat(Subspace.from_rows(ctx, n, [direction]), tuple(shift))


def test_richness_threshold():
    assert richness_threshold(3, 2, Fraction(1, 2)) == 5
    assert richness_threshold(2, 2, Fraction(3, 4)) == 3
    assert richness_threshold(2, 1, 0) == 0
    with pytest.raises(ValueError):
        richness_threshold(2, 1, Fraction(3, 2))


def test_query_validation():
    q = FurstenbergQuery.from_gamma(3, 2, Fraction(1, 2), Fraction(1, 3))
    assert q.m == 5
    with pytest.raises(ValueError):
        FurstenbergQuery(1, 2, Fraction(3, 2))
    with pytest.raises(ValueError):
        FurstenbergQuery(1, 3, Fraction(1), gamma=Fraction(1, 2), q=2)
    with pytest.raises(ValueError):
        FurstenbergQuery(1, -1, Fraction(1))


def test_is_rich_examples():
    full = PointSet.full(F2, 2)
    R = line(F2, 2, [1, 1], [0, 0])
    assert is_rich(R, PointSet.empty(F2, 2), 0)
    assert all(is_rich(L, full, 2) for L in enumerate_flats(F2, 2, 1))
    assert not is_rich(R, PointSet.from_vectors(F2, 2, [[0, 0]]), 2)


def test_rich_direction_fraction_examples():
    assert rich_direction_fraction(PointSet.full(F2, 2), 1, 2) == 1
    ell = PointSet.from_vectors(F2, 2, [[0, 1], [1, 1]])
    assert rich_direction_fraction(ell, 1, 2) == Fraction(1, 3)
    assert rich_direction_fraction(PointSet.empty(F2, 3), 1, 1) == 0
    with pytest.raises(BudgetExceeded):
        rich_direction_fraction(PointSet.full(F3, 3), 1, 1, budget=5)


def test_is_furstenberg_examples():
    for q, n, k in [(2, 2, 1), (2, 3, 2), (3, 2, 1)]:
        ctx = field_make(q)
        assert is_furstenberg(PointSet.full(ctx, n), FurstenbergQuery(k, q**k, Fraction(1)))
    assert is_furstenberg(PointSet.empty(F2, 2), FurstenbergQuery(1, 2, Fraction(0)))
    ell = PointSet.from_vectors(F2, 2, [[0, 1], [1, 1]])
    assert not is_furstenberg(ell, FurstenbergQuery(1, 2, Fraction(1, 2)))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([(F2, 2), (F2, 3), (F3, 2)]), st.data())
def test_rich_fraction_matches_naive(seed, space, data):
    ctx, n = space
    K = PointSet.random(make_rng(seed), ctx, n, data.draw(st.integers(0, ctx.q**n)))
    k = data.draw(st.integers(1, n))
    m = data.draw(st.integers(0, ctx.q**k))
    assert rich_direction_fraction(K, k, m) == naive_rich_fraction(K, k, m)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([(F2, 3), (F3, 2)]), st.data())
def test_rich_fraction_monotone(seed, space, data):
    ctx, n = space
    rng = make_rng(seed)
    K = PointSet.random(rng, ctx, n, data.draw(st.integers(0, ctx.q**n - 1)))
    extra = PointSet.random(rng, ctx, n, 1)
    bigger = PointSet.from_vectors(ctx, n, list(K) + list(extra))
    k = data.draw(st.integers(1, n))
    fr = [rich_direction_fraction(K, k, m) for m in range(ctx.q**k + 1)]
    assert fr == sorted(fr, reverse=True)
    for m in range(ctx.q**k + 1):
        assert rich_direction_fraction(bigger, k, m) >= fr[m]


@pytest.mark.parametrize("q,n", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_union_of_rich_flats(q, n):
    ctx = field_make(q)
    for k in range(1, n + 1):
        for m in range(q**k + 1):
            pts = set()
            for A in enumerate_subspaces(ctx, n, k):
                chosen = [tuple(int(x) for x in v) for v in Flat(A, (0,) * n).vectors()][:m]
                pts.update(chosen)
            K = PointSet.from_vectors(ctx, n, sorted(pts)) if pts else PointSet.empty(ctx, n)
            assert K.size <= m * gaussian_binomial(n, k, q)
            assert rich_direction_fraction(K, k, m) == 1


def test_lower_bound_examples():
    assert lower_bound(2, 3, 2, 1, 1) == Fraction(81, 16)
    assert lower_bound(2, 3, 2, 1, 0) == 0
    assert lower_bound(1, 2, 1, 1, 1) == 1
    with pytest.raises(ValueError):
        lower_bound(2, 3, 2, Fraction(5, 4), 1)


@given(st.integers(1, 5), st.sampled_from([2, 3, 4, 5, 7]), st.integers(1, 4),
       st.sampled_from(GRID), st.sampled_from(GRID))
def test_lower_bound_monotone(n, q, k, gamma, beta):
    b = lower_bound(n, q, k, gamma, beta)
    assert lower_bound(n, q + 1, k, gamma, beta) >= b
    for g in GRID:
        if g >= gamma:
            assert lower_bound(n, q, k, g, beta) >= b
        if g >= beta:
            assert lower_bound(n, q, k, gamma, g) >= b


@pytest.mark.parametrize("q,n,k,subsets", [(2, 2, 1, 16), (2, 2, 2, 16), (2, 3, 2, 256),
                                           (3, 2, 1, 512), (3, 2, 2, 512)])
def test_audit_instances(q, n, k, subsets):
    rep = audit_lower_bound_exhaustive(n, q, k, GRID, GRID)
    assert rep.passed and rep.subsets_checked == subsets
    assert rep.furstenberg_instances > 0
    assert rep.min_slack >= 0


def test_audit_plane_gamma_one():
    # over F_3^2 with k = 2 the only 2-flat is the plane, so gamma = beta = 1 forces K = F_3^2
    rep = audit_lower_bound_exhaustive(2, 3, 2, [1], [1])
    assert rep.furstenberg_instances == 1
    assert rep.min_slack == 9 - Fraction(81, 16)


def test_audit_sampled_mode():
    rep = audit_lower_bound_exhaustive(2, 4, 1, GRID, GRID, mode="sampled", samples=500,
                                       rng=make_rng(1))
    assert rep.passed and rep.subsets_checked == 500
    with pytest.raises(ValueError):
        audit_lower_bound_exhaustive(2, 4, 1, GRID, GRID)
    with pytest.raises(ValueError):
        audit_lower_bound_exhaustive(2, 4, 1, GRID, GRID, mode="sampled")


def test_min_furstenberg_size_examples():
    size, K = min_furstenberg_size(2, 2, 1, 2, 1)
    assert size == 3 and rich_direction_fraction(K, 1, 2) == 1
    assert min_furstenberg_size(2, 2, 1, 0, 1)[0] == 0
    assert min_furstenberg_size(2, 2, 1, 2, 0)[0] == 0
    with pytest.raises(ValueError):
        min_furstenberg_size(2, 2, 1, 3, 1)


def test_min_size_respects_lower_bound_and_greedy_upper_bound():
    for q, n, k in [(2, 2, 1), (2, 3, 1), (2, 3, 2), (3, 2, 1)]:
        for m in range(1, q**k + 1):
            for beta in GRID:
                exact, K = min_furstenberg_size(n, q, k, m, beta)
                assert rich_direction_fraction(K, k, m) >= beta
                greedy, G = min_furstenberg_size(n, q, k, m, beta, mode="greedy")
                assert rich_direction_fraction(G, k, m) >= beta
                assert greedy >= exact
                gamma = Fraction(m, q**k)
                assert exact >= lower_bound(n, q, k, gamma, beta)
