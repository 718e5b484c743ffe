from __future__ import annotations

import itertools
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kakeya_hash.linalg import (
    BudgetExceeded,
    FieldElem,
    MatrixFq,
    Subspace,
    check_budget,
    decode_index,
    encode_vectors,
    enumerate_flats,
    enumerate_subspaces,
    enumerate_surjective_maps,
    field_arith,
    field_make,
    field_of_order,
    flat_canonicalize,
    gaussian_binomial,
    mat_kernel,
    mat_rank,
    mat_rref,
    sample_surjective_map,
)
from kakeya_hash.rng import make_rng, trial_rng

F2, F3, F4, F9 = field_make(2), field_make(3), field_make(2, 2), field_make(3, 2)


# --- fields -------------------------------------------------------------------------

def test_field_make_examples():
    assert F2.q == 2 and F2.modulus is None
    assert F4.q == 4 and F4.modulus == (1, 1, 1)  # x^2 + x + 1
    # smallest monic irreducible quadratic over F_3 read high degree first is x^2 + 1
    assert F9.modulus == (1, 0, 1)


def test_field_make_errors():
    with pytest.raises(ValueError):
        field_make(4)
    with pytest.raises(ValueError):
        field_make(2, 0)
    with pytest.raises(ValueError):
        field_of_order(6)
    assert field_of_order(8) == field_make(2, 3)


def test_field_arith_examples():
    one2 = FieldElem(F2, 1)
    assert field_arith(one2, one2, "add").value == 0
    two3 = FieldElem(F3, 2)
    assert field_arith(two3, two3, "mul").value == 1
    x = FieldElem(F4, 2)  # digit 1 is the coefficient of x
    assert field_arith(x, x, "mul").value == 3  # x + 1
    with pytest.raises(ZeroDivisionError):
        field_arith(x, FieldElem(F4, 0), "div")
    with pytest.raises(ValueError):
        field_arith(x, FieldElem(F2, 1), "add")


def _poly_mul_mod(a, b, ctx):
    """Schoolbook oracle: multiply coefficient vectors and reduce mod the modulus."""
    p, ell = ctx.p, ctx.ell
    da = [(a // p**i) % p for i in range(ell)]
    db = [(b // p**i) % p for i in range(ell)]
    prod = [0] * (2 * ell - 1)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            prod[i + j] = (prod[i + j] + x * y) % p
    mod = ctx.modulus or (0, 1)
    for deg in range(len(prod) - 1, ell - 1, -1):
        c = prod[deg]
        if c:
            for i, m in enumerate(mod):
                prod[deg - ell + i] = (prod[deg - ell + i] - c * m) % p
    return sum(c * p**i for i, c in enumerate(prod[:ell]))


@pytest.mark.parametrize("ctx", [F2, F3, F4, F9, field_make(5), field_make(2, 3)])
def test_field_axioms_exhaustive(ctx):
    els = np.arange(ctx.q)
    A, B = np.meshgrid(els, els, indexing="ij")
    prod = ctx.mul(A, B)
    for a in range(ctx.q):
        for b in range(ctx.q):
            assert prod[a, b] == _poly_mul_mod(a, b, ctx)
    add = ctx.add(A, B)
    for a, b, c in itertools.product(range(ctx.q), repeat=3):
        assert ctx.mul(a, ctx.add(b, c)) == ctx.add(ctx.mul(a, b), ctx.mul(a, c))
        assert ctx.mul(ctx.mul(a, b), c) == ctx.mul(a, ctx.mul(b, c))
        assert add[add[a, b], c] == add[a, add[b, c]]
    for a in range(1, ctx.q):
        assert ctx.mul(a, ctx.inv(a)) == 1
    for a in range(ctx.q):
        assert ctx.add(a, ctx.neg(a)) == 0


# --- matrices -----------------------------------------------------------------------

def test_rref_examples():
    assert mat_rank(MatrixFq.identity(F2, 3)) == 3
    assert mat_rank(MatrixFq(F2, [[1, 1], [1, 1]])) == 1
    R, rank, piv = mat_rref(MatrixFq.zeros(F2, 2, 5))
    assert rank == 0 and piv == ()


def test_kernel_examples():
    assert mat_kernel(MatrixFq(F2, [[1, 1]])).basis == ((1, 1),)
    assert mat_kernel(MatrixFq.identity(F3, 2)).k == 0
    assert mat_kernel(MatrixFq.zeros(F2, 1, 3)) == Subspace.full(F2, 3)


@pytest.mark.parametrize("n,t", [(n, t) for n in range(1, 5) for t in range(1, 4)])
def test_rank_nullity_exhaustive_f2(n, t):
    for flat in itertools.product(range(2), repeat=t * n):
        M = MatrixFq(F2, np.array(flat).reshape(t, n))
        K = mat_kernel(M)
        assert K.k + mat_rank(M) == n
        if K.k:
            assert not F2.matmul(M.data, K.matrix.data.T).any()


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from([F2, F3, F4, field_make(5)]),
       st.integers(1, 4), st.integers(1, 5))
def test_rref_is_row_equivalent(seed, ctx, rows, cols):
    data = make_rng(seed).integers(0, ctx.q, size=(rows, cols))
    R, rank, piv = mat_rref(MatrixFq(ctx, data))
    # same row space: stacking adds no rank, pivots carry leading ones
    assert mat_rank(MatrixFq(ctx, np.vstack([R.data, data]))) == rank
    for i, c in enumerate(piv):
        assert R.data[i, c] == 1
        assert np.count_nonzero(R.data[:, c]) == 1


# --- encoding, subspaces, flats -----------------------------------------------------

def test_encode_roundtrip():
    for ctx, n in [(F2, 4), (F3, 3), (F4, 2)]:
        idx = np.arange(ctx.q**n)
        assert np.array_equal(encode_vectors(ctx, decode_index(ctx, n, idx)), idx)
    assert int(encode_vectors(F3, [1, 2])) == 5


@pytest.mark.parametrize("q,n", [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (3, 4)])
def test_enumerate_subspaces_counts(q, n):
    ctx = field_of_order(q)
    for k in range(n + 1):
        subs = list(enumerate_subspaces(ctx, n, k))
        assert len(subs) == len(set(subs)) == gaussian_binomial(n, k, q)
        for A in subs[:20]:
            assert Subspace.from_rows(ctx, n, A.matrix.data) == A


def test_enumeration_examples():
    assert len(list(enumerate_subspaces(F2, 2, 1))) == 3
    assert len(list(enumerate_subspaces(F3, 2, 1))) == 4
    assert list(enumerate_subspaces(F3, 3, 0)) == [Subspace.zero(F3, 3)]
    assert len(list(enumerate_flats(F2, 2, 1))) == 6
    assert len(list(enumerate_flats(F2, 3, 3))) == 1
    assert len(list(enumerate_flats(F3, 2, 0))) == 9
    assert gaussian_binomial(2, 1, 2) == 3
    assert gaussian_binomial(3, 1, 2) == 7
    assert gaussian_binomial(6, 0, 5) == 1
    with pytest.raises(ValueError):
        list(enumerate_subspaces(F2, 2, 3))
    with pytest.raises(ValueError):
        gaussian_binomial(2, 3, 2)


def test_flat_canonicalize_examples():
    diag = Subspace.from_rows(F2, 2, [[1, 1]])
    e1 = Subspace.from_rows(F2, 2, [[1, 0]])
    assert flat_canonicalize((1, 1), diag).shift == (0, 0)
    assert flat_canonicalize((0, 1), e1).shift == (0, 1)
    assert flat_canonicalize((1, 1), e1).shift == (0, 1)


@pytest.mark.parametrize("ctx,n", [(F2, 2), (F2, 3), (F3, 2), (F3, 3)])
def test_flat_canonicalize_idempotent_and_point_preserving(ctx, n):
    for k in range(n + 1):
        for A in enumerate_subspaces(ctx, n, k):
            base = A.vectors()
            for s in decode_index(ctx, n, np.arange(ctx.q**n)):
                F = flat_canonicalize(tuple(s), A)
                assert flat_canonicalize(F.shift, A) == F
                raw = {tuple(v) for v in ctx.add(base, s[None, :])}
                assert {tuple(v) for v in F.vectors()} == raw


# --- surjective maps ----------------------------------------------------------------

def test_sample_surjective_examples():
    with pytest.raises(ValueError):
        sample_surjective_map(make_rng(0), F2, 2, 3)
    with pytest.raises(ValueError):
        sample_surjective_map(make_rng(0), F2, 2, 0)
    assert len(list(enumerate_surjective_maps(F2, 3, 2))) == 42
    assert len(list(enumerate_surjective_maps(F2, 2, 2))) == 6


def test_sample_surjective_uniform_gl2():
    draws = Counter(sample_surjective_map(trial_rng(11, i), F2, 2, 2).matrix.data.tobytes()
                    for i in range(6000))
    assert len(draws) == 6
    # chi-square with 5 dof: 20.5 is the 0.999 quantile
    chi2 = sum((c - 1000) ** 2 / 1000 for c in draws.values())
    assert chi2 < 20.5


def test_sample_surjective_uniform_42():
    rng = make_rng(5)
    draws = Counter(sample_surjective_map(rng, F2, 3, 2).matrix.data.tobytes() for _ in range(10_000))
    assert len(draws) == 42
    mean = 10_000 / 42
    sd = (10_000 * (1 / 42) * (41 / 42)) ** 0.5
    assert all(abs(c - mean) <= 5 * sd for c in draws.values())


def test_check_budget():
    check_budget(10, 10, "x")
    with pytest.raises(BudgetExceeded):
        check_budget(11, 10, "x")


def test_budget_env(monkeypatch):
    monkeypatch.setenv("KAKEYA_HASH_BUDGET", "5")
    with pytest.raises(BudgetExceeded):
        check_budget(6, None, "x")
