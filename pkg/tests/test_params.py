from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kakeya_hash.linalg import field_of_order
from kakeya_hash.params import (
    ParameterError,
    Surd,
    ceil_log2,
    choose_t_binary,
    choose_t_large_field,
    hypothesis_check_large_field,
    injective_t,
    log_q_bracket,
    prehash_dimension,
)


@given(st.fractions(min_value=Fraction(1, 10**6), max_value=10**9))
def test_ceil_log2_matches_definition(x):
    c = ceil_log2(x)
    assert Fraction(2) ** c >= x
    assert Fraction(2) ** (c - 1) < x


@given(st.sampled_from([2, 3, 4, 7, 16]), st.integers(2, 10**12))
def test_log_q_bracket(q, size):
    r = log_q_bracket(q, size)
    assert q**r < size <= q ** (r + 1)


@settings(max_examples=200)
@given(st.fractions(min_value=0, max_value=50, max_denominator=20),
       st.fractions(min_value=0, max_value=50, max_denominator=20),
       st.fractions(min_value=0, max_value=50, max_denominator=20),
       st.sampled_from([2, 3, 5, Fraction(9, 4), Fraction(3, 2)]))
def test_surd_matches_float(a, b, x, c):
    s = Surd(a, b, c)
    f = float(a) + float(b) * math.sqrt(c)
    assert float(s) == pytest.approx(f)
    other = Surd(x, Fraction(0), c)
    assert (s < other) == (f < float(x)) or math.isclose(f, float(x))
    assert float(s * s) == pytest.approx(f * f)


def test_choose_t_large_field_examples():
    F16, F7 = field_of_order(16), field_of_order(7)
    p = choose_t_large_field(F16, 16**5, 10)
    assert (p.r, p.t) == (4, 1)
    p = choose_t_large_field(F7, 7**4 + 1, 10)
    assert (p.r, p.t) == (4, 1)
    with pytest.raises(ParameterError):
        choose_t_large_field(F16, 16**4, 10)
    with pytest.raises(ParameterError):
        choose_t_large_field(F16, 16**6 + 1, 6)  # larger than the space


@given(st.sampled_from([2, 3, 4, 5, 7, 8, 16]), st.integers(5, 12), st.data())
def test_choose_t_large_field_is_r_minus_3(q, n, data):
    size = data.draw(st.integers(q**4 + 1, q ** (n - 1) + 0 if n > 5 else q**5))
    ctx = field_of_order(q)
    r = log_q_bracket(q, size)
    if not 4 <= r <= n - 1:
        with pytest.raises(ParameterError):
            choose_t_large_field(ctx, size, n)
        return
    p = choose_t_large_field(ctx, size, n)
    assert p.t == r - 3
    assert p.entropy_loss >= 0
    assert p.entropy_loss >= Fraction(math.log2(size)) - p.t * Fraction(math.log2(q)) - Fraction(1, 10**9)


def test_hypothesis_check_examples():
    assert hypothesis_check_large_field(field_of_order(2048), 5, 1, Fraction(1, 2)).ok
    assert not hypothesis_check_large_field(field_of_order(1024), 5, 1, Fraction(1, 2)).ok
    assert not hypothesis_check_large_field(field_of_order(2), 5, 1, Fraction(1, 2)).ok
    rep = hypothesis_check_large_field(field_of_order(2**20), 20, 1, Fraction(1, 20), "improved")
    assert not rep.ok and "tau > 1" in rep.failed
    with pytest.raises(ValueError):
        hypothesis_check_large_field(field_of_order(2), 5, 1, Fraction(1, 2), "other")


def test_hypothesis_check_improved_boundary():
    # tau = 4: (tau - sqrt tau)^2 = 4, so M = max(n * 5 / (4 delta^2), n)
    n, delta = 20, Fraction(1, 20)
    need = max(n * 5 / (4 * delta**2), n)  # 10000
    assert hypothesis_check_large_field(field_of_order(2**14), n, 4, delta, "improved").ok
    assert not hypothesis_check_large_field(field_of_order(2**13), n, 4, delta, "improved").ok
    assert 2**13 < need <= 2**14


def test_injective_t_examples():
    assert injective_t(1024, Fraction(1, 2)) == 20
    assert injective_t(4, Fraction(1, 2)) == 4
    assert injective_t(2, 1) == 0
    with pytest.raises(ValueError):
        injective_t(1, Fraction(1, 2))


@given(st.integers(2, 10**6), st.fractions(min_value=Fraction(1, 1000), max_value=1))
def test_injective_t_minimal(size, delta):
    if delta == 0:
        return
    t = injective_t(size, delta)
    need = Fraction(size * (size - 1)) / (2 * delta)
    assert 2**t >= need
    assert t == 0 or 2 ** (t - 1) < need


def test_thm22_worked_example():
    p = choose_t_binary(100, 2**60, 3, Fraction(1, 2), "thm22", check=False)
    assert (p.ell, p.q, p.r, p.t) == (13, 2**13, 4, 13)
    assert p.entropy_loss == 47
    assert p.meets_stated_bound
    assert not p.notes


def test_thm24_prehash_dimension():
    assert prehash_dimension(2**40, Fraction(1, 2)) == 81
    # far too small for the side conditions, and for the embedding as well
    with pytest.raises(ParameterError, match="side conditions"):
        choose_t_binary(200, 2**40, Fraction(1, 2), Fraction(1, 2), "thm24")
    with pytest.raises(ParameterError, match="embedding"):
        choose_t_binary(200, 2**40, Fraction(1, 2), Fraction(1, 2), "thm24", check=False)


def test_choose_t_binary_errors():
    with pytest.raises(ParameterError):
        choose_t_binary(100, 2**60, 0, Fraction(1, 2))
    with pytest.raises(ParameterError):
        choose_t_binary(100, 2**60, 1, 1)
    with pytest.raises(ParameterError):
        choose_t_binary(100, 2**60, 1, Fraction(1, 2), "thm25_binary")  # tau > 1 required
    with pytest.raises(ValueError):
        choose_t_binary(100, 2**60, 1, Fraction(1, 2), "nope")


def test_thm22_valid_tuple_passes_checks():
    # n = 10^4, tau = 1, delta = 1/2: M = 8n and n >= 5 ceil(log2 M) + 25 holds easily
    n = 10_000
    M = 8 * n
    ell = ceil_log2(32 * M)
    size = 2 ** (4 * ell) + 1
    p = choose_t_binary(n, size, 1, Fraction(1, 2), "thm22")
    assert p.ell == ell and p.r == 4 and p.t == ell
    assert not p.notes
    assert p.meets_stated_bound


def test_thm22_size_condition_does_not_force_r_ge_4():
    # the stated size condition gives |S| > 2^20 M^4, but q = 2^ceil(log2 32M) can be
    # nearly 64M, so |S| <= q^4 is still possible and the embedding has r = 3
    n = 10_000
    M = 8 * n
    size = 2**20 * M**4 + 1
    assert size <= 2 ** (4 * ceil_log2(32 * M))
    with pytest.raises(ParameterError, match="r = 3 < 4"):
        choose_t_binary(n, size, 1, Fraction(1, 2), "thm22")
