"""Output-length rules for linear hashing.

All threshold tests are exact: rationals are :class:`fractions.Fraction`,
logarithmic thresholds are turned into power comparisons (``2**t >= x``), and
the quantities involving ``sqrt(tau)`` are carried as :class:`Surd` values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .linalg import FieldCtx

Rational = Union[int, Fraction]

LARGE_FIELD_VARIANTS = ("main", "improved")
BINARY_VARIANTS = ("thm22", "thm24", "thm25_binary", "thm26")


class ParameterError(ValueError):
    """Side conditions of a parameter rule are violated; ``report`` lists them."""

    def __init__(self, message: str, report: list[str] | None = None):
        super().__init__(message if not report else f"{message}: {'; '.join(report)}")
        self.report = list(report or [])


@dataclass(frozen=True)
class Surd:
    """The real number ``a + b*sqrt(c)`` with rational a, b and c >= 0."""

    a: Fraction
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)

    @classmethod
    def lift(cls, x, c: Fraction) -> "Surd":
        if isinstance(x, Surd):
            if x.b and x.c != c:
                raise ValueError("surds over different radicands")
            return cls(x.a, x.b, c)
        return cls(Fraction(x), Fraction(0), c)

    def _c(self, other) -> Fraction:
        if isinstance(other, Surd) and other.b:
            return other.c
        return self.c

    def __add__(self, other):
        c = self._c(other)
        x, y = Surd.lift(self, c), Surd.lift(other, c)
        return Surd(x.a + y.a, x.b + y.b, c)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.a, -self.b, self.c)

    def __sub__(self, other):
        return self + (-Surd.lift(other, self._c(other)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        c = self._c(other)
        x, y = Surd.lift(self, c), Surd.lift(other, c)
        return Surd(x.a * y.a + x.b * y.b * c, x.a * y.b + x.b * y.a, c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = self._c(other)
        y = Surd.lift(other, c)
        norm = y.a * y.a - y.b * y.b * c
        if norm == 0:
            if y.a == 0 and y.b == 0:
                raise ZeroDivisionError("division by zero surd")
            # y = a(1 +/- 1) degenerate: sqrt(c) rational, fold it in
            return self * Fraction(1) / Fraction(y.a + y.b * _exact_sqrt(c))
        return self * Surd(y.a / norm, -y.b / norm, c)

    def __rtruediv__(self, other):
        return Surd.lift(other, self.c) / self

    def __pow__(self, e: int):
        out = Surd(Fraction(1), Fraction(0), self.c)
        for _ in range(e):
            out = out * self
        return out

    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0) if self.c else 0
        if sb == 0 or sa == sb:
            return sa or sb
        if sa == 0:
            return sb
        d = self.a * self.a - self.b * self.b * self.c
        return sa if d > 0 else (sb if d < 0 else 0)

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(self.c)


def _exact_sqrt(x: Fraction) -> Fraction:
    n, d = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if n * n != x.numerator or d * d != x.denominator:
        raise ValueError(f"{x} is not a rational square")
    return Fraction(n, d)


def _max(x, y):
    return x if x >= y else y


def ceil_log2(x) -> int:
    """Smallest integer e with 2**e >= x, for x > 0 (Fraction, int or Surd)."""
    if not x > 0:
        raise ValueError("ceil_log2 of a non-positive number")
    e = math.ceil(math.log2(float(x)))
    while Fraction(2) ** e < x:
        e += 1
    while Fraction(2) ** (e - 1) >= x:
        e -= 1
    return e


def log_q_bracket(q: int, size: int) -> int:
    """The r with q**r < size <= q**(r+1); requires size >= 2."""
    if size < 2:
        raise ValueError("need |S| >= 2")
    r = 0
    while q ** (r + 1) < size:
        r += 1
    return r


@dataclass(frozen=True)
class HypothesisReport:
    ok: bool
    failed: tuple[str, ...] = ()

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class HashParams:
    """Output dimension chosen by one of the hashing rules.

    ``entropy_loss`` is an exact integer upper bound, in bits, on
    ``log2|S| - log2(q**t)`` (``q = 2`` for the binary variants). ``stated_bound`` is the
    theorem's lower bound on t rendered as a float for reports only; the
    comparison itself is ``meets_stated_bound``, computed exactly.
    """

    variant: str
    t: int
    entropy_loss: Fraction
    tau: Fraction | None = None
    delta: Fraction | None = None
    q: int | None = None
    ell: int | None = None
    n_prime: int | None = None
    r: int | None = None
    m: int | None = None
    stated_bound: float | None = None
    meets_stated_bound: bool | None = None
    notes: tuple[str, ...] = field(default=())

    def as_dict(self) -> dict:
        out = {}
        for key, val in self.__dict__.items():
            if isinstance(val, Fraction):
                val = f"{val.numerator}/{val.denominator}"
            elif isinstance(val, tuple):
                val = list(val)
            out[key] = val
        return out


# --- large fields ---------------------------------------------------------------

def choose_t_large_field(ctx: FieldCtx, set_size: int, n: int) -> HashParams:
    """t = r - 3 where q**r < |S| <= q**(r+1) and 4 <= r <= n - 1."""
    q = ctx.q
    if set_size > q**n:
        raise ParameterError("|S| exceeds q**n")
    r = log_q_bracket(q, set_size)
    if r < 4:
        raise ParameterError(f"r = {r} < 4: |S| must exceed q**4 = {q**4}")
    if r > n - 1:
        raise ParameterError(f"r = {r} > n - 1 = {n - 1}")
    t = r - 3
    # bits: ceil(log2|S|) - floor(log2 q**t) bounds log2|S| - t log2 q from above
    loss = Fraction(ceil_log2(set_size) - ((q**t).bit_length() - 1))
    return HashParams("thm21", t, loss, q=q, r=r)


def _improved_M(n: int, tau: Fraction, delta: Fraction) -> Surd:
    """max(n(1+tau)/((tau - sqrt(tau))**2 delta**2), n), exactly."""
    root = Surd(Fraction(0), Fraction(1), tau)
    gap_sq = (tau - root) ** 2
    return _max(n * (1 + tau) / (gap_sq * delta * delta), Surd.lift(n, tau))


def hypothesis_check_large_field(ctx: FieldCtx, n: int, tau: Rational, delta: Rational,
                                 variant: str = "main") -> HypothesisReport:
    tau, delta, q = Fraction(tau), Fraction(delta), ctx.q
    failed = []
    if variant == "main":
        if tau <= 0:
            failed.append("tau > 0")
        if not 0 < delta < 1:
            failed.append("0 < delta < 1")
        if n < 5:
            failed.append("n >= 5")
        if tau > 0 and delta > 0:
            need = 32 * max(n * (1 + tau) / (tau * delta) ** 2, Fraction(n))
            if q < need:
                failed.append(f"q >= 32 max(n(1+tau)/(tau delta)^2, n) = {float(need):.6g}")
    elif variant == "improved":
        if tau <= 1:
            failed.append("tau > 1")
        if not 0 < delta < Fraction(1, 10):
            failed.append("0 < delta < 1/10")
        if n < 20:
            failed.append("n >= 20")
        if tau > 1 and delta > 0:
            need = _improved_M(n, tau, delta)
            if need > q:
                failed.append("q >= max(n(1+tau)/((tau-sqrt tau)^2 delta^2), n) "
                              f"= {float(need):.6g}")
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return HypothesisReport(not failed, tuple(failed))


# --- F_2 -----------------------------------------------------------------------

def injective_t(set_size: int, delta: Rational) -> int:
    """Smallest t >= 0 with 2**t >= |S|(|S|-1)/(2 delta)."""
    delta = Fraction(delta)
    if set_size < 2:
        raise ValueError("need |S| >= 2")
    if not 0 < delta <= 1:
        raise ValueError("need 0 < delta <= 1")
    return max(0, ceil_log2(Fraction(set_size * (set_size - 1)) / (2 * delta)))


def prehash_dimension(set_size: int, delta: Fraction) -> int:
    # ceil(log2(|S|(|S|-1)/delta)), i.e. the injective length at delta/2
    return injective_t(set_size, delta / 2)


def _embedding_recipe(variant: str, n: int, set_size: int, ell: int,
                      min_n_prime: int) -> tuple[int, int, int]:
    """Run the F_{2^ell} embedding: returns (q, n_prime, r) or raises."""
    q = 2**ell
    n_prime = -(-n // ell)
    r = log_q_bracket(q, set_size)
    problems = []
    if n_prime < min_n_prime:
        problems.append(f"n' = ceil(n/ell) = {n_prime} < {min_n_prime}")
    if r < 4:
        problems.append(f"r = {r} < 4 (|S| <= q**4 with q = 2**{ell})")
    if r > n_prime - 1:
        problems.append(f"r = {r} > n' - 1 = {n_prime - 1}")
    if problems:
        raise ParameterError(f"{variant}: embedding recipe not applicable", problems)
    return q, n_prime, r


def choose_t_binary(n: int, set_size: int, tau: Rational, delta: Rational,
                    variant: str = "thm22", *, check: bool = True) -> HashParams:
    """Output length for hashing S in F_2^n, built through an extension field.

    ``variant`` selects the rule:

    * ``thm22``: direct rule, q = 2**ceil(log2(32 max(n(1+tau)/(tau delta)^2, n))).
    * ``thm24``: pre-hash to m = ceil(log2(|S|(|S|-1)/delta)) bits, then
      ``thm22`` on m variables at delta/2.
    * ``thm25_binary``: the tau > 1 rule without the factor 32.
    * ``thm26``: pre-hash followed by ``thm25_binary`` at delta/2.

    With ``check=False`` the stated side conditions are reported in ``notes``
    instead of raising; the embedding itself must still be applicable.
    """
    tau, delta = Fraction(tau), Fraction(delta)
    if variant not in BINARY_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if tau <= 0:
        raise ParameterError("tau must be positive")
    if not 0 < delta < 1:
        raise ParameterError("delta must lie in (0, 1)")
    if set_size < 2:
        raise ParameterError("need |S| >= 2")
    if set_size > 2**n:
        raise ParameterError(f"|S| = {set_size} exceeds 2**n")

    failed: list[str] = []
    if variant == "thm22":
        M = max(n * (1 + tau) / (tau * delta) ** 2, Fraction(n))
        if not set_size > 2**20 * M**4:
            failed.append("|S| > 2^20 max(n^4(1+tau)^4/(tau delta)^8, n^4)")
        if not n >= 5 * ceil_log2(M) + 25:
            failed.append("n >= 5 ceil(log2 max(n(1+tau)/(tau delta)^2, n)) + 25")
        inner_n, m, min_np = n, None, 5
        ell = ceil_log2(32 * M)
        bound_X, bound_shift = M, 20
    elif variant == "thm24":
        if not tau < 1:
            failed.append("tau < 1")
        m = prehash_dimension(set_size, delta)
        X = m * max(4 * (1 + tau) / (tau * delta) ** 2, Fraction(1))
        if not set_size > 2**20 * m * max(2**8 * (1 + tau) ** 4 / (tau * delta) ** 8, Fraction(1)):
            failed.append("|S| > 2^20 m max(2^8(1+tau)^4/(tau delta)^8, 1)")
        # m >= 5 log2(X) + 25  <=>  2**(m-25) >= X**5
        if not (m >= 25 and Fraction(2) ** (m - 25) >= X**5):
            failed.append("m >= 5 log2(m max(4(1+tau)/(tau delta)^2, 1)) + 25")
        inner_n, min_np = m, 5
        inner_M = max(m * (1 + tau) / (tau * delta / 2) ** 2, Fraction(m))
        ell = ceil_log2(32 * inner_M)
        bound_X, bound_shift = X, 20
    else:
        if not tau > 1:
            raise ParameterError(f"{variant} needs tau > 1")
        if not delta <= Fraction(1, 10):
            failed.append("delta <= 1/10")
        if variant == "thm25_binary":
            Mi = _improved_M(n, tau, delta)
            if not Mi**4 < set_size:
                failed.append("|S| > max(n^4(1+tau)^4/((tau-sqrt tau) delta)^8, n^4)")
            if not n >= 20 * ceil_log2(Mi):
                failed.append("n >= 20 ceil(log2 max(n(1+tau)/((tau-sqrt tau) delta)^2, n))")
            inner_n, m = n, None
            ell = ceil_log2(Mi)
            bound_X = Mi
        else:
            m = prehash_dimension(set_size, delta)
            root = Surd(Fraction(0), Fraction(1), tau)
            gap_sq = (tau - root) ** 2
            X = m * _max(4 * (1 + tau) / (gap_sq * delta * delta), Surd.lift(1, tau))
            if not X**4 < set_size:
                failed.append("|S| > m^4 max(2^8(1+tau)^4/((tau-sqrt tau) delta)^8, 1)")
            if not m >= 20 * ceil_log2(X):
                failed.append("m >= 20 ceil(log2(m max(4(1+tau)/((tau-sqrt tau) delta)^2, 1)))")
            inner_n = m
            ell = ceil_log2(_improved_M(m, tau, delta / 2))
            bound_X = X
        min_np, bound_shift = 20, 0

    if failed and check:
        raise ParameterError(f"{variant} side conditions violated", failed)

    q, n_prime, r = _embedding_recipe(variant, inner_n, set_size, ell, min_np)
    t = (r - 3) * ell
    # t >= log2|S| - 4 log2(X) - shift  <=>  2**(t + shift) * X**4 >= |S|
    meets = bound_X**4 * Fraction(2) ** (t + bound_shift) >= set_size
    stated = math.log2(set_size) - 4 * math.log2(float(bound_X)) - bound_shift
    loss = Fraction(ceil_log2(set_size) - t)
    notes = tuple(f"unchecked: {c}" for c in failed)
    return HashParams(variant, t, loss, tau=tau, delta=delta, q=q, ell=ell,
                      n_prime=n_prime, r=r, m=m, stated_bound=stated,
                      meets_stated_bound=bool(meets), notes=notes)
