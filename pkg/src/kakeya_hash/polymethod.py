"""Polynomial method with multiplicities over F_q.

Polynomials are sparse maps from exponent tuples to nonzero field elements.
Hasse derivatives use binomials reduced mod p by Lucas' theorem. The
evaluation matrices are evaluated either at points of F_q^n or at tuples of
linear forms ``u*t1 + v*t2``; in the latter case entries are bivariate
polynomials and F_q-ranks are ranks of the coefficient matrix.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .linalg import (
    FieldCtx,
    MatrixFq,
    check_budget,
    decode_index,
    mat_kernel,
    mat_rank,
    mat_rref,
)

INFINITY = math.inf
Exp = tuple[int, ...]


def binom_mod_p(a: int, i: int, p: int) -> int:
    """C(a, i) mod p via Lucas' theorem."""
    if i < 0 or i > a:
        return 0
    out = 1
    while a or i:
        ad, id_ = a % p, i % p
        if id_ > ad:
            return 0
        out = out * math.comb(ad, id_) % p
        a //= p
        i //= p
    return out


@lru_cache(maxsize=None)
def monomials(n: int, d: int) -> tuple[Exp, ...]:
    """Exponents of W_{d,n}: by total degree, then descending lexicographic."""
    if d < 0:
        return ()
    out: list[Exp] = []
    for deg in range(d + 1):
        out.extend(sorted(_compositions(deg, n), reverse=True))
    return tuple(out)


def _compositions(total: int, parts: int) -> Iterator[Exp]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def weight(j: Exp) -> int:
    return sum(j)


class MultiPoly:
    """Polynomial in ``nvars`` variables over ``ctx``; immutable once built."""

    __slots__ = ("ctx", "nvars", "terms")

    def __init__(self, ctx: FieldCtx, nvars: int, terms: dict | None = None):
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars or min(exp, default=0) < 0:
                raise ValueError(f"bad exponent {exp} for {nvars} variables")
            c = int(c) % ctx.p if ctx.ell == 1 else int(c)
            if not 0 <= c < ctx.q:
                raise ValueError(f"coefficient {c} not an element of F_{ctx.q}")
            if c:
                clean[exp] = c
        self.ctx = ctx
        self.nvars = nvars
        self.terms = clean

    # -- constructors -------------------------------------------------------------

    @classmethod
    def zero(cls, ctx: FieldCtx, nvars: int) -> "MultiPoly":
        return cls(ctx, nvars)

    @classmethod
    def constant(cls, ctx: FieldCtx, nvars: int, c: int) -> "MultiPoly":
        return cls(ctx, nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, ctx: FieldCtx, nvars: int, i: int) -> "MultiPoly":
        return cls.monomial(ctx, nvars, tuple(int(k == i) for k in range(nvars)))

    @classmethod
    def monomial(cls, ctx: FieldCtx, nvars: int, exp: Exp, coef: int = 1) -> "MultiPoly":
        return cls(ctx, nvars, {tuple(exp): coef})

    @classmethod
    def linear(cls, ctx: FieldCtx, coeffs: Sequence[int], const: int = 0) -> "MultiPoly":
        """const + sum_i coeffs[i] * x_i."""
        n = len(coeffs)
        terms = {(0,) * n: const}
        for i, c in enumerate(coeffs):
            terms[tuple(int(k == i) for k in range(n))] = c
        return cls(ctx, n, terms)

    # -- basic properties ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> float | int:
        """Total degree; ``-inf`` for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-INFINITY)

    def coefficient(self, exp: Exp) -> int:
        return self.terms.get(tuple(exp), 0)

    def __eq__(self, other):
        if isinstance(other, int):
            other = MultiPoly.constant(self.ctx, self.nvars, other)
        return (isinstance(other, MultiPoly) and self.ctx == other.ctx
                and self.nvars == other.nvars and self.terms == other.terms)

    def __hash__(self):
        return hash((self.ctx, self.nvars, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp in sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
            c = self.terms[exp]
            mono = "*".join(f"x{i}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(exp) if e)
            if not mono:
                parts.append(str(c))
            else:
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts)

    # -- ring operations ----------------------------------------------------------

    def _same(self, other: "MultiPoly") -> None:
        if not isinstance(other, MultiPoly):
            raise TypeError("expected a MultiPoly")
        if other.ctx != self.ctx or other.nvars != self.nvars:
            raise ValueError("polynomials over different rings")

    def _lift(self, other) -> "MultiPoly":
        if isinstance(other, (int, np.integer)):
            return MultiPoly.constant(self.ctx, self.nvars, int(other))
        self._same(other)
        return other

    def __add__(self, other):
        other = self._lift(other)
        add = self.ctx.add
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = add(terms.get(e, 0), c)
        return MultiPoly(self.ctx, self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        neg = self.ctx.neg
        return MultiPoly(self.ctx, self.nvars, {e: neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        add, mul = self.ctx.add, self.ctx.mul
        terms: dict[Exp, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = add(terms.get(e, 0), mul(c1, c2))
        return MultiPoly(self.ctx, self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = MultiPoly.constant(self.ctx, self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- evaluation and composition -----------------------------------------------

    def eval_at(self, point) -> int:
        point = [int(x) for x in point]
        if len(point) != self.nvars:
            raise ValueError("point has the wrong dimension")
        ctx = self.ctx
        acc = 0
        for exp, c in self.terms.items():
            v = c
            for x, e in zip(point, exp):
                if e:
                    v = ctx.mul(v, ctx.pow(x, e))
            acc = ctx.add(acc, v)
        return acc

    def eval_many(self, points: np.ndarray) -> np.ndarray:
        """Evaluate at every row of an (N, nvars) array."""
        points = np.asarray(points, dtype=np.int64).reshape(-1, self.nvars)
        ctx = self.ctx
        out = np.zeros(len(points), dtype=np.int64)
        if not self.terms:
            return out
        top = max(max(e) for e in self.terms)
        powers = [np.ones_like(points)]
        for _ in range(top):
            powers.append(ctx.mul(powers[-1], points))
        for exp, c in self.terms.items():
            v = np.full(len(points), c, dtype=np.int64)
            for i, e in enumerate(exp):
                if e:
                    v = ctx.mul(v, powers[e][:, i])
            out = ctx.add(out, v)
        return out

    def substitute(self, polys: Sequence["MultiPoly"]) -> "MultiPoly":
        """f(H_1, ..., H_n) for polynomials H_i in a common ring."""
        if len(polys) != self.nvars:
            raise ValueError(f"need {self.nvars} substitutions, got {len(polys)}")
        if not polys:
            return self
        ctx, m = polys[0].ctx, polys[0].nvars
        for h in polys:
            if h.ctx != ctx or h.nvars != m:
                raise ValueError("substitutions live in different rings")
        cache: dict[tuple[int, int], MultiPoly] = {}

        def power(i: int, e: int) -> MultiPoly:
            if (i, e) not in cache:
                cache[(i, e)] = polys[i] ** e
            return cache[(i, e)]

        out = MultiPoly.zero(ctx, m)
        for exp, c in self.terms.items():
            term = MultiPoly.constant(ctx, m, c)
            for i, e in enumerate(exp):
                if e:
                    term = term * power(i, e)
            out = out + term
        return out

    def shift(self, a) -> "MultiPoly":
        """f(x + a)."""
        a = [int(x) for x in a]
        return self.substitute([MultiPoly.linear(self.ctx, [int(k == i) for k in range(self.nvars)], a[i])
                                for i in range(self.nvars)])


def poly_arith(f: MultiPoly, g, op: str):
    """Dispatch for add, sub, mul, eval_at (g a point) and substitute (g polys)."""
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "eval_at":
        return f.eval_at(g)
    if op == "substitute":
        return f.substitute(g)
    raise ValueError(f"unknown op {op!r}")


def random_poly(rng: np.random.Generator, ctx: FieldCtx, nvars: int, d: int,
                density: float = 0.5) -> MultiPoly:
    """Random polynomial of degree <= d; each monomial kept with prob. density."""
    terms = {}
    for exp in monomials(nvars, d):
        if rng.random() < density:
            terms[exp] = int(rng.integers(0, ctx.q))
    return MultiPoly(ctx, nvars, terms)


# --- Hasse derivatives and multiplicities --------------------------------------------

def hasse_derivative(f: MultiPoly, i: Exp) -> MultiPoly:
    """Coefficient of z**i in f(x + z): x**a -> prod C(a_k, i_k) x**(a - i)."""
    i = tuple(i)
    if len(i) != f.nvars:
        raise ValueError("multi-index has the wrong length")
    ctx, p = f.ctx, f.ctx.p
    terms: dict[Exp, int] = {}
    for a, c in f.terms.items():
        b = 1
        for ak, ik in zip(a, i):
            b = b * binom_mod_p(ak, ik, p) % p
            if not b:
                break
        if b:
            e = tuple(ak - ik for ak, ik in zip(a, i))
            terms[e] = ctx.add(terms.get(e, 0), ctx.scale(c, b))
    return MultiPoly(ctx, f.nvars, terms)


def chain_rule_pair(f: MultiPoly, i: Exp, j: Exp) -> tuple[MultiPoly, MultiPoly]:
    """(f^(i))^(j) and f^(i+j) * prod C(i_k + j_k, i_k); these must agree."""
    lhs = hasse_derivative(hasse_derivative(f, i), j)
    p = f.ctx.p
    b = 1
    for ik, jk in zip(i, j):
        b = b * binom_mod_p(ik + jk, ik, p) % p
    ij = tuple(a + b_ for a, b_ in zip(i, j))
    rhs = hasse_derivative(f, ij) * b
    return lhs, rhs


def multiplicity(f: MultiPoly, a) -> int | float:
    """Largest m such that every Hasse derivative of weight < m vanishes at a."""
    if f.is_zero():
        return INFINITY
    for w in range(int(f.degree) + 1):
        for j in _compositions(w, f.nvars):
            if hasse_derivative(f, j).eval_at(a):
                return w
    raise AssertionError("a nonzero polynomial has a nonvanishing derivative")


def multiplicities(f: MultiPoly, points: np.ndarray) -> np.ndarray:
    """Multiplicity of f at each row of ``points`` (f must be nonzero)."""
    if f.is_zero():
        raise ValueError("multiplicities of the zero polynomial are infinite")
    points = np.asarray(points, dtype=np.int64).reshape(-1, f.nvars)
    out = np.full(len(points), -1, dtype=np.int64)
    for w in range(int(f.degree) + 1):
        hit = np.zeros(len(points), dtype=bool)
        for j in _compositions(w, f.nvars):
            hit |= hasse_derivative(f, j).eval_many(points) != 0
        out[(out < 0) & hit] = w
        if np.all(out >= 0):
            break
    return out


@dataclass(frozen=True)
class SZAudit:
    total_mult: int
    bound: int
    passed: bool
    equality: bool


def sz_audit(f: MultiPoly, U: Sequence[int] | None = None, d: int | None = None) -> SZAudit:
    """Sum of multiplicities over U**n against d |U|**(n-1)."""
    if f.is_zero():
        raise ValueError("the audit needs a nonzero polynomial")
    U = list(range(f.ctx.q)) if U is None else [int(u) for u in U]
    d = int(f.degree) if d is None else d
    if d < f.degree:
        raise ValueError("d is below the degree of f")
    n = f.nvars
    pts = np.array(list(itertools.product(U, repeat=n)), dtype=np.int64).reshape(-1, n)
    total = int(multiplicities(f, pts).sum())
    bound = d * len(U) ** (n - 1)
    return SZAudit(total, bound, total <= bound, total == bound)


@dataclass(frozen=True)
class CompositionAudit:
    lhs: int | float
    rhs: int | float
    passed: bool


def mult_composition_audit(f: MultiPoly, H: Sequence[MultiPoly], a) -> CompositionAudit:
    """mult(f o H, a) >= mult(f, H(a))."""
    if len(H) != f.nvars:
        raise ValueError(f"need {f.nvars} component polynomials, got {len(H)}")
    if any(len(a) != h.nvars for h in H):
        raise ValueError("point and component arities differ")
    lhs = multiplicity(f.substitute(H), a)
    rhs = multiplicity(f, [h.eval_at(a) for h in H])
    return CompositionAudit(lhs, rhs, lhs >= rhs)


# --- linear-form points and evaluation matrices --------------------------------------

@dataclass(frozen=True)
class LinearFormVector:
    """The n-tuple of linear forms u*t1 + v*t2 over F_q."""

    ctx: FieldCtx
    u: tuple[int, ...]
    v: tuple[int, ...]

    def __post_init__(self):
        if len(self.u) != len(self.v):
            raise ValueError("u and v differ in length")

    @property
    def n(self) -> int:
        return len(self.u)

    @property
    def is_full(self) -> bool:
        return mat_rank(MatrixFq(self.ctx, [list(self.u), list(self.v)])) == 2

    def as_polys(self) -> list[MultiPoly]:
        return [MultiPoly(self.ctx, 2, {(1, 0): a, (0, 1): b}) for a, b in zip(self.u, self.v)]

    def evaluate(self, t1: int, t2: int) -> tuple[int, ...]:
        ctx = self.ctx
        return tuple(ctx.add(ctx.mul(a, t1), ctx.mul(b, t2)) for a, b in zip(self.u, self.v))


def v_size(q: int, n: int, full_only: bool) -> int:
    if full_only:
        return (q**n - 1) * (q**n - q)
    return q ** (2 * n)


def enumerate_V(ctx: FieldCtx, n: int, full_only: bool = False, *,
                budget: int | None = None) -> Iterator[LinearFormVector]:
    """All (u, v) in (F_q^n)^2, u major; optionally only linearly independent pairs."""
    check_budget(ctx.q ** (2 * n), budget, "enumerate_V")
    vecs = [tuple(int(x) for x in row) for row in decode_index(ctx, n, np.arange(ctx.q**n))]
    for u in vecs:
        for v in vecs:
            lf = LinearFormVector(ctx, u, v)
            if not full_only or lf.is_full:
                yield lf


@dataclass(frozen=True)
class EvalMatrix:
    """EVAL^m(S, W): rows (point, j) with wt(j) < m, columns the monomials of W.

    ``entries`` is a list of rows; entries are ints for plain points and
    bivariate :class:`MultiPoly` values for linear-form points.
    """

    ctx: FieldCtx
    row_labels: tuple
    col_labels: tuple[Exp, ...]
    entries: tuple[tuple, ...]
    symbolic: bool

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_labels), len(self.col_labels)

    def max_degree(self) -> int:
        if not self.symbolic:
            return 0
        return max((int(e.degree) for row in self.entries for e in row if not e.is_zero()), default=0)


def _derivative_of_monomial(ctx: FieldCtx, a: Exp, j: Exp) -> tuple[int, Exp] | None:
    p = ctx.p
    b = 1
    for ak, jk in zip(a, j):
        b = b * binom_mod_p(ak, jk, p) % p
        if not b:
            return None
    return b, tuple(ak - jk for ak, jk in zip(a, j))


def build_eval_matrix(points: Sequence, W: Sequence[Exp], m: int, *,
                      ctx: FieldCtx | None = None, n: int | None = None) -> EvalMatrix:
    """Entry ((x, j), w) = (x**w)^(j) evaluated at x.

    ``points`` holds plain vectors of F_q^n or :class:`LinearFormVector`
    values (all of one kind). ``ctx`` and ``n`` are needed only when
    ``points`` and ``W`` are both empty of that information.
    """
    points = list(points)
    W = tuple(tuple(w) for w in W)
    symbolic = bool(points) and isinstance(points[0], LinearFormVector)
    if points:
        if symbolic:
            ctx = points[0].ctx
            n = points[0].n
        elif ctx is None:
            raise ValueError("plain points need ctx")
        else:
            n = len(points[0])
    if n is None:
        n = len(W[0]) if W else 0
    if any(len(w) != n for w in W):
        raise ValueError("monomial arity differs from point dimension")
    js = monomials(n, m - 1)
    rows, labels = [], []
    for x in points:
        if symbolic:
            forms = x.as_polys()
            cache: dict[tuple[int, int], MultiPoly] = {}

            def power(i: int, e: int) -> MultiPoly:
                if (i, e) not in cache:
                    cache[(i, e)] = forms[i] ** e
                return cache[(i, e)]
        else:
            x = tuple(int(c) for c in x)
        for j in js:
            row = []
            for w in W:
                dm = _derivative_of_monomial(ctx, w, j)
                if symbolic:
                    if dm is None:
                        row.append(MultiPoly.zero(ctx, 2))
                        continue
                    b, e = dm
                    val = MultiPoly.constant(ctx, 2, b)
                    for i, ei in enumerate(e):
                        if ei:
                            val = val * power(i, ei)
                    row.append(val)
                else:
                    if dm is None:
                        row.append(0)
                        continue
                    b, e = dm
                    val = b % ctx.p
                    for xi, ei in zip(x, e):
                        if ei:
                            val = ctx.mul(val, ctx.pow(xi, ei))
                    row.append(val)
            rows.append(tuple(row))
            labels.append((x, j))
    return EvalMatrix(ctx, tuple(labels), W, tuple(rows), symbolic)


@dataclass(frozen=True)
class CoeffMatrix:
    """Coefficient matrix; row ((i, j), k) holds the t1^i t2^j coefficients of entry row k."""

    matrix: MatrixFq
    row_labels: tuple[tuple[Exp, int], ...]
    degree: int


def coeff_matrix(E: EvalMatrix | Sequence[Sequence[MultiPoly]], d: int, *,
                 ctx: FieldCtx | None = None) -> CoeffMatrix:
    """Replace each bivariate entry by the column of its coefficients.

    Rows are grouped by entry row k (outer) and monomial t1^i t2^j (inner,
    in the order of ``monomials(2, d)``).
    """
    if isinstance(E, EvalMatrix):
        ctx, entries, symbolic = E.ctx, E.entries, E.symbolic
        ncols = len(E.col_labels)
    else:
        entries = tuple(tuple(row) for row in E)
        if ctx is None:
            ctx = next((e.ctx for row in entries for e in row), None)
            if ctx is None:
                raise ValueError("cannot infer the field of an empty matrix")
        symbolic = True
        ncols = len(entries[0]) if entries else 0
    mons = monomials(2, d)
    out = np.zeros((len(entries) * len(mons), ncols), dtype=np.int64)
    labels = []
    for k, row in enumerate(entries):
        for idx, mon in enumerate(mons):
            labels.append((mon, k))
        for col, e in enumerate(row):
            if not symbolic:
                out[k * len(mons), col] = int(e)
                continue
            if e.degree > d:
                raise ValueError(f"entry ({k}, {col}) has degree {e.degree} > {d}")
            for exp, c in e.terms.items():
                out[k * len(mons) + mons.index(exp), col] = c
    return CoeffMatrix(MatrixFq(ctx, out.reshape(len(labels), ncols)), tuple(labels), d)


def fq_rank(E: EvalMatrix | Sequence[Sequence[MultiPoly]]) -> int:
    """Largest number of F_q-independent columns."""
    if not isinstance(E, EvalMatrix):
        rows = [list(r) for r in E]
        if not rows or not rows[0]:
            return 0
        d = max(max(int(e.degree), 0) for r in rows for e in r)
        return mat_rank(coeff_matrix(rows, d).matrix)
    if E.shape[1] == 0 or E.shape[0] == 0:
        return 0
    return mat_rank(coeff_matrix(E, E.max_degree()).matrix)


# --- rank lemmas and good monomials --------------------------------------------------

@dataclass(frozen=True)
class RankAudit:
    rank: int
    target: int
    passed: bool
    kind: str
    rows: int
    delta: Fraction = Fraction(1)


def _check_degree(q: int, m: int, d: int) -> None:
    if d >= m * q * q:
        raise ValueError(f"need d < m q^2 = {m * q * q}, got d = {d}")


def rank_lemma_audit(ctx: FieldCtx, n: int, m: int, d: int, subset="V", *,
                     budget: int | None = None) -> RankAudit:
    """F_q-rank of EVAL^m(subset, W_{d,n}) against the lemma's target.

    ``subset`` is ``"V"``, ``"V_full"`` (target: equality with C(d+n, n))
    or an explicit collection of full linear-form vectors (target: at least
    ceil(delta C(d+n, n)) with delta = |S| / |V_full|).
    """
    _check_degree(ctx.q, m, d)
    W = monomials(n, d)
    full = len(W)
    if isinstance(subset, str):
        if subset not in ("V", "V_full"):
            raise ValueError(f"unknown subset {subset!r}")
        pts = list(enumerate_V(ctx, n, subset == "V_full", budget=budget))
        delta = Fraction(1)
        target = full
    else:
        pts = list(subset)
        if not all(isinstance(x, LinearFormVector) and x.is_full for x in pts):
            raise ValueError("explicit subsets must consist of full linear-form vectors")
        if len(set(pts)) != len(pts):
            raise ValueError("explicit subset has repeated elements")
        delta = Fraction(len(pts), v_size(ctx.q, n, True))
        target = math.ceil(delta * full)
    check_budget(len(pts) * math.comb(m - 1 + n, n) * full * math.comb(d + 2, 2), budget,
                 "rank_lemma_audit")
    E = build_eval_matrix(pts, W, m, ctx=ctx, n=n)
    rank = fq_rank(E)
    kind = subset if isinstance(subset, str) else "subset"
    passed = rank == target if kind != "subset" else rank >= target
    return RankAudit(rank, target, passed, kind, E.shape[0], delta)


@dataclass(frozen=True)
class GoodMonomials:
    monomials: tuple[Exp, ...]
    target: int
    delta: Fraction
    certificate_rank: int

    @property
    def passed(self) -> bool:
        return len(self.monomials) >= self.target and self.certificate_rank == len(self.monomials)


def select_good_monomials(S: Sequence[LinearFormVector], d: int, r: int, *,
                          ctx: FieldCtx | None = None, n: int | None = None) -> GoodMonomials:
    """A maximal F_q-independent set of columns of EVAL^r(S, W_{d,n}), greedy in monomial order."""
    S = list(S)
    if S:
        ctx, n = S[0].ctx, S[0].n
    elif ctx is None or n is None:
        raise ValueError("an empty S needs ctx and n")
    _check_degree(ctx.q, r, d)
    W = monomials(n, d)
    delta = Fraction(len(S), v_size(ctx.q, n, True))
    target = math.ceil(delta * len(W))
    if not S:
        return GoodMonomials((), target, delta, 0)
    E = build_eval_matrix(S, W, r)
    C = coeff_matrix(E, d).matrix
    _, _, pivots = mat_rref(C)
    chosen = tuple(W[c] for c in pivots)
    sub = MatrixFq(ctx, C.data[:, list(pivots)].reshape(C.rows, len(pivots)))
    return GoodMonomials(chosen, target, delta, mat_rank(sub))


def vanishes_to_order(Q: MultiPoly, S: Iterable[LinearFormVector], r: int) -> bool:
    """Whether every Hasse derivative of weight < r of Q is zero at every u*t1 + v*t2."""
    for x in S:
        forms = x.as_polys()
        for j in monomials(Q.nvars, r - 1):
            if not hasse_derivative(Q, j).substitute(forms).is_zero():
                return False
    return True


def combination_kernel(S: Sequence[LinearFormVector], P: Sequence[Exp], r: int):
    """Kernel of the coefficient matrix restricted to the columns P."""
    S = list(S)
    E = build_eval_matrix(S, P, r)
    C = coeff_matrix(E, max(sum(p) for p in P) if P else 0)
    return mat_kernel(C.matrix)
