"""Exact arithmetic and linear algebra over finite fields F_q, q = p**ell.

Field elements are plain integers in ``range(q)``; digit ``i`` of the base-p
expansion is the coefficient of ``x**i`` in the polynomial representation.
Every operation on :class:`FieldCtx` accepts either Python ints or integer
numpy arrays, so matrices are simply ``int64`` arrays of such encodings.

Vectors of F_q^n are encoded as integers too (base q, coordinate 0 most
significant). Point sets, flats and bucket indices all share that encoding.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

import numpy as np

__all__ = [
    "BudgetExceeded",
    "DEFAULT_BUDGET",
    "check_budget",
    "coset_indices",
    "default_budget",
    "enumerate_surjective_maps",
    "field_of_order",
    "FieldCtx",
    "FieldElem",
    "Flat",
    "LinearMap",
    "MatrixFq",
    "Subspace",
    "decode_index",
    "encode_vectors",
    "enumerate_flats",
    "enumerate_subspaces",
    "field_arith",
    "field_make",
    "flat_canonicalize",
    "gaussian_binomial",
    "mat_kernel",
    "mat_rank",
    "mat_rref",
    "sample_surjective_map",
]


DEFAULT_BUDGET = 10**8


class BudgetExceeded(RuntimeError):
    """An exhaustive enumeration would exceed its configured work budget."""


def default_budget() -> int:
    """Work budget from ``KAKEYA_HASH_BUDGET``, else 10**8."""
    env = os.environ.get("KAKEYA_HASH_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def check_budget(cost: int, budget: int | None, what: str) -> None:
    budget = default_budget() if budget is None else budget
    if cost > budget:
        raise BudgetExceeded(f"{what} needs {cost} units of work > budget {budget}")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# --- polynomials over F_p, coefficient lists low degree first ---------------

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_rem(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    r = _poly_trim(list(a))
    b = _poly_trim(list(b))
    inv_lead = pow(b[-1], -1, p)
    while len(r) >= len(b):
        c = r[-1] * inv_lead % p
        shift = len(r) - len(b)
        for i, bi in enumerate(b):
            r[shift + i] = (r[shift + i] - c * bi) % p
        _poly_trim(r)
    return r


def _is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for low in range(p**d):
            divisor = [(low // p**i) % p for i in range(d)] + [1]
            if not _poly_rem(poly, divisor, p):
                return False
    return True


def _smallest_irreducible(p: int, ell: int) -> tuple[int, ...]:
    # Lower coefficients read high-degree-first are the base-p digits of v.
    for v in range(p**ell):
        poly = [(v // p**i) % p for i in range(ell)] + [1]
        if _is_irreducible(poly, p):
            return tuple(poly)
    raise AssertionError(f"no irreducible polynomial of degree {ell} over F_{p}")


@dataclass(frozen=True)
class FieldCtx:
    """The finite field F_q with q = p**ell.

    ``modulus`` holds the monic irreducible used for the extension, lowest
    degree first (``None`` for prime fields). Build instances with
    :func:`field_make`, which picks the modulus deterministically.
    """

    p: int
    ell: int = 1
    modulus: tuple[int, ...] | None = None
    q: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "q", self.p**self.ell)

    def __repr__(self):
        if self.ell == 1:
            return f"FieldCtx(F_{self.p})"
        return f"FieldCtx(F_{self.q}, modulus={self.modulus})"

    # -- tables ---------------------------------------------------------

    @cached_property
    def _digits(self) -> np.ndarray:
        vals = np.arange(self.q, dtype=np.int64)
        return np.stack([(vals // self.p**i) % self.p for i in range(self.ell)], axis=1)

    @cached_property
    def _weights(self) -> np.ndarray:
        return np.array([self.p**i for i in range(self.ell)], dtype=np.int64)

    def _polymul(self, a: int, b: int) -> int:
        """Scalar product in the extension via schoolbook multiply + reduction."""
        p, ell = self.p, self.ell
        if p == 2:
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
                if a >> ell & 1:
                    a ^= sum(c << i for i, c in enumerate(self.modulus))
            return r
        da = [(a // p**i) % p for i in range(ell)]
        db = [(b // p**i) % p for i in range(ell)]
        prod = [0] * (2 * ell - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        rem = _poly_rem(prod, self.modulus, p)
        return sum(c * p**i for i, c in enumerate(rem))

    @cached_property
    def _exp_log(self) -> tuple[np.ndarray, np.ndarray]:
        q = self.q
        factors = _prime_factors(q - 1)

        def power(g, e):
            r = 1
            while e:
                if e & 1:
                    r = self._polymul(r, g)
                g = self._polymul(g, g)
                e >>= 1
            return r

        for g in range(2, q):
            if all(power(g, (q - 1) // f) != 1 for f in factors):
                break
        else:  # q == 2 is handled by the prime path
            raise AssertionError("no primitive element found")
        exp = np.zeros(q - 1, dtype=np.int64)
        log = np.zeros(q, dtype=np.int64)
        cur = 1
        for i in range(q - 1):
            exp[i] = cur
            log[cur] = i
            cur = self._polymul(cur, g)
        return exp, log

    @cached_property
    def _exp_log_lists(self) -> tuple[list[int], list[int]]:
        exp, log = self._exp_log
        return exp.tolist(), log.tolist()

    # -- arithmetic on ints or int arrays ---------------------------------

    def add(self, a, b):
        if self.ell == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if isinstance(a, (int, np.integer)) and isinstance(b, (int, np.integer)):
            p, r, w = self.p, 0, 1
            a, b = int(a), int(b)
            for _ in range(self.ell):
                r += ((a % p + b % p) % p) * w
                a //= p
                b //= p
                w *= p
            return r
        d = self._digits
        return ((d[a] + d[b]) % self.p) @ self._weights

    def neg(self, a):
        if self.ell == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        if isinstance(a, (int, np.integer)):
            return self.scale(a, -1)
        return ((-self._digits[a]) % self.p) @ self._weights

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def scale(self, a, c: int):
        """Multiply element(s) ``a`` by the integer ``c`` (an element of F_p)."""
        c %= self.p
        if self.ell == 1:
            return (a * c) % self.p
        if isinstance(a, (int, np.integer)):
            p, r, w, a = self.p, 0, 1, int(a)
            for _ in range(self.ell):
                r += ((a % p) * c % p) * w
                a //= p
                w *= p
            return r
        return ((self._digits[a] * c) % self.p) @ self._weights

    def mul(self, a, b):
        if self.ell == 1:
            return (a * b) % self.p
        if isinstance(a, (int, np.integer)) and isinstance(b, (int, np.integer)):
            if a == 0 or b == 0:
                return 0
            exp, log = self._exp_log_lists
            return exp[(log[a] + log[b]) % (self.q - 1)]
        exp, log = self._exp_log
        a = np.asarray(a)
        b = np.asarray(b)
        out = exp[(log[a] + log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        if self.ell == 1:
            if isinstance(a, (int, np.integer)):
                return pow(int(a), -1, self.p)
            return np.array([pow(int(x), -1, self.p) for x in np.ravel(a)],
                            dtype=np.int64).reshape(np.shape(a))
        if isinstance(a, (int, np.integer)):
            exp, log = self._exp_log_lists
            return exp[(-log[a]) % (self.q - 1)]
        exp, log = self._exp_log
        return exp[(-log[np.asarray(a)]) % (self.q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            return 0
        if self.ell == 1:
            return pow(a, e, self.p)
        exp, log = self._exp_log_lists
        return exp[(log[a] * e) % (self.q - 1)]

    def matmul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.ell == 1:
            inner = A.shape[-1]
            if inner * (self.p - 1) ** 2 < 2**53:
                # exact in float64 and BLAS-backed
                prod = A.astype(np.float64) @ B.astype(np.float64)
                return prod.astype(np.int64) % self.p
            return (A @ B) % self.p
        out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        for j in range(A.shape[1]):
            out = self.add(out, self.mul(A[:, j, None], B[None, j, :]))
        return out

    # -- convenience ------------------------------------------------------

    def elem(self, value) -> "FieldElem":
        if isinstance(value, (list, tuple)):
            value = sum(c * self.p**i for i, c in enumerate(value))
        return FieldElem(self, int(value) % self.q if self.ell == 1 else int(value))

    def elements(self) -> range:
        return range(self.q)


@lru_cache(maxsize=None)
def field_make(p: int, ell: int = 1) -> FieldCtx:
    """Return F_{p**ell} with the lexicographically smallest monic irreducible."""
    if not _is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if ell < 1:
        raise ValueError("extension degree must be >= 1")
    if ell == 1:
        return FieldCtx(p, 1, None)
    return FieldCtx(p, ell, _smallest_irreducible(p, ell))


def field_of_order(q: int) -> FieldCtx:
    """The field with q elements; q must be a prime power."""
    factors = _prime_factors(q) if q > 1 else []
    if len(factors) != 1:
        raise ValueError(f"{q} is not a prime power")
    p, ell = factors[0], 0
    while q > 1:
        q //= p
        ell += 1
    return field_make(p, ell)


@dataclass(frozen=True)
class FieldElem:
    ctx: FieldCtx
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.ctx.q:
            raise ValueError(f"{self.value} is not an element of {self.ctx!r}")

    @property
    def coeffs(self) -> tuple[int, ...]:
        p, v = self.ctx.p, self.value
        return tuple((v // p**i) % p for i in range(self.ctx.ell))

    def _other(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.ctx != self.ctx:
                raise ValueError("field elements from different contexts")
            return other.value
        if isinstance(other, int):
            return self.ctx.elem(other).value
        return NotImplemented

    def __add__(self, other):
        return FieldElem(self.ctx, self.ctx.add(self.value, self._other(other)))

    def __sub__(self, other):
        return FieldElem(self.ctx, self.ctx.sub(self.value, self._other(other)))

    def __mul__(self, other):
        return FieldElem(self.ctx, self.ctx.mul(self.value, self._other(other)))

    def __truediv__(self, other):
        return FieldElem(self.ctx, self.ctx.div(self.value, self._other(other)))

    __radd__ = __add__
    __rmul__ = __mul__

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.neg(self.value))

    def inverse(self) -> "FieldElem":
        return FieldElem(self.ctx, self.ctx.inv(self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value}@F{self.ctx.q}"


def field_arith(a: FieldElem, b: FieldElem | None, op: str) -> FieldElem:
    """Dispatch ``op`` in {add, sub, mul, inv, div}; ``b`` is ignored for inv."""
    if op == "inv":
        return a.inverse()
    if a.ctx != b.ctx:
        raise ValueError("field elements from different contexts")
    ops = {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__, "div": a.__truediv__}
    if op not in ops:
        raise ValueError(f"unknown field operation {op!r}")
    return ops[op](b)


# --- matrices ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class MatrixFq:
    """Dense matrix over F_q; ``data`` is a read-only int64 array of encodings."""

    ctx: FieldCtx
    data: np.ndarray

    def __post_init__(self):
        arr = np.array(self.data, dtype=np.int64)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, 0)
        if arr.ndim != 2:
            raise ValueError("matrix data must be two-dimensional")
        if arr.size and (arr.min() < 0 or arr.max() >= self.ctx.q):
            raise ValueError("matrix entry outside the field")
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @classmethod
    def zeros(cls, ctx: FieldCtx, rows: int, cols: int) -> "MatrixFq":
        return cls(ctx, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, ctx: FieldCtx, n: int) -> "MatrixFq":
        return cls(ctx, np.eye(n, dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def entries(self) -> tuple[FieldElem, ...]:
        return tuple(FieldElem(self.ctx, int(v)) for v in self.data.ravel())

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()

    def __matmul__(self, other: "MatrixFq") -> "MatrixFq":
        if other.ctx != self.ctx or self.cols != other.rows:
            raise ValueError("incompatible matrices")
        return MatrixFq(self.ctx, self.ctx.matmul(self.data, other.data))

    def __eq__(self, other):
        return (isinstance(other, MatrixFq) and other.ctx == self.ctx
                and np.array_equal(self.data, other.data))

    def __hash__(self):
        return hash((self.ctx, self.data.shape, self.data.tobytes()))

    def __repr__(self):
        return f"MatrixFq(F{self.ctx.q}, {self.tolist()})"


def _rref_array(ctx: FieldCtx, data: np.ndarray) -> tuple[np.ndarray, list[int]]:
    A = np.array(data, dtype=np.int64)
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            A[[r, i]] = A[[i, r]]
        if A[r, c] != 1:
            A[r] = ctx.mul(A[r], ctx.inv(int(A[r, c])))
        col = A[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            A[hit] = ctx.sub(A[hit], ctx.mul(col[hit, None], A[r][None, :]))
        pivots.append(c)
        r += 1
    return A, pivots


def mat_rref(M: MatrixFq) -> tuple[MatrixFq, int, tuple[int, ...]]:
    """Reduced row-echelon form, rank and pivot columns.

    Elimination picks the leftmost remaining pivot column and, within it, the
    first nonzero row at or below the current one.
    """
    R, pivots = _rref_array(M.ctx, M.data)
    return MatrixFq(M.ctx, R), len(pivots), tuple(pivots)


def mat_rank(M: MatrixFq) -> int:
    return len(_rref_array(M.ctx, M.data)[1])


def mat_kernel(L: MatrixFq) -> "Subspace":
    """Right kernel {v : L v = 0} as a canonical subspace of F_q^cols."""
    ctx, n = L.ctx, L.cols
    R, pivots = _rref_array(ctx, L.data)
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((len(free), n), dtype=np.int64)
    for row, f in enumerate(free):
        basis[row, f] = 1
        for i, pc in enumerate(pivots):
            basis[row, pc] = ctx.neg(int(R[i, f]))
    return Subspace.from_rows(ctx, n, basis)


# --- vectors and point encodings -----------------------------------------------

def encode_vectors(ctx: FieldCtx, vecs) -> np.ndarray:
    """Base-q integer encoding of each row (coordinate 0 most significant)."""
    vecs = np.asarray(vecs, dtype=np.int64)
    n = vecs.shape[-1]
    if ctx.q**n >= 2**63:
        raise OverflowError(f"F_{ctx.q}^{n} does not fit an int64 index")
    weights = ctx.q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return vecs @ weights


def decode_index(ctx: FieldCtx, n: int, index) -> np.ndarray:
    index = np.asarray(index, dtype=np.int64)
    weights = ctx.q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return (index[..., None] // weights) % ctx.q


def _all_vectors(ctx: FieldCtx, n: int) -> np.ndarray:
    return decode_index(ctx, n, np.arange(ctx.q**n, dtype=np.int64))


# --- subspaces and flats ---------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """A k-dimensional subspace of F_q^n stored by its RREF basis.

    Two equal subspaces always have identical ``basis`` tuples, so dataclass
    equality and hashing are equality of subspaces.
    """

    ctx: FieldCtx
    n: int
    basis: tuple[tuple[int, ...], ...]
    pivots: tuple[int, ...]

    @classmethod
    def from_rows(cls, ctx: FieldCtx, n: int, rows) -> "Subspace":
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, n)
        R, pivots = _rref_array(ctx, rows)
        basis = tuple(tuple(int(x) for x in R[i]) for i in range(len(pivots)))
        return cls(ctx, n, basis, tuple(pivots))

    @classmethod
    def zero(cls, ctx: FieldCtx, n: int) -> "Subspace":
        return cls(ctx, n, (), ())

    @classmethod
    def full(cls, ctx: FieldCtx, n: int) -> "Subspace":
        return cls.from_rows(ctx, n, np.eye(n, dtype=np.int64))

    @property
    def k(self) -> int:
        return len(self.pivots)

    @property
    def matrix(self) -> MatrixFq:
        return MatrixFq(self.ctx, np.array(self.basis, dtype=np.int64).reshape(self.k, self.n))

    def vectors(self) -> np.ndarray:
        """All q**k vectors of the subspace, ordered by coefficient index."""
        coeffs = decode_index(self.ctx, self.k, np.arange(self.ctx.q**self.k))
        if self.k == 0:
            return np.zeros((1, self.n), dtype=np.int64)
        return self.ctx.matmul(coeffs, self.matrix.data)

    def point_indices(self) -> np.ndarray:
        return encode_vectors(self.ctx, self.vectors())

    def contains(self, v) -> bool:
        return self.reduce(v) == tuple(0 for _ in range(self.n))

    def reduce(self, v) -> tuple[int, ...]:
        """Canonical coset representative of ``v`` modulo this subspace."""
        ctx = self.ctx
        s = np.array(v, dtype=np.int64)
        for row, pc in zip(self.basis, self.pivots):
            c = int(s[pc])
            if c:
                s = ctx.sub(s, ctx.mul(np.array(row, dtype=np.int64), c))
        return tuple(int(x) for x in s)

    def issubspace(self, other: "Subspace") -> bool:
        return all(other.contains(row) for row in self.basis)

    def shifts(self) -> np.ndarray:
        """Canonical shifts (zero on pivots), lexicographic in the free coordinates."""
        free = [c for c in range(self.n) if c not in self.pivots]
        vals = decode_index(self.ctx, len(free), np.arange(self.ctx.q ** len(free)))
        out = np.zeros((len(vals), self.n), dtype=np.int64)
        out[:, free] = vals
        return out


@dataclass(frozen=True)
class Flat:
    """``shift + span(subspace)`` with ``shift`` zero on the pivot coordinates."""

    subspace: Subspace
    shift: tuple[int, ...]

    @property
    def k(self) -> int:
        return self.subspace.k

    @property
    def n(self) -> int:
        return self.subspace.n

    def vectors(self) -> np.ndarray:
        ctx = self.subspace.ctx
        return ctx.add(self.subspace.vectors(), np.array(self.shift, dtype=np.int64)[None, :])

    def point_indices(self) -> np.ndarray:
        return encode_vectors(self.subspace.ctx, self.vectors())


def flat_canonicalize(shift, sub: Subspace) -> Flat:
    if len(shift) != sub.n:
        raise ValueError("shift and subspace dimensions differ")
    return Flat(sub, sub.reduce(shift))


@lru_cache(maxsize=4096)
def coset_indices(sub: Subspace) -> np.ndarray:
    """Point indices of every coset: shape (q**(n-k), q**k), rows in shift order."""
    base = sub.vectors()
    shifts = sub.shifts()
    ctx = sub.ctx
    pts = ctx.add(shifts[:, None, :], base[None, :, :])
    out = encode_vectors(ctx, pts)
    out.setflags(write=False)
    return out


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (k - i) - 1
    return num // den


def enumerate_subspaces(ctx: FieldCtx, n: int, k: int) -> Iterator[Subspace]:
    """Every k-dimensional subspace once, ordered by (pivot set, free entries)."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    q = ctx.q
    for pivots in itertools.combinations(range(n), k):
        pset = set(pivots)
        slots = [(i, c) for i, pc in enumerate(pivots) for c in range(pc + 1, n) if c not in pset]
        for vals in itertools.product(range(q), repeat=len(slots)):
            rows = [[0] * n for _ in range(k)]
            for i, pc in enumerate(pivots):
                rows[i][pc] = 1
            for (i, c), v in zip(slots, vals):
                rows[i][c] = v
            yield Subspace(ctx, n, tuple(tuple(r) for r in rows), pivots)


def enumerate_flats(ctx: FieldCtx, n: int, k: int) -> Iterator[Flat]:
    for sub in enumerate_subspaces(ctx, n, k):
        for s in sub.shifts():
            yield Flat(sub, tuple(int(x) for x in s))


@dataclass(frozen=True)
class LinearMap:
    """A t x n matrix viewed as the hash x -> L x; ``surjective`` iff rank = t."""

    matrix: MatrixFq
    surjective: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "surjective", mat_rank(self.matrix) == self.matrix.rows)

    @property
    def ctx(self) -> FieldCtx:
        return self.matrix.ctx

    @property
    def t(self) -> int:
        return self.matrix.rows

    @property
    def n(self) -> int:
        return self.matrix.cols

    def kernel(self) -> Subspace:
        return mat_kernel(self.matrix)


def sample_surjective_map(rng: np.random.Generator, ctx: FieldCtx, n: int, t: int) -> LinearMap:
    """Uniform rank-t matrix in F_q^{t x n}, by rejection from uniform matrices."""
    if not 1 <= t <= n:
        raise ValueError(f"no surjective map F_q^{n} -> F_q^{t}")
    while True:
        data = rng.integers(0, ctx.q, size=(t, n), dtype=np.int64)
        if len(_rref_array(ctx, data)[1]) == t:
            return LinearMap(MatrixFq(ctx, data))


def enumerate_surjective_maps(ctx: FieldCtx, n: int, t: int) -> Iterator[LinearMap]:
    """All rank-t t x n matrices in row-major lexicographic order (tiny cases only)."""
    for flat in itertools.product(range(ctx.q), repeat=t * n):
        data = np.array(flat, dtype=np.int64).reshape(t, n)
        if len(_rref_array(ctx, data)[1]) == t:
            yield LinearMap(MatrixFq(ctx, data))
