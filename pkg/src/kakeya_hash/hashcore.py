"""Point sets, bucket histograms and distances to uniform."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

import numpy as np

from .linalg import (
    FieldCtx,
    LinearMap,
    MatrixFq,
    decode_index,
    encode_vectors,
    field_make,
    sample_surjective_map,
)
from .params import ParameterError, choose_t_binary, injective_t


@dataclass(frozen=True, eq=False)
class PointSet:
    """A finite subset of F_q^n, rows sorted lexicographically and unique.

    Lexicographic row order is the same as ascending base-q index order, so
    ``indices`` (when the ambient space fits an int64) is sorted too.
    """

    ctx: FieldCtx
    n: int
    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.int64).reshape(-1, self.n)
        if pts.size and (pts.min() < 0 or pts.max() >= self.ctx.q):
            raise ValueError(f"coordinates must lie in range({self.ctx.q})")
        if len(pts) > 1:
            pts = np.unique(pts, axis=0)
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_vectors(cls, ctx: FieldCtx, n: int, vectors) -> "PointSet":
        return cls(ctx, n, np.asarray(vectors, dtype=np.int64).reshape(-1, n))

    @classmethod
    def from_indices(cls, ctx: FieldCtx, n: int, indices) -> "PointSet":
        return cls(ctx, n, decode_index(ctx, n, np.asarray(indices, dtype=np.int64).ravel()))

    @classmethod
    def from_mask(cls, ctx: FieldCtx, n: int, mask: int) -> "PointSet":
        """Bit i of ``mask`` set means the point with index i is in the set."""
        idx = [i for i in range(ctx.q**n) if mask >> i & 1]
        return cls.from_indices(ctx, n, idx)

    @classmethod
    def full(cls, ctx: FieldCtx, n: int) -> "PointSet":
        return cls.from_indices(ctx, n, np.arange(ctx.q**n))

    @classmethod
    def empty(cls, ctx: FieldCtx, n: int) -> "PointSet":
        return cls(ctx, n, np.zeros((0, n), dtype=np.int64))

    @classmethod
    def random(cls, rng: np.random.Generator, ctx: FieldCtx, n: int, size: int) -> "PointSet":
        """Uniformly random subset of the given size."""
        if size < 0:
            raise ValueError("size must be nonnegative")
        if n * np.log2(ctx.q) < 62:
            total = ctx.q**n
            if size > total:
                raise ValueError(f"cannot draw {size} distinct points from F_{ctx.q}^{n}")
            return cls.from_indices(ctx, n, rng.choice(total, size=size, replace=False))
        seen: set[bytes] = set()
        rows = []
        while len(rows) < size:
            v = rng.integers(0, ctx.q, size=n, dtype=np.int64)
            key = v.tobytes()
            if key not in seen:
                seen.add(key)
                rows.append(v)
        return cls.from_vectors(ctx, n, np.array(rows).reshape(-1, n))

    # -- views ----------------------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.points)

    def __len__(self) -> int:
        return self.size

    @property
    def array(self) -> np.ndarray:
        return self.points

    @property
    def indices(self) -> np.ndarray:
        return encode_vectors(self.ctx, self.points)

    @property
    def membership(self) -> np.ndarray:
        """Boolean array of length q**n marking the members."""
        out = np.zeros(self.ctx.q**self.n, dtype=bool)
        out[self.indices] = True
        return out

    @property
    def bitmask(self) -> int:
        return sum(1 << int(i) for i in self.indices)

    def __contains__(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64)
        return bool(np.any(np.all(self.points == v, axis=1)))

    def __iter__(self):
        return (tuple(int(x) for x in row) for row in self.points)

    def __eq__(self, other):
        return (isinstance(other, PointSet) and self.ctx == other.ctx and self.n == other.n
                and np.array_equal(self.points, other.points))

    def __hash__(self):
        return hash((self.ctx, self.n, self.points.tobytes()))

    def __repr__(self):
        return f"PointSet(F_{self.ctx.q}^{self.n}, size={self.size})"


@dataclass(frozen=True)
class BucketHistogram:
    """Counts of ``L x`` over ``x`` in S; buckets are base-q indices of F_q^t."""

    t: int
    q: int
    counts: Mapping[int, int]
    total: int

    @property
    def num_buckets(self) -> int:
        return self.q**self.t

    def __getitem__(self, bucket: int) -> int:
        return self.counts.get(bucket, 0)

    @property
    def max_count(self) -> int:
        return max(self.counts.values(), default=0)

    @property
    def min_count(self) -> int:
        """Smallest count over all q**t buckets, empty ones included."""
        if len(self.counts) < self.num_buckets:
            return 0
        return min(self.counts.values())

    def dense(self) -> np.ndarray:
        out = np.zeros(self.num_buckets, dtype=np.int64)
        for k, c in self.counts.items():
            out[k] = c
        return out


def _check_dims(L: LinearMap, n: int) -> None:
    if L.n != n:
        raise ValueError(f"map has {L.n} columns but vectors have length {n}")


def apply_map(L: LinearMap, x) -> int:
    """Bucket index of ``L x`` (base q, coordinate 0 most significant)."""
    x = np.asarray(x, dtype=np.int64).reshape(-1)
    _check_dims(L, len(x))
    y = L.ctx.matmul(L.matrix.data, x[:, None])[:, 0]
    return int(encode_vectors(L.ctx, y))


def bucket_indices(L: LinearMap, S: PointSet) -> np.ndarray:
    """Bucket index of every point of S, in the order of ``S.points``."""
    _check_dims(L, S.n)
    if L.ctx != S.ctx:
        raise ValueError("map and point set live over different fields")
    images = L.ctx.matmul(S.points, L.matrix.data.T)
    return encode_vectors(L.ctx, images)


def histogram(L: LinearMap, S: PointSet) -> BucketHistogram:
    if S.size == 0:
        raise ValueError("histogram of an empty set")
    buckets = bucket_indices(L, S)
    if L.ctx.q**L.t <= 4 * S.size + 1024:
        dense = np.bincount(buckets, minlength=L.ctx.q**L.t)
        keys = np.flatnonzero(dense)
        counts = dense[keys]
    else:
        keys, counts = np.unique(buckets, return_counts=True)
    return BucketHistogram(L.t, L.ctx.q, dict(zip(keys.tolist(), counts.tolist())), S.size)


def linf_distance(h: BucketHistogram) -> Fraction:
    """max over all q**t buckets of |count/total - q**-t|."""
    if h.total < 1:
        raise ValueError("empty histogram")
    Q, N = h.num_buckets, h.total
    worst = max(abs(h.max_count * Q - N), abs(h.min_count * Q - N))
    return Fraction(worst, N * Q)


def l1_distance(h: BucketHistogram) -> Fraction:
    """Sum over all q**t buckets of |count/total - q**-t|."""
    if h.total < 1:
        raise ValueError("empty histogram")
    Q, N = h.num_buckets, h.total
    s = sum(abs(c * Q - N) for c in h.counts.values())
    s += (Q - len(h.counts)) * N
    return Fraction(s, N * Q)


def linf_pass(L: LinearMap, S: PointSet, tau) -> bool:
    """True iff L(U_S) is within tau * q**-t of uniform in every bucket."""
    if S.size == 0:
        raise ValueError("empty point set")
    return linf_distance(histogram(L, S)) * L.ctx.q**L.t <= Fraction(tau)


# --- binary embedding ------------------------------------------------------------

def embed_vectors(bits: np.ndarray, ell: int) -> np.ndarray:
    """Group bit rows into ell-bit blocks (zero-padded), high bit first."""
    bits = np.asarray(bits, dtype=np.int64)
    if bits.ndim == 1:
        return embed_vectors(bits[None, :], ell)[0]
    rows, n = bits.shape
    n_prime = -(-n // ell)
    padded = np.zeros((rows, n_prime * ell), dtype=np.int64)
    padded[:, :n] = bits
    weights = 2 ** np.arange(ell - 1, -1, -1, dtype=np.int64)
    return padded.reshape(rows, n_prime, ell) @ weights


def embed_binary(S: PointSet, ell: int) -> PointSet:
    """View S in F_2^n as a subset of F_{2^ell}^{ceil(n/ell)}."""
    if S.ctx.q != 2:
        raise ValueError("embed_binary expects a set over F_2")
    if ell < 1:
        raise ValueError("ell must be positive")
    big = field_make(2, ell)
    return PointSet(big, -(-S.n // ell), embed_vectors(S.points, ell))


def binary_matrix(L: LinearMap, n: int) -> MatrixFq:
    """The F_2 matrix of x -> bits(L embed(x)) for an F_{2^ell}-linear L.

    Output bits are listed block by block, high bit first, so the bucket
    index of the binary image equals the bucket index of ``L embed(x)``.
    """
    ctx = L.ctx
    if ctx.p != 2:
        raise ValueError("binary_matrix needs a field of characteristic 2")
    ell = ctx.ell
    if L.n != -(-n // ell):
        raise ValueError("map width does not match ceil(n/ell)")
    cols = embed_vectors(np.eye(n, dtype=np.int64), ell)  # (n, n') images of unit vectors
    imgs = ctx.matmul(cols, L.matrix.data.T)  # (n, t')
    shifts = np.arange(ell - 1, -1, -1, dtype=np.int64)
    bits = (imgs[:, :, None] >> shifts) & 1  # (n, t', ell)
    return MatrixFq(field_make(2), bits.reshape(n, -1).T)


# --- two-stage hashing -----------------------------------------------------------

@dataclass(frozen=True)
class TwoStageResult:
    """Outcome of one draw of the injective pre-hash followed by the balancing map."""

    L1: LinearMap | None
    L2: LinearMap
    composed: LinearMap
    histogram: BucketHistogram
    m: int
    t: int
    stage1_injective: bool
    linf: Fraction
    passed: bool
    notes: tuple[str, ...] = field(default=())


def two_stage_hash(S: PointSet, tau, delta, rng: np.random.Generator, *,
                   t: int | None = None, strict: bool = True) -> TwoStageResult:
    """Hash S in F_2^n to F_2^m injectively (m from the delta/2 birthday bound),
    then to F_2^t with a second random surjective map.

    With ``strict=True`` the side conditions of the pre-hash theorem are
    enforced and t comes from ``choose_t_binary(..., "thm24")``; they only
    hold for very large sets. With ``strict=False`` an explicit ``t`` is used.
    When m >= n there is no surjective map to F_2^m and stage 1 is the
    identity (``L1 is None``).
    """
    tau, delta = Fraction(tau), Fraction(delta)
    if S.ctx.q != 2:
        raise ValueError("two_stage_hash expects a set over F_2")
    m = injective_t(S.size, delta / 2)
    notes = []
    if strict:
        params = choose_t_binary(S.n, S.size, tau, delta, "thm24")
        if t is not None and t != params.t:
            raise ParameterError(f"explicit t={t} differs from the rule's t={params.t}")
        t = params.t
    elif t is None:
        raise ParameterError("non-strict mode needs an explicit t")
    F2 = S.ctx
    if m >= S.n:
        L1 = None
        first = S
        notes.append(f"m = {m} >= n = {S.n}: stage 1 is the identity")
        width = S.n
        M1 = MatrixFq.identity(F2, S.n)
    else:
        L1 = sample_surjective_map(rng, F2, S.n, m)
        first = PointSet(F2, m, F2.matmul(S.points, L1.matrix.data.T))
        width = m
        M1 = L1.matrix
    if not 1 <= t <= width:
        raise ParameterError(f"t = {t} must lie in [1, {width}]")
    injective = first.size == S.size
    L2 = sample_surjective_map(rng, F2, width, t)
    composed = LinearMap(L2.matrix @ M1)
    h = histogram(composed, S)
    dist = linf_distance(h)
    return TwoStageResult(L1, L2, composed, h, m, t, injective, dist,
                          dist * 2**t <= tau, tuple(notes))
