"""Rich flats, Furstenberg sets and the lower bound on their size.

A k-flat is m-rich for K when it contains at least m points of K; K is a
(k, m, beta)-Furstenberg set when at least a beta-fraction of the
k-dimensional directions have an m-rich shift. The exhaustive audits work on
all 2**(q**n) subsets at once by treating subsets as rows of a 0/1 matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .hashcore import PointSet
from .linalg import (
    FieldCtx,
    Flat,
    check_budget,
    coset_indices,
    enumerate_subspaces,
    field_of_order,
    gaussian_binomial,
)

EXHAUSTIVE_MAX_POINTS = 12
SAMPLED_MAX_POINTS = 16


def _as_rational(x, name: str) -> Fraction:
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise ValueError(f"{name} must lie in [0, 1], got {x}")
    return x


def richness_threshold(q: int, k: int, gamma) -> int:
    """m = ceil(gamma * q**k)."""
    return math.ceil(_as_rational(gamma, "gamma") * q**k)


@dataclass(frozen=True)
class FurstenbergQuery:
    """Parameters (k, m, beta); ``gamma`` (with ``q``) records where m came from."""

    k: int
    m: int
    beta: Fraction
    gamma: Fraction | None = None
    q: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "beta", _as_rational(self.beta, "beta"))
        if self.m < 0:
            raise ValueError("m must be nonnegative")
        if self.k < 0:
            raise ValueError("k must be nonnegative")
        if self.gamma is not None:
            object.__setattr__(self, "gamma", _as_rational(self.gamma, "gamma"))
            if self.q is None:
                raise ValueError("gamma needs q to fix m")
            if self.m != richness_threshold(self.q, self.k, self.gamma):
                raise ValueError(f"m = {self.m} is not ceil(gamma q^k)")

    @classmethod
    def from_gamma(cls, q: int, k: int, gamma, beta) -> "FurstenbergQuery":
        return cls(k, richness_threshold(q, k, gamma), Fraction(beta), Fraction(gamma), q)


def is_rich(R: Flat, K: PointSet, m: int) -> bool:
    if R.n != K.n:
        raise ValueError("dimension mismatch")
    if m <= 0:
        return True
    return int(K.membership[R.point_indices()].sum()) >= m


def _directions(ctx: FieldCtx, n: int, k: int) -> list[np.ndarray]:
    return [coset_indices(A) for A in enumerate_subspaces(ctx, n, k)]


def rich_direction_fraction(K: PointSet, k: int, m: int, *, budget: int | None = None) -> Fraction:
    """Largest beta for which K is (k, m, beta)-Furstenberg."""
    ctx, n = K.ctx, K.n
    total = gaussian_binomial(n, k, ctx.q)
    check_budget(total * ctx.q**n, budget, "rich_direction_fraction")
    if m <= 0:
        return Fraction(1)
    mem = K.membership
    rich = sum(int(mem[c].sum(axis=1).max() >= m) for c in _directions(ctx, n, k))
    return Fraction(rich, total)


def is_furstenberg(K: PointSet, query: FurstenbergQuery, *, budget: int | None = None) -> bool:
    if query.beta == 0:
        return True
    return rich_direction_fraction(K, query.k, query.m, budget=budget) >= query.beta


def lower_bound(n: int, q: int, k: int, gamma, beta) -> Fraction:
    """beta gamma**n q**n (1 + q**-(k-1))**-n, exactly."""
    gamma, beta = _as_rational(gamma, "gamma"), _as_rational(beta, "beta")
    if k < 1:
        raise ValueError("k must be at least 1")
    return beta * gamma**n * q**n / (1 + Fraction(1, q ** (k - 1))) ** n


# --- vectorised subset sweeps ------------------------------------------------------

def _subset_matrix(num_points: int, masks: np.ndarray) -> np.ndarray:
    """Row i holds the membership bits of masks[i]."""
    bits = (masks[:, None] >> np.arange(num_points, dtype=np.int64)[None, :]) & 1
    return bits.astype(np.int32)


def _rich_counts(members: np.ndarray, directions: list[np.ndarray], ms: list[int]) -> dict[int, np.ndarray]:
    """For each m: number of directions with an m-rich shift, per subset row."""
    out = {m: np.zeros(len(members), dtype=np.int64) for m in ms}
    for cosets in directions:
        # flat incidence: (shifts, q**n) -> per-subset max hit count
        inc = np.zeros((len(cosets), members.shape[1]), dtype=np.int32)
        np.put_along_axis(inc, cosets, 1, axis=1)
        best = (members @ inc.T).max(axis=1)
        for m in ms:
            out[m] += best >= m
    return out


@dataclass(frozen=True)
class AuditViolation:
    mask: int
    size: int
    gamma: Fraction
    beta: Fraction
    bound: Fraction


@dataclass
class LowerBoundAudit:
    n: int
    q: int
    k: int
    mode: str
    subsets_checked: int
    furstenberg_instances: int = 0
    violations: list[AuditViolation] = field(default_factory=list)
    min_slack: Fraction | None = None  # min over Furstenberg instances of |K| - bound
    tight_cases: list[tuple[int, Fraction, Fraction]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


def audit_lower_bound_exhaustive(n: int, q: int, k: int, gamma_grid, beta_grid, *,
                                 mode: str = "exhaustive", samples: int = 4096,
                                 rng: np.random.Generator | None = None,
                                 budget: int | None = None) -> LowerBoundAudit:
    """Check |K| >= lower_bound for every (k, ceil(gamma q^k), beta)-Furstenberg K.

    ``mode="exhaustive"`` sweeps all subsets (q**n <= 12); ``mode="sampled"``
    draws ``samples`` uniform subsets with ``rng`` (q**n <= 16).
    """
    ctx = field_of_order(q)
    Q = q**n
    if mode == "exhaustive":
        if Q > EXHAUSTIVE_MAX_POINTS:
            raise ValueError(f"exhaustive mode needs q**n <= {EXHAUSTIVE_MAX_POINTS}")
        masks = np.arange(2**Q, dtype=np.int64)
    elif mode == "sampled":
        if Q > SAMPLED_MAX_POINTS:
            raise ValueError(f"sampled mode needs q**n <= {SAMPLED_MAX_POINTS}")
        if rng is None:
            raise ValueError("sampled mode needs an rng")
        masks = rng.integers(0, 2**Q, size=samples, dtype=np.int64)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    total = gaussian_binomial(n, k, q)
    check_budget(len(masks) * total * Q, budget, "audit_lower_bound_exhaustive")

    grid = [(_as_rational(g, "gamma"), _as_rational(b, "beta")) for g in gamma_grid for b in beta_grid]
    ms = sorted({richness_threshold(q, k, g) for g, _ in grid})
    members = _subset_matrix(Q, masks)
    sizes = members.sum(axis=1)
    rich = _rich_counts(members, _directions(ctx, n, k), [m for m in ms if m > 0])

    report = LowerBoundAudit(n, q, k, mode, len(masks))
    for g, b in grid:
        m = richness_threshold(q, k, g)
        bound = lower_bound(n, q, k, g, b)
        if m <= 0 or b == 0:
            furst = np.ones(len(masks), dtype=bool)
        else:
            furst = rich[m] * b.denominator >= b.numerator * total
        report.furstenberg_instances += int(furst.sum())
        if not furst.any():
            continue
        fsizes = sizes[furst]
        # |K| >= bound  <=>  |K| * den >= num
        bad = np.flatnonzero(fsizes * bound.denominator < bound.numerator)
        for i in bad:
            j = int(np.flatnonzero(furst)[i])
            report.violations.append(AuditViolation(int(masks[j]), int(sizes[j]), g, b, bound))
        slack = int(fsizes.min()) - bound
        if report.min_slack is None or slack < report.min_slack:
            report.min_slack = slack
        if int(fsizes.min()) == math.ceil(bound):
            report.tight_cases.append((int(fsizes.min()), g, b))
    return report


def min_furstenberg_size(n: int, q: int, k: int, m: int, beta, mode: str = "exhaustive", *,
                         budget: int | None = None) -> tuple[int, PointSet]:
    """Smallest (k, m, beta)-Furstenberg set (exhaustive) or a greedy upper bound."""
    beta = _as_rational(beta, "beta")
    ctx = field_of_order(q)
    Q = q**n
    if m <= 0 or beta == 0:
        return 0, PointSet.empty(ctx, n)
    if m > q**k:
        raise ValueError(f"no k-flat has {m} > q**k points")
    total = gaussian_binomial(n, k, q)
    need = math.ceil(beta * total)
    directions = _directions(ctx, n, k)
    if mode == "exhaustive":
        if Q > EXHAUSTIVE_MAX_POINTS:
            raise ValueError(f"exhaustive mode needs q**n <= {EXHAUSTIVE_MAX_POINTS}")
        check_budget(2**Q * total * Q, budget, "min_furstenberg_size")
        masks = np.arange(2**Q, dtype=np.int64)
        members = _subset_matrix(Q, masks)
        ok = _rich_counts(members, directions, [m])[m] >= need
        sizes = np.where(ok, members.sum(axis=1), Q + 1)
        best = int(np.argmin(sizes))  # smallest mask among minimum-size sets
        return int(sizes[best]), PointSet.from_mask(ctx, n, int(masks[best]))
    if mode != "greedy":
        raise ValueError(f"unknown mode {mode!r}")
    check_budget(Q * Q * total, budget, "min_furstenberg_size")
    mem = np.zeros(Q, dtype=bool)
    while True:
        best_counts = [int(mem[c].sum(axis=1).max()) for c in directions]
        if sum(b >= m for b in best_counts) >= need:
            break
        scores = np.full(Q, -1, dtype=np.int64)
        for x in np.flatnonzero(~mem):
            mem[x] = True
            rich = 0
            progress = 0
            for c, b in zip(directions, best_counts):
                top = int(mem[c].sum(axis=1).max())
                rich += top >= m
                progress += min(top, m) if b < m else 0
            mem[x] = False
            scores[x] = rich * (Q + 1) * len(directions) + progress
        mem[int(np.argmax(scores))] = True
    K = PointSet.from_indices(ctx, n, np.flatnonzero(mem))
    return K.size, K
