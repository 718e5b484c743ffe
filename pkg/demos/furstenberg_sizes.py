"""Smallest sets with many rich directions, compared with the counting bound.

For tiny spaces the minimum size of a set K in F_q^n such that a beta fraction
of k-dimensional directions has a translate meeting K in at least m points is
found by exhaustive search, then set beside a greedy construction and the
closed-form lower bound.
"""
from __future__ import annotations

from fractions import Fraction

from kakeya_hash.furstenberg import audit_lower_bound_exhaustive, lower_bound, min_furstenberg_size

GRID = [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)]


def main():
    print(f"{'q':>2} {'n':>2} {'k':>2} {'m':>2} {'beta':>5} {'exact':>6} {'greedy':>7} {'bound':>8}")
    for q, n, k in [(2, 2, 1), (2, 3, 1), (2, 3, 2), (3, 2, 1)]:
        for m in range(1, q**k + 1):
            for beta in (Fraction(1, 2), Fraction(1)):
                exact, _ = min_furstenberg_size(n, q, k, m, beta)
                greedy, _ = min_furstenberg_size(n, q, k, m, beta, mode="greedy")
                bound = lower_bound(n, q, k, Fraction(m, q**k), beta)
                print(f"{q:>2} {n:>2} {k:>2} {m:>2} {str(beta):>5} {exact:>6} {greedy:>7} "
                      f"{float(bound):>8.3f}")
    print()
    for q, n in [(2, 2), (2, 3), (3, 2)]:
        rep = audit_lower_bound_exhaustive(n, q, 2, GRID, GRID)
        print(f"F_{q}^{n}, k = 2: {rep.subsets_checked} subsets, "
              f"{rep.furstenberg_instances} instances, min slack {rep.min_slack}")


if __name__ == "__main__":
    main()
