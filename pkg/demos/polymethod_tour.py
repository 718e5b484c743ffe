"""Hasse derivatives, multiplicities and evaluation ranks on small examples."""
from __future__ import annotations

from kakeya_hash.linalg import field_make
from kakeya_hash.polymethod import (
    MultiPoly,
    coeff_matrix,
    enumerate_V,
    fq_rank,
    hasse_derivative,
    multiplicity,
    rank_lemma_audit,
    select_good_monomials,
    sz_audit,
)


def main():
    F3, F5, F2 = field_make(3), field_make(5), field_make(2)
    f = MultiPoly.linear(F3, [1], 2) ** 2  # (x - 1)^2 over F_3
    print("f =", f)
    for j in range(3):
        print(f"  Hasse derivative of order {j}: {hasse_derivative(f, (j,))}")
    print("  multiplicity at 1:", multiplicity(f, (1,)))
    a = sz_audit(f)
    print(f"  sum of multiplicities {a.total_mult} <= d |F_q|^(n-1) = {a.bound}")

    t1, t2 = MultiPoly.var(F5, 2, 0), MultiPoly.var(F5, 2, 1)
    one = MultiPoly.constant(F5, 2, 1)
    E = [[t1, t2 + one], [one * 2 + t1 * 4, t1 + t2 * 3]]
    print("\ncoefficient matrix over F_5:")
    for row in coeff_matrix(E, 1).matrix.tolist():
        print("  ", row)
    print("  F_q-rank:", fq_rank(E))

    print("\nevaluation ranks over F_2, n = 2")
    for m in (1, 2):
        for d in range(4 * m):
            a = rank_lemma_audit(F2, 2, m, d, "V_full")
            print(f"  m={m} d={d}: rank {a.rank} (target {a.target})")
    full = list(enumerate_V(F2, 2, True))
    g = select_good_monomials(full[:3], 1, 1)
    print("\ngood monomials for half of V_full, d = r = 1:", g.monomials)


if __name__ == "__main__":
    main()
