"""Pass fraction of random linear maps as the output dimension shrinks.

A random set of 2**12 points in F_2^16 is hashed by seeded surjective maps to
F_2^t. For each t we report how often the bucket histogram stays within
tau * 2**-t of uniform in the sup norm, next to the exact answer for a small
instance computed through kernels.
"""
from __future__ import annotations

import argparse
from fractions import Fraction

from kakeya_hash import harness
from kakeya_hash.harness import ExperimentConfig
from kakeya_hash.hashcore import PointSet
from kakeya_hash.linalg import field_make
from kakeya_hash.rng import make_rng


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=500)
    ap.add_argument("--seed", type=int, default=11)
    args = ap.parse_args()

    base = {"kind": "hash_balance", "p": 2, "n": 16, "seed": args.seed, "trials": args.trials,
            "tau": 1, "set": {"type": "random", "size": 4096}, "jobs": 4, "budget": "2^31"}
    print("t   pass fraction   95% interval")
    for t in range(10, 3, -1):
        res = harness.run_hash_balance(ExperimentConfig.from_dict(dict(base, t=t)))
        s = res.summary
        lo, hi = s["ci95_advisory"]
        print(f"{t:<3} {s['passes'] / s['trials']:<15.4f} [{lo:.3f}, {hi:.3f}]")

    # exact fractions over all maps for a small set, through the kernel view
    S = PointSet.random(make_rng(args.seed), field_make(2), 6, 20)
    print("\nexact pass fraction, |S| = 20 in F_2^6, tau = 1")
    for t in (1, 2, 3):
        print(f"t = {t}: {harness.exact_pass_fraction(S, t, Fraction(1))}")


if __name__ == "__main__":
    main()
