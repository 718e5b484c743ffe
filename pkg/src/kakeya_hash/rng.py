"""Seeded random streams.

Every randomized routine takes an explicit ``numpy.random.Generator``. The
helpers here build counter-based (Philox) generators from a 64-bit seed, with
per-trial streams keyed by ``seed ^ trial_index`` so trials can run in any
order or in parallel and still reproduce bit-for-bit.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1

# Keys above 2**64 never collide with a trial stream.
SET_STREAM = 1 << 64
AUX_STREAM = 2 << 64


def make_rng(key: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=key))


def trial_rng(seed: int, trial_index: int) -> np.random.Generator:
    return make_rng((seed ^ trial_index) & MASK64)


def set_rng(seed: int) -> np.random.Generator:
    """Stream used to draw the point set itself, disjoint from trial streams."""
    return make_rng(SET_STREAM | (seed & MASK64))


def aux_rng(seed: int) -> np.random.Generator:
    return make_rng(AUX_STREAM | (seed & MASK64))
