"""Linear hashing over finite fields with l-infinity balance guarantees.

Exact finite-field linear algebra, bucket statistics for random surjective
linear maps, shift-balance audits, Furstenberg-set bounds and the polynomial
method with multiplicities, all at sizes where brute force is feasible.
"""

from __future__ import annotations

__version__ = "0.1.0"
