"""Shared fixtures and first-principles oracles.

The oracles here recompute quantities by explicit enumeration or exhaustive
search, so the library's closed forms, LPs and solvers are checked against
independent ground truth rather than against themselves.
"""

from __future__ import annotations

from collections import Counter
from typing import Sequence, Tuple

import pytest
from hypothesis import settings

from srkbounds import SpaceParams, iter_vectors

settings.register_profile("suite", deadline=None, max_examples=60)
settings.load_profile("suite")


# Spaces small enough to enumerate exhaustively, varying q, t and the block
# shapes (square / flat blocks, repeated / mixed profiles, prime-power q).
SMALL_SPACES: Tuple[SpaceParams, ...] = (
    SpaceParams(2, (1,), (1,)),
    SpaceParams(2, (1,), (3,)),
    SpaceParams(2, (2,), (2,)),
    SpaceParams(2, (2,), (3,)),
    SpaceParams(2, (1, 1), (2, 1)),
    SpaceParams(2, (2, 1), (2, 1)),
    SpaceParams(2, (2, 2), (2, 2)),
    SpaceParams(2, (1, 1, 1), (1, 1, 1)),
    SpaceParams(2, (1, 1, 1), (2, 2, 1)),
    SpaceParams(3, (1,), (2,)),
    SpaceParams(3, (2,), (2,)),
    SpaceParams(3, (1, 1), (2, 1)),
    SpaceParams(3, (1, 1, 1), (1, 1, 1)),
    SpaceParams(4, (1, 1), (1, 1)),
    SpaceParams(5, (1, 1), (1, 1)),
    SpaceParams(8, (1,), (1,)),
    SpaceParams(9, (1,), (1,)),
)


def weight_census(sp: SpaceParams) -> Counter:
    """weight -> count over the whole space, by explicit enumeration."""
    census: Counter = Counter()
    for v in iter_vectors(sp):
        census[v.srk()] += 1
    return census


def brute_max_independent_set(rows: Sequence[int]) -> int:
    """Exact maximum independent set of a bitset-adjacency graph.

    Plain branch and bound with a popcount prune; fine up to ~24 vertices.
    Deliberately shares no code with srkbounds.graphs.independence_number.
    """
    n = len(rows)
    best = 0

    def grow(cand: int, size: int) -> None:
        nonlocal best
        if size + cand.bit_count() <= best:
            return
        if cand == 0:
            best = max(best, size)
            return
        v = (cand & -cand).bit_length() - 1
        grow(cand & ~rows[v] & ~(1 << v), size + 1)  # take v
        grow(cand & ~(1 << v), size)  # skip v

    grow((1 << n) - 1, 0)
    return best


@pytest.fixture(scope="session")
def small_spaces() -> Tuple[SpaceParams, ...]:
    return SMALL_SPACES
