"""Exhaustive subset-enumeration oracles for graphs with at most 20 vertices.

These share no code with :mod:`boxblocks.solvers`; tests use them to check
the branch-and-bound solvers.  Independent sets of every subset are counted
by a vectorised recurrence; k-colourability is decided by inclusion-exclusion
over those counts (evaluated modulo two primes).
"""
from __future__ import annotations

import numpy as np

from . import config
from .errors import DomainError, ResourceError
from .graph import IntersectionGraph
from .solvers import Certificate

_PRIMES = (2_147_483_647, 1_000_000_007)


def _tables(g: IntersectionGraph):
    n = g.n
    size = 1 << n
    independent = np.zeros(size, dtype=bool)
    count = np.zeros(size, dtype=np.int64)
    independent[0] = True
    count[0] = 1
    for v in range(n):
        low = np.arange(1 << v, dtype=np.int64)
        nb = g.rows[v] & ((1 << v) - 1)
        independent[(1 << v) + low] = independent[low] & ((low & nb) == 0)
        count[(1 << v) + low] = count[low] + count[low & ~nb]
    return independent, count


def _largest(independent: np.ndarray) -> list[int]:
    sizes = np.bitwise_count(np.arange(independent.size, dtype=np.uint64)).astype(np.int64)
    sizes[~independent] = -1
    mask = int(np.argmax(sizes))
    return [v for v in range(mask.bit_length()) if mask >> v & 1]


def _colorable(count: np.ndarray, n: int, k: int) -> bool:
    sizes = np.bitwise_count(np.arange(count.size, dtype=np.uint64)).astype(np.int64)
    sign = np.where((n - sizes) % 2 == 0, 1, -1)
    for p in _PRIMES:
        base = count % p
        power = np.ones_like(base)
        for _ in range(k):
            power = power * base % p
        if int((sign * power).sum() % p) != 0:
            return True
    return False


def _chromatic(g: IntersectionGraph) -> int:
    if g.n == 0:
        return 0
    _, count = _tables(g)
    k = 1
    while not _colorable(count, g.n, k):
        k += 1
    return k


def brute_oracle(g: IntersectionGraph, kind: str) -> Certificate:
    """Answer ``kind`` (clique / independent-set / coloring / piercing) exhaustively.

    ``piercing`` is the clique cover number, which equals the piercing number
    for box families since pairwise intersecting boxes share a point.
    """
    cap = config.budget("brute")
    if g.n > cap:
        raise ResourceError(f"brute oracle limited to {cap} vertices, got {g.n}", size=g.n, budget=cap)
    if kind == "independent-set":
        w = _largest(_tables(g)[0])
        return Certificate(kind, len(w), w, meta={"method": "exhaustive"})
    if kind == "clique":
        w = _largest(_tables(g.complement())[0])
        return Certificate(kind, len(w), w, meta={"method": "exhaustive"})
    if kind == "coloring":
        return Certificate(kind, _chromatic(g), None, meta={"method": "inclusion-exclusion"})
    if kind == "piercing":
        return Certificate(kind, _chromatic(g.complement()), None, meta={"method": "clique cover"})
    raise DomainError(f"unknown kind {kind!r}")
