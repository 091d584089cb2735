"""Supersaturation degree, the fingerprint/container algorithm, and the
biclique-side family of independent sets.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import DomainError
from .graph import BicliqueDecomposition, IntersectionGraph, bits, to_mask


@dataclass(frozen=True)
class TraceStep:
    vertex: int
    in_I: bool
    removed: int


@dataclass(frozen=True)
class FingerprintResult:
    S: tuple[int, ...]
    fS: frozenset[int]
    trace: tuple[TraceStep, ...]

    @property
    def container(self) -> frozenset[int]:
        return self.fS | frozenset(self.S)


def supersaturation_degree(g: IntersectionGraph, S: Iterable[int]) -> int:
    """Maximum degree of the induced subgraph ``G[S]``."""
    mask = to_mask(S)
    return max((g.degree(v, mask) for v in bits(mask)), default=0)


def supersaturation_threshold(size: int, M: int, s: int, num_types: int) -> float:
    """``eps * s / |T|^2`` with ``eps = |S|/M - 1``."""
    return (size / M - 1) * s / num_types**2


def fingerprint(
    g: IntersectionGraph,
    I: Iterable[int],
    M: int,
    order: Sequence[int] | None = None,
) -> FingerprintResult:
    """Run the container algorithm for the independent set ``I``.

    At each step the first vertex of maximum degree (first with respect to
    ``order``, default vertex index) is deleted; when it lies in ``I`` it joins
    the fingerprint and its neighbourhood is deleted too.  Stops as soon as at
    most ``2M`` vertices remain.
    """
    I = sorted(set(I))
    for v in I:
        if not 0 <= v < g.n:
            raise DomainError(f"vertex {v} out of range")
    if not g.is_independent(I):
        raise DomainError("I is not an independent set")
    adj = g.to_matrix()
    perm = np.arange(g.n) if order is None else np.asarray(list(order), dtype=np.int64)
    if sorted(perm.tolist()) != list(range(g.n)):
        raise DomainError("order must be a permutation of the vertices")
    adj = adj[np.ix_(perm, perm)]
    in_I = np.zeros(g.n, dtype=bool)
    in_I[I] = True
    S, alive, trace = kernels.fingerprint(adj, in_I[perm], 2 * M)
    back = perm.tolist()
    return FingerprintResult(
        S=tuple(back[v] for v in S),
        fS=frozenset(back[v] for v in np.flatnonzero(alive).tolist()),
        trace=tuple(TraceStep(back[v], bool(x), int(r)) for v, x, r in trace),
    )


def replay(g: IntersectionGraph, S: Sequence[int], M: int, order=None) -> FingerprintResult:
    """Recompute ``f(S)`` from the fingerprint alone."""
    return fingerprint(g, S, M, order)


@dataclass
class ContainerCollection:
    containers: set[frozenset[int]] = field(default_factory=set)
    source: dict[tuple[int, ...], frozenset[int]] = field(default_factory=dict)
    max_fingerprint: int = 0

    def covering(self, I: Iterable[int]) -> frozenset[int] | None:
        I = frozenset(I)
        for c in sorted(self.containers, key=lambda c: sorted(c)):
            if I <= c:
                return c
        return None


def build_containers(g: IntersectionGraph, M: int, independent_sets: Iterable[Iterable[int]], order=None):
    """Containers ``S u f(S)`` for each supplied independent set, deduplicated.

    Raises :class:`DomainError` if a set is not independent; asserts coverage.
    """
    coll = ContainerCollection()
    for I in independent_sets:
        I = frozenset(I)
        res = fingerprint(g, I, M, order)
        c = res.container
        if not I <= c:
            raise AssertionError("container does not cover its independent set")
        coll.containers.add(c)
        coll.source[res.S] = c
        coll.max_fingerprint = max(coll.max_fingerprint, len(res.S))
    return coll


def maximal_is_family(dec: BicliqueDecomposition, choices: Sequence, n: int) -> frozenset[int]:
    """Vertices that lie on the chosen side of every part containing them.

    ``choices[i]`` is 0 / ``"X"`` for side ``X_i`` and 1 / ``"Y"`` for ``Y_i``.
    ``n`` is the vertex count of the underlying graph.
    """
    if len(choices) != dec.q:
        raise DomainError(f"{len(choices)} choices for {dec.q} parts")
    allowed = set(range(n))
    for part, z in zip(dec.parts, choices):
        if z in (0, "X"):
            banned = part.Y
        elif z in (1, "Y"):
            banned = part.X
        else:
            raise DomainError(f"choice must be X/Y or 0/1, got {z!r}")
        allowed.difference_update(banned)
    return frozenset(allowed)


def choices_for(dec: BicliqueDecomposition, I: Iterable[int]) -> list[int]:
    """Side of each part meeting ``I`` (side X when neither does)."""
    I = set(I)
    return [1 if I.intersection(p.Y) else 0 for p in dec.parts]


def random_independent_set(g: IntersectionGraph, rng) -> list[int]:
    """Random independent set: scan a random permutation, keep each feasible vertex with probability 1/2."""
    chosen, blocked = [], 0
    for v in rng.permutation(g.n).tolist():
        if blocked >> v & 1:
            continue
        if rng.integers(2):
            chosen.append(v)
            blocked |= g.rows[v] | (1 << v)
    return sorted(chosen)
