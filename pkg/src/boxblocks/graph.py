"""Intersection graphs of box families and the biclique decomposition."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations
from math import lcm
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import config, kernels
from .errors import DomainError, ResourceError
from .family import BlockFamily
from .geometry import Block, Box, block_to_box, boxes_intersect, containing_block, dimension_of, join_type

_INT64_MAX = 2**63 - 1


@dataclass(frozen=True)
class IntersectionGraph:
    """Simple graph stored as bit-set adjacency rows (bit ``j`` of ``rows[i]``)."""

    n: int
    rows: tuple[int, ...]
    labels: tuple[int, ...]

    @classmethod
    def from_rows(cls, rows: Sequence[int], labels: Sequence[int] | None = None) -> "IntersectionGraph":
        rows = tuple(rows)
        labels = tuple(range(len(rows))) if labels is None else tuple(labels)
        return cls(len(rows), rows, labels)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], labels=None) -> "IntersectionGraph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise DomainError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls.from_rows(rows, labels)

    @classmethod
    def from_matrix(cls, adj, labels=None) -> "IntersectionGraph":
        adj = np.asarray(adj, dtype=bool)
        rows = []
        for i in range(adj.shape[0]):
            packed = np.packbits(adj[i], bitorder="little")
            rows.append(int.from_bytes(packed.tobytes(), "little"))
        return cls.from_rows(rows, labels)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.rows[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return bits(self.rows[v])

    def degree(self, v: int, within: int | None = None) -> int:
        r = self.rows[v] if within is None else self.rows[v] & within
        return r.bit_count()

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in bits(self.rows[u] >> (u + 1)):
                yield u, u + 1 + v

    @property
    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self.rows) // 2

    def to_matrix(self) -> np.ndarray:
        nbytes = (self.n + 7) // 8
        buf = b"".join(r.to_bytes(nbytes, "little") for r in self.rows)
        packed = np.frombuffer(buf, dtype=np.uint8).reshape(self.n, nbytes) if self.n else np.zeros((0, 0), np.uint8)
        return np.unpackbits(packed, axis=1, count=self.n, bitorder="little").astype(bool)

    def complement(self) -> "IntersectionGraph":
        full = (1 << self.n) - 1
        return IntersectionGraph(self.n, tuple(full & ~r & ~(1 << i) for i, r in enumerate(self.rows)), self.labels)

    def is_independent(self, vertices: Iterable[int]) -> bool:
        mask = to_mask(vertices)
        return all(not (self.rows[v] & mask) for v in bits(mask))

    def is_clique(self, vertices: Iterable[int]) -> bool:
        mask = to_mask(vertices)
        return all((self.rows[v] | (1 << v)) & mask == mask for v in bits(mask))

    def check(self) -> None:
        for u in range(self.n):
            if self.rows[u] >> u & 1:
                raise DomainError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"edge ({u}, {v}) out of range for n={n}")
            if self.rows[u] >> self.n:
                raise DomainError(f"row {u} references vertices beyond n={self.n}")
            for v in bits(self.rows[u]):
                if not self.rows[v] >> u & 1:
                    raise DomainError(f"asymmetric edge {u}-{v}")


def bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def _check_size(n: int) -> None:
    cap = config.budget("graph_vertices")
    if n > cap:
        raise ResourceError(f"{n} vertices exceed the dense-graph budget {cap}", size=n, budget=cap)


def build_graph_naive(boxes: Sequence[Box]) -> IntersectionGraph:
    """Reference builder: every pair through :func:`boxes_intersect`."""
    boxes = list(boxes)
    dimension_of(boxes)
    _check_size(len(boxes))
    rows = [0] * len(boxes)
    for i, j in combinations(range(len(boxes)), 2):
        if boxes_intersect(boxes[i], boxes[j]):
            rows[i] |= 1 << j
            rows[j] |= 1 << i
    return IntersectionGraph.from_rows(rows)


def integer_arrays(boxes: Sequence[Box]):
    """Scale all endpoints to a common denominator.

    Returns int64 ``lo, hi`` and boolean flag arrays, or None when the scaled
    coordinates do not fit in 64 bits.
    """
    den = 1
    for b in boxes:
        for x in b.lo + b.hi:
            den = lcm(den, x.denominator)
    lo = [[int(x * den) for x in b.lo] for b in boxes]
    hi = [[int(x * den) for x in b.hi] for b in boxes]
    if any(abs(v) > _INT64_MAX for row in lo + hi for v in row):
        return None
    return (
        np.array(lo, dtype=np.int64),
        np.array(hi, dtype=np.int64),
        np.array([b.lo_closed for b in boxes], dtype=bool),
        np.array([b.hi_closed for b in boxes], dtype=bool),
    )


def build_graph(boxes: Sequence[Box]) -> IntersectionGraph:
    """Intersection graph through the active adjacency kernel."""
    boxes = list(boxes)
    if not boxes:
        return IntersectionGraph.from_rows([])
    dimension_of(boxes)
    _check_size(len(boxes))
    arrays = integer_arrays(boxes)
    if arrays is None:
        return build_graph_naive(boxes)
    return IntersectionGraph.from_matrix(kernels.adjacency_matrix(*arrays))


def family_boxes(family: BlockFamily) -> list[Box]:
    return [block_to_box(b, family.params) for b in family.blocks]


def build_block_graph(family: BlockFamily) -> IntersectionGraph:
    return build_graph(family_boxes(family))


def induced_subgraph(g: IntersectionGraph, vertices: Iterable[int]) -> IntersectionGraph:
    """Induced subgraph on ``vertices`` (renumbered in increasing order, labels kept)."""
    vs = sorted(set(vertices))
    for v in vs:
        if not 0 <= v < g.n:
            raise DomainError(f"vertex {v} out of range 0..{g.n - 1}")
    pos = {v: i for i, v in enumerate(vs)}
    rows = []
    for v in vs:
        r = 0
        for u in bits(g.rows[v]):
            if u in pos:
                r |= 1 << pos[u]
        rows.append(r)
    return IntersectionGraph(len(vs), tuple(rows), tuple(g.labels[v] for v in vs))


def blow_up(boxes: Sequence, multiplicity: int) -> list:
    """Each element repeated ``multiplicity`` times, copies kept adjacent."""
    if multiplicity < 1:
        raise DomainError(f"multiplicity must be >= 1, got {multiplicity}")
    return [b for b in boxes for _ in range(multiplicity)]


@dataclass(frozen=True)
class BicliquePart:
    t: tuple[int, ...]
    u: tuple[int, ...]
    w_block: Block
    X: tuple[int, ...]
    Y: tuple[int, ...]

    def edges(self) -> Iterator[tuple[int, int]]:
        for x in self.X:
            for y in self.Y:
                yield (x, y) if x < y else (y, x)


@dataclass(frozen=True)
class BicliqueDecomposition:
    parts: tuple[BicliquePart, ...]

    @property
    def q(self) -> int:
        return len(self.parts)

    def edges(self) -> Iterator[tuple[int, int]]:
        for part in self.parts:
            yield from part.edges()


def build_biclique_decomposition(family: BlockFamily) -> BicliqueDecomposition:
    """Edge-disjoint complete bipartite pieces indexed by ``(t, u, w-block)``.

    Vertices are positions in ``family.blocks``.  Duplicate blocks are
    rejected: two copies of one block share a type and no ``(t, u)`` part can
    carry their edge.
    """
    s = family.params.s
    by_type: dict[tuple[int, ...], list[int]] = defaultdict(list)
    seen = set()
    for i, b in enumerate(family.blocks):
        if b in seen:
            raise DomainError(f"duplicate block {b} at position {i}; decomposition needs distinct blocks")
        seen.add(b)
        by_type[b.t].append(i)
    types = sorted(by_type)
    parts = []
    for a, t in enumerate(types):
        for u in types[a + 1 :]:
            w = join_type(t, u)
            groups_t: dict[tuple[int, ...], list[int]] = defaultdict(list)
            groups_u: dict[tuple[int, ...], list[int]] = defaultdict(list)
            for i in by_type[t]:
                groups_t[containing_block(family.blocks[i], w, s).p].append(i)
            for i in by_type[u]:
                groups_u[containing_block(family.blocks[i], w, s).p].append(i)
            for pos in sorted(groups_t.keys() & groups_u.keys()):
                parts.append(BicliquePart(t, u, Block(w, pos), tuple(groups_t[pos]), tuple(groups_u[pos])))
    return BicliqueDecomposition(tuple(parts))
