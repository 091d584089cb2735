"""Exact desk-scale solvers for clique, independence, piercing and chromatic numbers.

Every solver returns a :class:`Certificate` whose witness can be re-checked
with :func:`verify_certificate`, against the graph or against the boxes.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Any, Sequence

from . import config, kernels
from .errors import DomainError, ResourceError, VerificationError
from .family import BlockFamily, block_cells
from .geometry import Box, boxes_intersect, dimension_of
from .graph import IntersectionGraph, bits

KINDS = ("clique", "independent-set", "piercing", "coloring")


@dataclass
class Certificate:
    kind: str
    value: int
    witness: Any
    exact: bool = True
    meta: dict = field(default_factory=dict)

    def to_record(self) -> dict:
        from .io import encode_witness

        return {
            "kind": self.kind,
            "value": self.value,
            "exact": self.exact,
            "witness": encode_witness(self.kind, self.witness),
            "meta": self.meta,
        }


def _over(name: str, n: int, budget: int | None, hint: str = "") -> None:
    cap = config.budget(name) if budget is None else budget
    if n > cap:
        raise ResourceError(f"{n} exceeds the {name} budget {cap}{hint}", size=n, budget=cap)


def max_independent_set(g: IntersectionGraph, *, budget: int | None = None) -> Certificate:
    _over("mis", g.n, budget)
    witness = kernels.max_independent_set(g.to_matrix()) if g.n else []
    return Certificate("independent-set", len(witness), witness)


def max_clique(g: IntersectionGraph, *, boxes: Sequence[Box] | None = None, budget: int | None = None) -> Certificate:
    """Exact clique number.

    With ``boxes`` the geometric route is used (a clique of boxes has a common
    point, so it suffices to count boxes over corner candidates).
    """
    if boxes is not None:
        _over("clique_structured", len(boxes), budget, "; try clique_via_cells for block families")
        return max_clique_boxes(boxes)
    _over("clique_general", g.n, budget, "; try clique_via_cells for block families")
    witness = kernels.max_independent_set(g.complement().to_matrix()) if g.n else []
    return Certificate("clique", len(witness), witness)


def lower_candidates(boxes: Sequence[Box], axis: int) -> list[Fraction]:
    """Lowest contained coordinate of each box on ``axis``, distinct and sorted.

    For an open lower side the point is halfway to the next endpoint value, so
    it stands for the whole open piece just above the endpoint.
    """
    values = sorted({x for b in boxes for x in (b.lo[axis], b.hi[axis])})
    nxt = {a: b for a, b in zip(values, values[1:])}
    out = set()
    for b in boxes:
        a = b.lo[axis]
        out.add(a if b.lo_closed[axis] else (a + nxt[a]) / 2)
    return sorted(out)


def _axis_masks(boxes: Sequence[Box], axis: int, coords: Sequence[Fraction]) -> list[int]:
    masks = []
    for x in coords:
        m = 0
        for j, b in enumerate(boxes):
            a, e, ac, ec = b.axis(axis)
            if (a < x or (a == x and ac)) and (x < e or (x == e and ec)):
                m |= 1 << j
        masks.append(m)
    return masks


def candidate_points(boxes: Sequence[Box]) -> list[tuple[tuple[Fraction, ...], int]]:
    """Candidate corners with the set of boxes (bit mask) containing each."""
    d = dimension_of(boxes)
    coords = [lower_candidates(boxes, i) for i in range(d)]
    masks = [_axis_masks(boxes, i, coords[i]) for i in range(d)]
    out = []
    for idx in product(*(range(len(c)) for c in coords)):
        m = -1
        for i, j in enumerate(idx):
            m &= masks[i][j]
            if not m:
                break
        if m:
            out.append((tuple(coords[i][j] for i, j in enumerate(idx)), m))
    return out


def max_clique_boxes(boxes: Sequence[Box]) -> Certificate:
    boxes = list(boxes)
    if not boxes:
        return Certificate("clique", 0, [])
    best_pt, best, best_count = None, 0, 0
    for pt, m in candidate_points(boxes):
        c = m.bit_count()
        if c > best_count:
            best_pt, best, best_count = pt, m, c
    return Certificate("clique", best.bit_count(), bits(best), meta={"point": best_pt})


def clique_via_cells(family: BlockFamily | Sequence) -> Certificate:
    """Clique number of a block (multi)family by scanning covered unit cells."""
    blocks = family.blocks if isinstance(family, BlockFamily) else tuple(family)
    if not blocks:
        return Certificate("clique", 0, [])
    s = family.params.s
    counts: Counter = Counter()
    for b in blocks:
        counts.update(block_cells(b, s))
    top = max(counts.values())
    cell = min(c for c, v in counts.items() if v == top)
    witness = [i for i, b in enumerate(blocks) if all(s**t * p <= c < s**t * (p + 1) for t, p, c in zip(b.t, b.p, cell))]
    return Certificate("clique", top, witness, meta={"cell": cell})


def min_piercing(boxes: Sequence[Box], *, budget: int | None = None) -> Certificate:
    """Exact piercing number: set cover over candidate corners, branch and bound."""
    boxes = list(boxes)
    _over("piercing", len(boxes), budget)
    n = len(boxes)
    if n == 0:
        return Certificate("piercing", 0, [])
    cands = candidate_points(boxes)
    # keep one point per maximal hit set
    uniq: dict[int, tuple] = {}
    for pt, m in cands:
        uniq.setdefault(m, pt)
    masks = sorted(uniq, key=lambda m: (-m.bit_count(), m))
    kept: list[int] = []
    for m in masks:
        if not any(m & k == m for k in kept):
            kept.append(m)
    covering = [[c for c, m in enumerate(kept) if m >> e & 1] for e in range(n)]
    cover_bits = [sum(1 << c for c in cs) for cs in covering]

    # greedy upper bound
    unc, greedy = (1 << n) - 1, []
    while unc:
        c = max(range(len(kept)), key=lambda c: ((kept[c] & unc).bit_count(), -c))
        greedy.append(c)
        unc &= ~kept[c]
    best = list(greedy)

    def packing_bound(unc: int) -> int:
        used, count = 0, 0
        for e in sorted(bits(unc), key=lambda e: (len(covering[e]), e)):
            if not cover_bits[e] & used:
                used |= cover_bits[e]
                count += 1
        return count

    def search(unc: int, chosen: list[int]) -> None:
        nonlocal best
        if not unc:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        if len(chosen) + packing_bound(unc) >= len(best):
            return
        e = min(bits(unc), key=lambda e: (len(covering[e]), e))
        for c in sorted(covering[e], key=lambda c: (-(kept[c] & unc).bit_count(), c)):
            chosen.append(c)
            search(unc & ~kept[c], chosen)
            chosen.pop()

    search((1 << n) - 1, [])
    points = [uniq[kept[c]] for c in sorted(best)]
    return Certificate("piercing", len(points), points)


def _dsatur_order_color(g: IntersectionGraph) -> list[int]:
    n = g.n
    color = [-1] * n
    for _ in range(n):
        v = max(
            (u for u in range(n) if color[u] < 0),
            key=lambda u: (len({color[w] for w in g.neighbors(u) if color[w] >= 0}), g.degree(u), -u),
        )
        used = {color[w] for w in g.neighbors(v)}
        c = 0
        while c in used:
            c += 1
        color[v] = c
    return color


def chromatic_number(g: IntersectionGraph, *, budget: int | None = None) -> Certificate:
    """Exact chromatic number by DSATUR branch and bound.

    Above the budget a DSATUR coloring is returned with ``exact=False``.
    """
    n = g.n
    if n == 0:
        return Certificate("coloring", 0, [])
    greedy = _dsatur_order_color(g)
    cap = config.budget("chromatic") if budget is None else budget
    if n > cap:
        return Certificate("coloring", max(greedy) + 1, greedy, exact=False, meta={"mode": "greedy upper bound"})
    best = list(greedy)
    best_k = max(greedy) + 1
    clique = max_clique(g, budget=max(cap, n)).witness
    lb = len(clique)
    if lb == best_k:
        return Certificate("coloring", best_k, best)
    color = [-1] * n
    for i, v in enumerate(clique):
        color[v] = i
    nbrs = [g.neighbors(v) for v in range(n)]

    def search(used: int, left: int) -> bool:
        nonlocal best, best_k
        if left == 0:
            best, best_k = list(color), used
            return best_k == lb
        v, vs = -1, None
        for u in range(n):
            if color[u] >= 0:
                continue
            sat = len({color[w] for w in nbrs[u] if color[w] >= 0})
            key = (sat, sum(1 for w in nbrs[u] if color[w] < 0))
            if vs is None or key > vs:
                v, vs = u, key
        forbidden = {color[w] for w in nbrs[v]}
        c = 0
        while c < min(used + 1, best_k - 1):
            if c not in forbidden:
                color[v] = c
                if search(max(used, c + 1), left - 1):
                    return True
                color[v] = -1
            c += 1
        return False

    search(lb, n - len(clique))
    return Certificate("coloring", best_k, best)


def verify_certificate(cert: Certificate, *, graph: IntersectionGraph | None = None, boxes: Sequence[Box] | None = None) -> None:
    """Re-check a witness; raises :class:`VerificationError` on failure."""
    w = cert.witness
    if cert.kind in ("clique", "independent-set"):
        if graph is None and boxes is None:
            raise DomainError("need a graph or boxes to verify")
        if len(set(w)) != len(w) or len(w) != cert.value:
            raise VerificationError(f"{cert.kind}: witness size {len(w)} does not match value {cert.value}")
        for a_i, a in enumerate(w):
            for b in w[a_i + 1 :]:
                if graph is not None:
                    edge = graph.has_edge(a, b)
                else:
                    edge = boxes_intersect(boxes[a], boxes[b])
                if edge != (cert.kind == "clique"):
                    raise VerificationError(f"{cert.kind}: pair ({a}, {b}) violates the witness")
        if cert.kind == "clique" and boxes is not None and w:
            pt = cert.meta.get("point")
            if pt is not None and not all(boxes[v].contains_point(pt) for v in w):
                raise VerificationError("clique: recorded common point misses a member")
    elif cert.kind == "piercing":
        if boxes is None:
            raise DomainError("piercing certificates verify against boxes")
        if len(w) != cert.value:
            raise VerificationError("piercing: value differs from point count")
        for j, b in enumerate(boxes):
            if not any(b.contains_point(x) for x in w):
                raise VerificationError(f"piercing: box {j} is not hit")
    elif cert.kind == "coloring":
        n = graph.n if graph is not None else len(boxes)
        if len(w) != n:
            raise VerificationError("coloring: assignment length differs from vertex count")
        if n and len(set(w)) != cert.value:
            raise VerificationError(f"coloring: uses {len(set(w))} colors, value says {cert.value}")
        for a in range(n):
            for b in range(a + 1, n):
                edge = graph.has_edge(a, b) if graph is not None else boxes_intersect(boxes[a], boxes[b])
                if edge and w[a] == w[b]:
                    raise VerificationError(f"coloring: adjacent {a}, {b} share color {w[a]}")
    else:
        raise DomainError(f"unknown certificate kind {cert.kind!r}")
