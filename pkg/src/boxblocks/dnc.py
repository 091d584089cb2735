"""Divide and conquer along the last coordinate: piercing and coloring upper bounds.

A cut at ``x(d) = t`` splits a family into boxes strictly below, strictly
above, and crossing the hyperplane.  Below and above never meet, so they can
be handled independently (and share a palette when coloring); the crossing
boxes are cut by the hyperplane into a (d-1)-dimensional family with the same
intersection graph.  Dimension one is solved exactly by the interval greedy
algorithms.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from .errors import DomainError, VerificationError
from .geometry import Box, boxes_intersect, dimension_of
from .graph import build_graph
from .solvers import Certificate, max_clique_boxes, max_independent_set


@dataclass(frozen=True)
class SweepSplit:
    t: Fraction
    below: tuple[int, ...]
    above: tuple[int, ...]
    crossing: tuple[int, ...]
    slice: tuple[Box, ...]


@dataclass(frozen=True)
class CutChoice:
    t: Fraction
    achieved: int
    target: int
    flagged: bool


def split_by_hyperplane(boxes: Sequence[Box], t) -> SweepSplit:
    """Partition by position relative to ``{x(d) = t}``; open/closed sides are exact."""
    d = dimension_of(boxes) if boxes else 0
    if boxes and d < 2:
        raise DomainError("hyperplane splits need dimension >= 2")
    t = Fraction(t)
    below, above, crossing, sl = [], [], [], []
    for i, b in enumerate(boxes):
        a, e, ac, ec = b.axis(d - 1)
        if e < t or (e == t and not ec):
            below.append(i)
        elif a > t or (a == t and not ac):
            above.append(i)
        else:
            crossing.append(i)
            sl.append(Box(b.lo[:-1], b.hi[:-1], b.lo_closed[:-1], b.hi_closed[:-1]))
    return SweepSplit(t, tuple(below), tuple(above), tuple(crossing), tuple(sl))


def cut_candidates(boxes: Sequence[Box]) -> list[Fraction]:
    """Distinct upper coordinates on the last axis, plus midpoints between
    consecutive endpoint values, restricted to cuts that make progress
    (neither side receives the whole family)."""
    if not boxes:
        return []
    ax = boxes[0].d - 1
    values = sorted({x for b in boxes for x in (b.lo[ax], b.hi[ax])})
    cands = {b.hi[ax] for b in boxes} | {(x + y) / 2 for x, y in zip(values, values[1:])}
    n = len(boxes)
    out = []
    for t in sorted(cands):
        sp = split_by_hyperplane(boxes, t)
        if len(sp.below) < n and len(sp.above) < n:
            out.append(t)
    return out


def nu(boxes: Sequence[Box]) -> int:
    """Independence number through the exact MIS solver."""
    if not boxes:
        return 0
    return max_independent_set(build_graph(boxes)).value


def find_balanced_nu_cut(boxes: Sequence[Box], nu_fn: Callable = nu) -> CutChoice:
    """Smallest candidate ``t`` with ``nu(below) = floor(k/2)``.

    ``nu(below(t))`` is nondecreasing in ``t``, so the search is a bisection.
    Without an exact hit the smallest ``t`` with ``nu(below) >= floor(k/2)`` is
    returned (or the last candidate), flagged.
    """
    cands = cut_candidates(boxes)
    if not cands:
        raise DomainError("no cut makes progress on an empty family")
    target = nu_fn(boxes) // 2
    lo, hi = 0, len(cands)
    memo = {}

    def below_nu(i):
        if i not in memo:
            sp = split_by_hyperplane(boxes, cands[i])
            memo[i] = nu_fn([boxes[j] for j in sp.below])
        return memo[i]

    while lo < hi:
        mid = (lo + hi) // 2
        if below_nu(mid) >= target:
            hi = mid
        else:
            lo = mid + 1
    idx = min(lo, len(cands) - 1)
    got = below_nu(idx)
    return CutChoice(cands[idx], got, target, got != target)


def find_median_cut(boxes: Sequence[Box]) -> CutChoice:
    """Cut with ``|below|`` as close as possible to ``floor(n/2)`` (smallest ``t`` on ties)."""
    n = len(boxes)
    if n < 2:
        raise DomainError("median cut needs at least two boxes")
    target = n // 2
    best = None
    for t in cut_candidates(boxes):
        c = len(split_by_hyperplane(boxes, t).below)
        if best is None or abs(c - target) < abs(best[1] - target):
            best = (t, c)
    t, c = best
    return CutChoice(t, c, target, c != target)


def _right_key(b: Box):
    return (b.hi[0], b.hi_closed[0])


def interval_stab(intervals: Sequence[Box]) -> list[tuple[Fraction]]:
    """Greedy by right end; returns exactly nu points (Gallai)."""
    if intervals:
        if dimension_of(intervals) != 1:
            raise DomainError("interval_stab expects one-dimensional boxes")
    values = sorted({x for b in intervals for x in (b.lo[0], b.hi[0])})
    prev = {b: a for a, b in zip(values, values[1:])}
    points: list[tuple[Fraction]] = []
    for b in sorted(intervals, key=_right_key):
        if any(b.contains_point(p) for p in points):
            continue
        e = b.hi[0]
        x = e if b.hi_closed[0] else (prev[e] + e) / 2
        points.append((x,))
    return points


def interval_color(intervals: Sequence[Box]) -> list[int]:
    """Greedy by left end; uses exactly omega colors."""
    if intervals:
        if dimension_of(intervals) != 1:
            raise DomainError("interval_color expects one-dimensional boxes")
    order = sorted(range(len(intervals)), key=lambda i: (intervals[i].lo[0], not intervals[i].lo_closed[0], i))
    color = [-1] * len(intervals)
    done = []
    for i in order:
        used = {color[j] for j in done if boxes_intersect(intervals[i], intervals[j])}
        c = 0
        while c in used:
            c += 1
        color[i] = c
        done.append(i)
    return color


def _common_point(boxes: Sequence[Box]) -> tuple[Fraction, ...]:
    pt = []
    for i in range(boxes[0].d):
        lo = max(b.lo[i] for b in boxes)
        lo_in = all(b.lo_closed[i] for b in boxes if b.lo[i] == lo)
        hi = min(b.hi[i] for b in boxes)
        pt.append(lo if lo_in else (lo + hi) / 2)
    return tuple(pt)


def closed_form_piercing_bound(nu_value: int, d: int) -> int:
    """``nu * (floor(log2 nu) + 1)^(d-1)``."""
    if nu_value <= 0:
        return 0
    return nu_value * (nu_value.bit_length()) ** (d - 1)


@lru_cache(maxsize=None)
def recursion_piercing_bound(k: int, d: int) -> int:
    """Exact solution of F_d(k) = F_d(floor(k/2)) + F_d(ceil(k/2)) + F_(d-1)(k), F_1(k) = k, F_d(1) = 1."""
    if k <= 1 or d == 1:
        return k
    return (
        recursion_piercing_bound(k // 2, d)
        + recursion_piercing_bound(k - k // 2, d)
        + recursion_piercing_bound(k, d - 1)
    )


def closed_form_coloring_bound(n: int, omega: int, d: int) -> int:
    """``omega * (floor(log2 n) + 1)^(d-1)``."""
    if n <= 0:
        return 0
    return omega * n.bit_length() ** (d - 1)


@lru_cache(maxsize=None)
def recursion_coloring_bound(n: int, omega: int, d: int) -> int:
    """Solution of C_d(n) = C_d(ceil(n/2)) + C_(d-1)(n), C_1 = omega, C_d(1) = 1, capped by n."""
    if n <= 1:
        return n
    if d == 1:
        return min(n, omega)
    return min(n, recursion_coloring_bound(n - n // 2, omega, d) + recursion_coloring_bound(n, omega, d - 1))


@dataclass
class _Stats:
    nodes: int = 0
    flagged: int = 0
    separation_checks: int = 0
    cuts: list = field(default_factory=list)


def _check_separation(boxes, sp: SweepSplit, stats: _Stats) -> None:
    for i in sp.below:
        for j in sp.above:
            if boxes_intersect(boxes[i], boxes[j]):
                raise VerificationError(f"separation violated at t={sp.t}: boxes {i} and {j} meet")
    stats.separation_checks += 1


def _pierce(boxes: list[Box], stats: _Stats) -> list[tuple]:
    stats.nodes += 1
    if not boxes:
        return []
    d = boxes[0].d
    if d == 1:
        return interval_stab(boxes)
    k = nu(boxes)
    if k <= 1:
        return [_common_point(boxes)]
    cut = find_balanced_nu_cut(boxes)
    stats.flagged += cut.flagged
    stats.cuts.append({"t": cut.t, "target": cut.target, "achieved": cut.achieved, "flagged": cut.flagged, "d": d})
    sp = split_by_hyperplane(boxes, cut.t)
    _check_separation(boxes, sp, stats)
    pts = _pierce([boxes[i] for i in sp.below], stats)
    pts += _pierce([boxes[i] for i in sp.above], stats)
    pts += [p + (cut.t,) for p in _pierce(list(sp.slice), stats)]
    return pts


def dnc_pierce(boxes: Sequence[Box]) -> Certificate:
    """Piercing set from the recursive balanced-nu sweep."""
    boxes = list(boxes)
    d = dimension_of(boxes) if boxes else 1
    stats = _Stats()
    pts = _pierce(boxes, stats)
    k = nu(boxes)
    for j, b in enumerate(boxes):
        if not any(b.contains_point(p) for p in pts):
            raise VerificationError(f"dnc_pierce missed box {j}")
    meta = {
        "d": d,
        "nu": k,
        "closed_form_bound": closed_form_piercing_bound(k, d),
        "recursion_bound": recursion_piercing_bound(k, d),
        "nodes": stats.nodes,
        "flagged_cuts": stats.flagged,
        "separation_checks": stats.separation_checks,
    }
    if not stats.flagged and len(pts) > meta["recursion_bound"]:
        raise VerificationError(f"{len(pts)} points exceed the recursion bound {meta['recursion_bound']}")
    return Certificate("piercing", len(pts), pts, meta=meta)


def _color(boxes: list[Box], stats: _Stats) -> list[int]:
    stats.nodes += 1
    n = len(boxes)
    if n == 0:
        return []
    if n == 1:
        return [0]
    d = boxes[0].d
    if d == 1:
        return interval_color(boxes)
    cut = find_median_cut(boxes)
    stats.flagged += cut.flagged
    stats.cuts.append({"t": cut.t, "target": cut.target, "achieved": cut.achieved, "flagged": cut.flagged, "d": d})
    sp = split_by_hyperplane(boxes, cut.t)
    _check_separation(boxes, sp, stats)
    out = [-1] * n
    shared = 0
    for part in (sp.below, sp.above):
        cols = _color([boxes[i] for i in part], stats)
        for i, c in zip(part, cols):
            out[i] = c
        shared = max(shared, max(cols, default=-1) + 1)
    for i, c in zip(sp.crossing, _color(list(sp.slice), stats)):
        out[i] = shared + c
    return out


def dnc_color(boxes: Sequence[Box]) -> Certificate:
    """Proper coloring: below and above share a palette, the slice gets a fresh one."""
    boxes = list(boxes)
    d = dimension_of(boxes) if boxes else 1
    stats = _Stats()
    raw = _color(boxes, stats)
    remap = {c: i for i, c in enumerate(sorted(set(raw)))}
    colors = [remap[c] for c in raw]
    for i in range(len(boxes)):
        for j in range(i + 1, len(boxes)):
            if colors[i] == colors[j] and boxes_intersect(boxes[i], boxes[j]):
                raise VerificationError(f"dnc_color: boxes {i} and {j} meet and share a color")
    omega = max_clique_boxes(boxes).value
    n = len(boxes)
    meta = {
        "d": d,
        "n": n,
        "omega": omega,
        "closed_form_bound": closed_form_coloring_bound(n, omega, d),
        "recursion_bound": recursion_coloring_bound(n, omega, d),
        "nodes": stats.nodes,
        "flagged_cuts": stats.flagged,
        "separation_checks": stats.separation_checks,
    }
    k = len(remap)
    if not stats.flagged and k > meta["recursion_bound"]:
        raise VerificationError(f"{k} colors exceed the recursion bound {meta['recursion_bound']}")
    return Certificate("coloring", k, colors, meta=meta)
