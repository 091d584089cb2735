"""Exact blocks and boxes.

A block ``B_t(p)`` is stored symbolically as the pair ``(t, p)``; the scale
base lives in :class:`FamilyParams`.  Explicit boxes carry exact rational
endpoints and a closed/open flag per endpoint.  Nothing here touches floats.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .errors import DomainError

Rational = Fraction


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise DomainError("floating point endpoints are not accepted; pass int, Fraction or 'num/den'")
    return Fraction(x)


@dataclass(frozen=True)
class FamilyParams:
    d: int
    s: int
    k: int

    def __post_init__(self):
        if self.d < 1 or self.s < 2 or self.k < 0:
            raise DomainError(f"need d >= 1, s >= 2, k >= 0; got d={self.d}, s={self.s}, k={self.k}")

    @property
    def m(self) -> int:
        return self.s**self.k

    @property
    def M(self) -> int:
        return self.m ** (self.d - 1)

    @property
    def num_types(self) -> int:
        """``|T| = C(k+d-1, d-1)``."""
        return comb(self.k + self.d - 1, self.d - 1)

    @property
    def family_size(self) -> int:
        return self.num_types * self.M


@dataclass(frozen=True, order=True)
class Block:
    """Symbolic t-block: exponent vector ``t`` and integer cell position ``p``."""

    t: tuple[int, ...]
    p: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "t", tuple(int(x) for x in self.t))
        object.__setattr__(self, "p", tuple(int(x) for x in self.p))
        if len(self.t) != len(self.p):
            raise DomainError(f"t has length {len(self.t)} but p has length {len(self.p)}")
        if any(x < 0 for x in self.t):
            raise DomainError(f"exponent vector must be nonnegative: {self.t}")

    @property
    def d(self) -> int:
        return len(self.t)


@dataclass(frozen=True)
class Box:
    """Axis-parallel box with exact endpoints.

    ``lo_closed[i]`` / ``hi_closed[i]`` say whether the lower / upper side on
    axis ``i`` belongs to the box.
    """

    lo: tuple[Fraction, ...]
    hi: tuple[Fraction, ...]
    lo_closed: tuple[bool, ...] = field(default=None)
    hi_closed: tuple[bool, ...] = field(default=None)

    def __post_init__(self):
        lo = tuple(as_rational(x) for x in self.lo)
        hi = tuple(as_rational(x) for x in self.hi)
        if len(lo) != len(hi) or not lo:
            raise DomainError("lower and upper corners must have the same positive length")
        lc = (True,) * len(lo) if self.lo_closed is None else tuple(bool(x) for x in self.lo_closed)
        hc = (True,) * len(lo) if self.hi_closed is None else tuple(bool(x) for x in self.hi_closed)
        if len(lc) != len(lo) or len(hc) != len(lo):
            raise DomainError("closed-side flags must match the dimension")
        for i, (a, b) in enumerate(zip(lo, hi)):
            if not a < b:
                raise DomainError(f"axis {i}: need lower < upper, got [{a}, {b}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "lo_closed", lc)
        object.__setattr__(self, "hi_closed", hc)

    @classmethod
    def closed(cls, lo: Sequence, hi: Sequence) -> "Box":
        return cls(tuple(lo), tuple(hi))

    @classmethod
    def half_open(cls, lo: Sequence, hi: Sequence) -> "Box":
        n = len(lo)
        return cls(tuple(lo), tuple(hi), (True,) * n, (False,) * n)

    @property
    def d(self) -> int:
        return len(self.lo)

    def volume(self) -> Fraction:
        v = Fraction(1)
        for a, b in zip(self.lo, self.hi):
            v *= b - a
        return v

    def axis(self, i: int) -> tuple[Fraction, Fraction, bool, bool]:
        return self.lo[i], self.hi[i], self.lo_closed[i], self.hi_closed[i]

    def contains_point(self, x: Sequence) -> bool:
        if len(x) != self.d:
            raise DomainError(f"point of dimension {len(x)} tested against box of dimension {self.d}")
        for i, xi in enumerate(x):
            a, b, ac, bc = self.axis(i)
            if xi < a or (xi == a and not ac):
                return False
            if xi > b or (xi == b and not bc):
                return False
        return True

    def contains_box(self, other: "Box") -> bool:
        for i in range(self.d):
            a, b, ac, bc = self.axis(i)
            c, e, cc, ec = other.axis(i)
            if c < a or (c == a and cc and not ac):
                return False
            if e > b or (e == b and ec and not bc):
                return False
        return True

    def __repr__(self):
        parts = []
        for i in range(self.d):
            a, b, ac, bc = self.axis(i)
            parts.append(f"{'[' if ac else '('}{a},{b}{']' if bc else ')'}")
        return "Box(" + "x".join(parts) + ")"


def intervals_overlap(a, b, ac, bc, c, e, cc, ec) -> bool:
    """Whether two intervals with open/closed ends share a point."""
    if a > c:
        lo, lo_in = a, ac
    elif c > a:
        lo, lo_in = c, cc
    else:
        lo, lo_in = a, ac and cc
    if b < e:
        hi, hi_in = b, bc
    elif e < b:
        hi, hi_in = e, ec
    else:
        hi, hi_in = b, bc and ec
    return lo < hi or (lo == hi and lo_in and hi_in)


def boxes_intersect(b1: Box, b2: Box) -> bool:
    if b1.d != b2.d:
        raise DomainError(f"dimension mismatch: {b1.d} vs {b2.d}")
    for i in range(b1.d):
        if not intervals_overlap(*b1.axis(i), *b2.axis(i)):
            return False
    return True


def check_block(b: Block, params: FamilyParams) -> None:
    """Raise unless ``b`` lies in ``[0, m]^d`` with a legal position."""
    if b.d != params.d:
        raise DomainError(f"block has dimension {b.d}, params have d={params.d}")
    for i, (ti, pi) in enumerate(zip(b.t, b.p)):
        if ti > params.k:
            raise DomainError(f"axis {i}: exponent {ti} exceeds k={params.k}")
        limit = params.s ** (params.k - ti)
        if not 0 <= pi < limit:
            raise DomainError(f"axis {i}: position {pi} outside 0..{limit - 1}")


def block_to_box(b: Block, params: FamilyParams, *, check: bool = True) -> Box:
    if check:
        check_block(b, params)
    s = params.s
    lo = tuple(s**ti * pi for ti, pi in zip(b.t, b.p))
    hi = tuple(s**ti * (pi + 1) for ti, pi in zip(b.t, b.p))
    return Box.half_open(lo, hi)


def join_type(t: Sequence[int], u: Sequence[int]) -> tuple[int, ...]:
    if len(t) != len(u):
        raise DomainError(f"exponent vectors of different length: {len(t)} vs {len(u)}")
    return tuple(max(a, b) for a, b in zip(t, u))


def containing_block(b: Block, w: Sequence[int], s: int) -> Block:
    """The unique ``w``-block containing ``b`` (requires ``w >= t`` pointwise)."""
    w = tuple(w)
    if len(w) != b.d:
        raise DomainError(f"w has length {len(w)}, block has dimension {b.d}")
    p = []
    for i, (ti, wi, pi) in enumerate(zip(b.t, w, b.p)):
        if wi < ti:
            raise DomainError(f"axis {i}: w({i})={wi} < t({i})={ti}")
        p.append(pi // s ** (wi - ti))
    return Block(w, tuple(p))


def blocks_intersect(b1: Block, b2: Block, s: int) -> bool:
    """Two blocks meet iff they sit in the same block of the joined type."""
    w = join_type(b1.t, b2.t)
    return containing_block(b1, w, s).p == containing_block(b2, w, s).p


def block_projection_laminar(b1: Block, b2: Block, s: int, axis: int) -> bool:
    """Axis projections of two blocks are disjoint or nested."""
    a1, e1 = s ** b1.t[axis] * b1.p[axis], s ** b1.t[axis] * (b1.p[axis] + 1)
    a2, e2 = s ** b2.t[axis] * b2.p[axis], s ** b2.t[axis] * (b2.p[axis] + 1)
    return e1 <= a2 or e2 <= a1 or (a1 <= a2 and e2 <= e1) or (a2 <= a1 and e1 <= e2)


def intervals_laminar(x: Box, y: Box, axis: int) -> bool:
    """Laminarity of two explicit boxes on one axis (disjoint or nested projections)."""
    xa, xb, xac, xbc = x.axis(axis)
    ya, yb, yac, ybc = y.axis(axis)
    if not intervals_overlap(xa, xb, xac, xbc, ya, yb, yac, ybc):
        return True
    px = Box((xa,), (xb,), (xac,), (xbc,))
    py = Box((ya,), (yb,), (yac,), (ybc,))
    return px.contains_box(py) or py.contains_box(px)


def recognize_block(box: Box, params: FamilyParams) -> Block | None:
    """Return the block whose realization equals ``box``, or None."""
    if box.d != params.d:
        return None
    if not all(box.lo_closed) or any(box.hi_closed):
        return None
    t, p = [], []
    for i in range(box.d):
        a, b = box.lo[i], box.hi[i]
        width = b - a
        if width.denominator != 1 or a.denominator != 1:
            return None
        width = int(width)
        e = 0
        while params.s**e < width:
            e += 1
        if params.s**e != width or int(a) % width:
            return None
        t.append(e)
        p.append(int(a) // width)
    blk = Block(tuple(t), tuple(p))
    if sum(blk.t) != params.k:
        return None
    try:
        check_block(blk, params)
    except DomainError:
        return None
    return blk


def dimension_of(boxes: Iterable[Box]) -> int:
    dims = {b.d for b in boxes}
    if len(dims) > 1:
        raise DomainError(f"mixed dimensions in family: {sorted(dims)}")
    return dims.pop() if dims else 0
