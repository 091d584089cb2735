"""The index set T and the full block family in ``[0, m]^d``."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from . import config
from .errors import DomainError, ResourceError
from .geometry import Block, FamilyParams, check_block


def enumerate_T(d: int, k: int) -> list[tuple[int, ...]]:
    """All weak compositions of ``k`` into ``d`` parts, in lexicographic order."""
    if d < 1 or k < 0:
        raise DomainError(f"need d >= 1 and k >= 0, got d={d}, k={k}")

    def rec(rest: int, parts: int) -> Iterator[tuple[int, ...]]:
        if parts == 1:
            yield (rest,)
            return
        for first in range(rest + 1):
            for tail in rec(rest - first, parts - 1):
                yield (first,) + tail

    return list(rec(k, d))


@dataclass(frozen=True)
class BlockFamily:
    params: FamilyParams
    blocks: tuple[Block, ...]

    def __len__(self):
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __getitem__(self, i):
        return self.blocks[i]

    def index(self) -> dict[Block, int]:
        return {b: i for i, b in enumerate(self.blocks)}

    def subfamily(self, indices: Sequence[int]) -> "BlockFamily":
        return BlockFamily(self.params, tuple(self.blocks[i] for i in indices))


def positions(t: Sequence[int], params: FamilyParams) -> Iterator[tuple[int, ...]]:
    ranges = [range(params.s ** (params.k - ti)) for ti in t]
    return itertools.product(*ranges)


def generate_family(params: FamilyParams, *, max_blocks: int | None = None) -> BlockFamily:
    limit = config.budget("family_blocks") if max_blocks is None else max_blocks
    size = params.family_size
    if size > limit:
        raise ResourceError(f"family would have {size} blocks (budget {limit})", size=size, budget=limit)
    blocks = [Block(t, p) for t in enumerate_T(params.d, params.k) for p in positions(t, params)]
    return BlockFamily(params, tuple(blocks))


def cell_containers(cell: Sequence[int], params: FamilyParams) -> list[Block]:
    """The |T| blocks of the full family that contain the unit cell at ``cell``."""
    cell = tuple(cell)
    unit = Block((0,) * params.d, cell)
    try:
        check_block(unit, params)
    except DomainError as exc:
        raise DomainError(f"cell {cell} lies outside [0,{params.m}]^{params.d}: {exc}") from None
    s = params.s
    return [Block(t, tuple(c // s**ti for c, ti in zip(cell, t))) for t in enumerate_T(params.d, params.k)]


def stab_cell(family: BlockFamily, cell: Block | Sequence[int]) -> list[Block]:
    """Members of ``family`` containing the unit cell, in family order.

    ``cell`` is either a position tuple or a block with ``t`` all zeros.
    """
    if isinstance(cell, Block):
        if any(cell.t):
            raise DomainError(f"stabbing cell must have t = 0, got {cell.t}")
        cell = cell.p
    wanted = set(cell_containers(cell, family.params))
    return [b for b in family.blocks if b in wanted]


def all_cells(params: FamilyParams) -> Iterator[tuple[int, ...]]:
    return itertools.product(range(params.m), repeat=params.d)


def block_cells(b: Block, s: int) -> Iterator[tuple[int, ...]]:
    """Unit cells covered by a block."""
    ranges = [range(s**ti * pi, s**ti * (pi + 1)) for ti, pi in zip(b.t, b.p)]
    return itertools.product(*ranges)
