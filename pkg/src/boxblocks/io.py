"""Serialization: family documents, DIMACS export and JSON report records.

Family document (``boxblocks.family/1``)::

    {"schema": "boxblocks.family/1",
     "header": {"d": 2, "s": 2, "k": 2}            # or {"d": 2, "generic": true}
     "form": "symbolic" | "explicit",
     "boxes": [{"t": [1, 1], "p": [0, 1]}, ...]      # symbolic
              [{"lo": ["0/1", ...], "hi": [...],
                "lo_closed": [true, ...], "hi_closed": [false, ...]}, ...]}

Exact numbers are written as integers or ``"num/den"`` strings.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Sequence

from .errors import DomainError
from .family import BlockFamily
from .geometry import Block, Box, FamilyParams, block_to_box, check_block
from .graph import IntersectionGraph

FAMILY_SCHEMA = "boxblocks.family/1"
REPORT_SCHEMA = "boxblocks.report/1"


def fmt_rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text) -> Fraction:
    if isinstance(text, bool) or isinstance(text, float):
        raise DomainError(f"expected an integer or 'num/den' string, got {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"bad rational {text!r}") from None


@dataclass
class FamilyDocument:
    d: int
    params: FamilyParams | None
    form: str
    blocks: list[Block] | None = None
    boxes: list[Box] | None = None

    @classmethod
    def from_family(cls, family: BlockFamily, form: str = "symbolic") -> "FamilyDocument":
        doc = cls(family.params.d, family.params, "symbolic", blocks=list(family.blocks))
        return doc.convert(form)

    @classmethod
    def from_boxes(cls, boxes: Sequence[Box], params: FamilyParams | None = None) -> "FamilyDocument":
        d = boxes[0].d if boxes else (params.d if params else 1)
        return cls(d, params, "explicit", boxes=list(boxes))

    def convert(self, form: str) -> "FamilyDocument":
        if form == self.form:
            return self
        if form == "explicit":
            return FamilyDocument(self.d, self.params, "explicit", boxes=[block_to_box(b, self.params) for b in self.blocks])
        if form == "symbolic":
            from .geometry import recognize_block

            if self.params is None:
                raise DomainError("a generic family has no symbolic form")
            blocks = []
            for i, b in enumerate(self.boxes):
                blk = recognize_block(b, self.params)
                if blk is None:
                    raise DomainError(f"box {i} ({b!r}) is not a block of {self.params}")
                blocks.append(blk)
            return FamilyDocument(self.d, self.params, "symbolic", blocks=blocks)
        raise DomainError(f"unknown form {form!r}")

    def realized(self, check: bool = True) -> list[Box]:
        if self.form == "explicit":
            return list(self.boxes)
        return [block_to_box(b, self.params, check=check) for b in self.blocks]

    def block_family(self) -> BlockFamily:
        return BlockFamily(self.params, tuple(self.convert("symbolic").blocks))

    def to_json(self) -> dict:
        header = {"d": self.d}
        if self.params is None:
            header["generic"] = True
        else:
            header.update(s=self.params.s, k=self.params.k)
        if self.form == "symbolic":
            items = [{"t": list(b.t), "p": list(b.p)} for b in self.blocks]
        else:
            items = [
                {
                    "lo": [fmt_rational(x) for x in b.lo],
                    "hi": [fmt_rational(x) for x in b.hi],
                    "lo_closed": list(b.lo_closed),
                    "hi_closed": list(b.hi_closed),
                }
                for b in self.boxes
            ]
        return {"schema": FAMILY_SCHEMA, "header": header, "form": self.form, "boxes": items}

    @classmethod
    def from_json(cls, data: dict, *, strict: bool = True) -> "FamilyDocument":
        """Parse a document.  ``strict=False`` keeps out-of-range symbolic blocks for the verifier."""
        if data.get("schema") != FAMILY_SCHEMA:
            raise DomainError(f"unsupported schema {data.get('schema')!r}")
        header = data["header"]
        d = int(header["d"])
        params = None if header.get("generic") else FamilyParams(d, int(header["s"]), int(header["k"]))
        form = data.get("form")
        if form == "symbolic":
            if params is None:
                raise DomainError("symbolic form requires s and k in the header")
            blocks = [Block(tuple(x["t"]), tuple(x["p"])) for x in data["boxes"]]
            if strict:
                for b in blocks:
                    check_block(b, params)
            return cls(d, params, form, blocks=blocks)
        if form == "explicit":
            boxes = []
            for x in data["boxes"]:
                boxes.append(
                    Box(
                        tuple(parse_rational(v) for v in x["lo"]),
                        tuple(parse_rational(v) for v in x["hi"]),
                        tuple(x.get("lo_closed", [True] * d)),
                        tuple(x.get("hi_closed", [True] * d)),
                    )
                )
            if any(b.d != d for b in boxes):
                raise DomainError("box dimension differs from header")
            return cls(d, params, form, boxes=boxes)
        raise DomainError(f"unknown form {form!r}")


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, default=_default) + "\n"


def _default(o):
    if isinstance(o, Fraction):
        return fmt_rational(o)
    if isinstance(o, (set, frozenset)):
        return sorted(o)
    if isinstance(o, tuple):
        return list(o)
    raise TypeError(f"not serializable: {type(o).__name__}")


def load_family(path: str, *, strict: bool = True) -> FamilyDocument:
    with open(path) as fh:
        return FamilyDocument.from_json(json.load(fh), strict=strict)


def dimacs_text(g: IntersectionGraph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"c {c}" for c in comment.splitlines())
    lines.append(f"p edge {g.n} {g.edge_count}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in sorted(g.edges()))
    return "\n".join(lines) + "\n"


def export_dimacs(g: IntersectionGraph, sink: IO[str]) -> None:
    sink.write(dimacs_text(g))


def read_dimacs(text: str) -> IntersectionGraph:
    n, edges = None, []
    for line in text.splitlines():
        if not line or line[0] == "c":
            continue
        tok = line.split()
        if tok[0] == "p":
            if tok[1] != "edge":
                raise DomainError(f"unsupported problem line {line!r}")
            n = int(tok[2])
        elif tok[0] == "e":
            edges.append((int(tok[1]) - 1, int(tok[2]) - 1))
        else:
            raise DomainError(f"bad DIMACS line {line!r}")
    if n is None:
        raise DomainError("missing 'p edge' line")
    return IntersectionGraph.from_edges(n, edges)


def encode_witness(kind: str, witness):
    if witness is None:
        return None
    if kind == "piercing":
        return [[fmt_rational(x) for x in pt] for pt in witness]
    return list(witness)


def sha256_file(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()
