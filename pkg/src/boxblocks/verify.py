"""Invariant checks over a family document, reported as pass / fail / skip records."""
from __future__ import annotations

from collections import Counter
from itertools import combinations

import numpy as np

from .containers import fingerprint, random_independent_set
from .construction import trial_rng
from .family import BlockFamily, generate_family
from .geometry import boxes_intersect, blocks_intersect, check_block, recognize_block
from .graph import build_biclique_decomposition, build_graph, build_graph_naive, integer_arrays
from .errors import DomainError
from .io import FamilyDocument, fmt_rational
from .solvers import chromatic_number, clique_via_cells, max_clique_boxes, max_independent_set, min_piercing

SMALL = 64


def _rec(name, ok, detail="", counterexample=None, status=None):
    out = {"name": name, "status": status or ("pass" if ok else "fail")}
    if detail:
        out["detail"] = detail
    if counterexample is not None:
        out["counterexample"] = counterexample
    return out


def _skip(name, why):
    return {"name": name, "status": "skip", "detail": why}


def _box_json(b):
    return {"lo": [fmt_rational(x) for x in b.lo], "hi": [fmt_rational(x) for x in b.hi],
            "lo_closed": list(b.lo_closed), "hi_closed": list(b.hi_closed)}


def _laminar_violation(boxes):
    arrays = integer_arrays(boxes)
    if arrays is None:
        return None
    lo, hi, lc, hc = arrays
    n, d = lo.shape
    for a in range(d):
        for i in range(n):
            # overlap with every j > i
            la, ha, lca, hca = lo[i, a], hi[i, a], lc[i, a], hc[i, a]
            lb, hb, lcb, hcb = lo[i + 1 :, a], hi[i + 1 :, a], lc[i + 1 :, a], hc[i + 1 :, a]
            low = np.maximum(la, lb)
            low_in = np.where(la > lb, lca, np.where(lb > la, lcb, lca & lcb))
            high = np.minimum(ha, hb)
            high_in = np.where(ha < hb, hca, np.where(hb < ha, hcb, hca & hcb))
            meet = (low < high) | ((low == high) & low_in & high_in)
            i_in_j = ((lb < la) | ((lb == la) & (lcb | ~lca))) & ((ha < hb) | ((ha == hb) & (hcb | ~hca)))
            j_in_i = ((la < lb) | ((la == lb) & (lca | ~lcb))) & ((hb < ha) | ((hb == ha) & (hca | ~hcb)))
            bad = np.flatnonzero(meet & ~i_in_j & ~j_in_i)
            if bad.size:
                return a, i, i + 1 + int(bad[0])
    return None


def verify_suite(doc: FamilyDocument, *, seed: int = 0, samples: int = 20) -> dict:
    """Run every applicable check; block-specific checks need a block header."""
    boxes = doc.realized(check=False)
    n = len(boxes)
    checks = []

    g = build_graph(boxes) if boxes else None
    if boxes and n <= 2000:
        naive = build_graph_naive(boxes)
        diff = next(((u, v) for u, v in combinations(range(n), 2) if g.has_edge(u, v) != naive.has_edge(u, v)), None)
        checks.append(_rec("graph-builders-agree", diff is None, counterexample=diff and list(diff)))

    blocks = None
    if doc.params is None:
        for name in ("block-recognition", "laminarity", "partition", "predicate-equivalence",
                     "decomposition-partition", "clique-equals-T", "alpha-equals-M", "fingerprint"):
            checks.append(_skip(name, "generic family"))
    else:
        P = doc.params
        blocks, bad = [], None
        if doc.form == "symbolic":
            for i, b in enumerate(doc.blocks):
                try:
                    check_block(b, P)
                    if sum(b.t) != P.k:
                        raise DomainError(f"exponents sum to {sum(b.t)}, not k={P.k}")
                except DomainError as exc:
                    bad = bad or {"index": i, "t": list(b.t), "p": list(b.p), "reason": str(exc)}
                    blocks.append(None)
                    continue
                blocks.append(b)
        else:
            for i, b in enumerate(boxes):
                blk = recognize_block(b, P)
                if blk is None and bad is None:
                    bad = {"index": i, "box": _box_json(b), "reason": "not a block of volume s^k in [0,m]^d"}
                blocks.append(blk)
        checks.append(_rec("block-recognition", bad is None, counterexample=bad))
        valid = [i for i, b in enumerate(blocks) if b is not None]

        lam = _laminar_violation(boxes) if boxes else None
        checks.append(_rec("laminarity", lam is None, counterexample=lam and {
            "axis": lam[0], "pair": [lam[1], lam[2]], "boxes": [_box_json(boxes[lam[1]]), _box_json(boxes[lam[2]])]}))

        dup = [b for b, c in Counter(b for b in blocks if b is not None).items() if c > 1]
        by_type = {}
        for i in valid:
            by_type.setdefault(blocks[i].t, []).append(i)
        part_bad = None
        if dup:
            part_bad = {"duplicate": {"t": list(dup[0].t), "p": list(dup[0].p)}}
        else:
            for t, idx in by_type.items():
                for i, j in combinations(idx, 2):
                    if g.has_edge(i, j):
                        part_bad = {"type": list(t), "pair": [i, j]}
                        break
                if part_bad:
                    break
        full = generate_family(P) if P.family_size <= 100_000 else None
        complete = full is not None and not dup and len(valid) == n and set(blocks) == set(full.blocks)
        if complete and part_bad is None:
            for t, idx in by_type.items():
                vol = sum(boxes[i].volume() for i in idx)
                if vol != P.m**P.d:
                    part_bad = {"type": list(t), "volume": fmt_rational(vol), "expected": P.m**P.d}
        checks.append(_rec("partition", part_bad is None, counterexample=part_bad))

        eq_bad = None
        for i, j in combinations(valid, 2):
            if blocks_intersect(blocks[i], blocks[j], P.s) != boxes_intersect(boxes[i], boxes[j]):
                eq_bad = [i, j]
                break
        checks.append(_rec("predicate-equivalence", eq_bad is None, counterexample=eq_bad))

        if dup or len(valid) != n:
            checks.append(_skip("decomposition-partition", "needs distinct valid blocks"))
        else:
            fam = BlockFamily(P, tuple(blocks))
            dec = build_biclique_decomposition(fam)
            de = Counter(dec.edges())
            ge = Counter(g.edges())
            extra = next(iter((de - ge) or (ge - de)), None)
            checks.append(_rec("decomposition-partition", extra is None, f"q={dec.q}", counterexample=extra and list(extra)))

        if complete:
            fam = BlockFamily(P, tuple(blocks))
            om = clique_via_cells(fam).value
            checks.append(_rec("clique-equals-T", om == P.num_types, f"omega={om}, |T|={P.num_types}"))
            t0 = min(by_type)
            cls = by_type[t0]
            indep = len(cls) == P.M and g.is_independent(cls)
            checks.append(_rec("alpha-equals-M", indep and (P.M + 1) * P.s**P.k > P.m**P.d,
                               f"t-class {list(t0)} of size {len(cls)} independent; M+1 blocks exceed volume m^d"))
        else:
            checks.append(_skip("clique-equals-T", "not the complete family"))
            checks.append(_skip("alpha-equals-M", "not the complete family"))

        if boxes and n <= 5000:
            rng = trial_rng(seed, 0)
            fp_bad = None
            for _ in range(samples):
                I = random_independent_set(g, rng)
                r = fingerprint(g, I, P.M)
                again = fingerprint(g, r.S, P.M)
                if not (set(r.S) <= set(I) and set(I) <= r.container and len(r.fS) <= 2 * P.M and again.fS == r.fS):
                    fp_bad = {"I": I, "S": list(r.S)}
                    break
            checks.append(_rec("fingerprint", fp_bad is None, f"{samples} random independent sets", counterexample=fp_bad))
        else:
            checks.append(_skip("fingerprint", "family too large"))

    if boxes and n <= SMALL:
        om = max_clique_boxes(boxes).value
        al = max_independent_set(g).value
        tau = min_piercing(boxes).value
        chi = chromatic_number(g).value
        ok = tau >= al and chi >= om and chi * al >= n and tau * om >= n
        checks.append(_rec("duality", ok, f"omega={om} alpha={al} tau={tau} chi={chi}"))
    else:
        checks.append(_skip("duality", f"needs 1..{SMALL} boxes"))

    failed = [c["name"] for c in checks if c["status"] == "fail"]
    return {"schema": "boxblocks.verify/1", "n": n, "ok": not failed, "failed": failed, "checks": checks}
