"""Pure-Python kernels.  Reference semantics for the compiled versions.

All three routines take dense 0/1 numpy inputs and must produce identical
results to ``_ckernels``, witness included.
"""
from __future__ import annotations

import numpy as np

_CHUNK = 512


def adjacency_matrix(lo, hi, lo_closed, hi_closed):
    """Pairwise intersection of integer boxes with open/closed flags."""
    lo = np.asarray(lo, dtype=np.int64)
    hi = np.asarray(hi, dtype=np.int64)
    lc = np.asarray(lo_closed, dtype=bool)
    hc = np.asarray(hi_closed, dtype=bool)
    n, d = lo.shape
    out = np.zeros((n, n), dtype=bool)
    for start in range(0, n, _CHUNK):
        sl = slice(start, min(n, start + _CHUNK))
        ok = np.ones((sl.stop - sl.start, n), dtype=bool)
        for a in range(d):
            la, lb = lo[sl, a][:, None], lo[None, :, a]
            ha, hb = hi[sl, a][:, None], hi[None, :, a]
            lca, lcb = lc[sl, a][:, None], lc[None, :, a]
            hca, hcb = hc[sl, a][:, None], hc[None, :, a]
            low = np.maximum(la, lb)
            low_in = np.where(la > lb, lca, np.where(lb > la, lcb, lca & lcb))
            high = np.minimum(ha, hb)
            high_in = np.where(ha < hb, hca, np.where(hb < ha, hcb, hca & hcb))
            ok &= (low < high) | ((low == high) & low_in & high_in)
        out[sl] = ok
    np.fill_diagonal(out, False)
    return out


def _rows(adj) -> list[int]:
    adj = np.asarray(adj, dtype=bool)
    n = adj.shape[0]
    rows = []
    for i in range(n):
        packed = np.packbits(adj[i], bitorder="little")
        rows.append(int.from_bytes(packed.tobytes(), "little"))
    return rows


def fingerprint(adj, in_I, limit: int):
    """Container algorithm: repeatedly take the first max-degree vertex.

    Returns ``(S, alive, trace)``; ``trace`` holds ``(v, v_in_I, removed)``.
    """
    nbr = _rows(adj)
    n = len(nbr)
    in_I = [bool(x) for x in in_I]
    alive = (1 << n) - 1
    deg = [r.bit_count() for r in nbr]
    remaining = n
    S, trace = [], []
    while remaining > limit:
        v, best = -1, -1
        for u in range(n):
            if alive >> u & 1 and deg[u] > best:
                v, best = u, deg[u]
        if in_I[v]:
            kill = [v] + [u for u in range(n) if nbr[v] >> u & 1 and alive >> u & 1]
            S.append(v)
        else:
            kill = [v]
        for x in kill:
            alive &= ~(1 << x)
            remaining -= 1
            live = nbr[x] & alive
            while live:
                low = live & -live
                deg[low.bit_length() - 1] -= 1
                live ^= low
        trace.append((v, in_I[v], len(kill)))
    mask = np.array([bool(alive >> u & 1) for u in range(n)], dtype=bool)
    return S, mask, trace


def _cover_bound(cand: int, nbr: list[int]) -> int:
    count = 0
    rest = cand
    while rest:
        low = rest & -rest
        v = low.bit_length() - 1
        rest ^= low
        common = nbr[v] & rest
        while common:
            lu = common & -common
            u = lu.bit_length() - 1
            rest &= ~lu
            common &= nbr[u]
            common &= ~lu
        count += 1
    return count


def max_independent_set(adj) -> list[int]:
    """Exact maximum independent set by branch and bound.

    Degree <= 1 vertices are taken greedily; the bound is a greedy clique
    cover; branching is on the first vertex of maximum degree.
    """
    nbr = _rows(adj)
    n = len(nbr)
    best_size = 0
    best: list[int] = []
    chosen: list[int] = []

    def search(cand: int, size: int) -> None:
        nonlocal best_size, best
        saved = len(chosen)
        while True:
            if not cand:
                if size > best_size:
                    best_size, best = size, list(chosen)
                del chosen[saved:]
                return
            found = -1
            c = cand
            while c:
                low = c & -c
                v = low.bit_length() - 1
                if (nbr[v] & cand).bit_count() <= 1:
                    found = v
                    break
                c ^= low
            if found < 0:
                break
            chosen.append(found)
            size += 1
            cand &= ~(nbr[found] | (1 << found))
        if size + _cover_bound(cand, nbr) <= best_size:
            del chosen[saved:]
            return
        v, vd = -1, -1
        c = cand
        while c:
            low = c & -c
            u = low.bit_length() - 1
            du = (nbr[u] & cand).bit_count()
            if du > vd:
                v, vd = u, du
            c ^= low
        chosen.append(v)
        search(cand & ~nbr[v] & ~(1 << v), size + 1)
        chosen.pop()
        search(cand & ~(1 << v), size)
        del chosen[saved:]

    if n:
        search((1 << n) - 1, 0)
    return sorted(best)
