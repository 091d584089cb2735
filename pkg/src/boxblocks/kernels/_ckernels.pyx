# cython: language_level=3
"""Compiled kernels.  Step-for-step mirrors of ``_pykernels``."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t, uint8_t
from libc.stdlib cimport calloc, free, malloc
from libc.string cimport memcpy, memset

cnp.import_array()

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


def adjacency_matrix(lo, hi, lo_closed, hi_closed):
    cdef const int64_t[:, :] L = np.ascontiguousarray(lo, dtype=np.int64)
    cdef const int64_t[:, :] H = np.ascontiguousarray(hi, dtype=np.int64)
    cdef const uint8_t[:, :] LC = np.ascontiguousarray(lo_closed, dtype=np.uint8)
    cdef const uint8_t[:, :] HC = np.ascontiguousarray(hi_closed, dtype=np.uint8)
    cdef Py_ssize_t n = L.shape[0], d = L.shape[1], i, j, a
    out = np.zeros((n, n), dtype=np.uint8)
    cdef uint8_t[:, :] o = out
    cdef int64_t low, high
    cdef int low_in, high_in, ok
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                ok = 1
                for a in range(d):
                    if L[i, a] > L[j, a]:
                        low = L[i, a]; low_in = LC[i, a]
                    elif L[j, a] > L[i, a]:
                        low = L[j, a]; low_in = LC[j, a]
                    else:
                        low = L[i, a]; low_in = LC[i, a] & LC[j, a]
                    if H[i, a] < H[j, a]:
                        high = H[i, a]; high_in = HC[i, a]
                    elif H[j, a] < H[i, a]:
                        high = H[j, a]; high_in = HC[j, a]
                    else:
                        high = H[i, a]; high_in = HC[i, a] & HC[j, a]
                    if not (low < high or (low == high and low_in and high_in)):
                        ok = 0
                        break
                if ok:
                    o[i, j] = 1
                    o[j, i] = 1
    return out.astype(bool)


def fingerprint(adj, in_I, Py_ssize_t limit):
    cdef const uint8_t[:, :] A = np.ascontiguousarray(adj, dtype=np.uint8)
    cdef const uint8_t[:] I = np.ascontiguousarray(in_I, dtype=np.uint8)
    cdef Py_ssize_t n = A.shape[0], u, x, y, v, best, nk, ki
    deg_arr = np.asarray(A, dtype=np.int64).sum(axis=1)
    cdef int64_t[:] deg = deg_arr
    alive_arr = np.ones(n, dtype=np.uint8)
    cdef uint8_t[:] alive = alive_arr
    kill_arr = np.zeros(n, dtype=np.int64)
    cdef int64_t[:] kill = kill_arr
    cdef Py_ssize_t remaining = n
    S = []
    trace = []
    while remaining > limit:
        v = -1
        best = -1
        for u in range(n):
            if alive[u] and deg[u] > best:
                v = u
                best = deg[u]
        nk = 0
        kill[nk] = v
        nk += 1
        if I[v]:
            S.append(int(v))
            for u in range(n):
                if A[v, u] and alive[u]:
                    kill[nk] = u
                    nk += 1
        for ki in range(nk):
            x = kill[ki]
            alive[x] = 0
            remaining -= 1
            for y in range(n):
                if alive[y] and A[x, y]:
                    deg[y] -= 1
        trace.append((int(v), bool(I[v]), int(nk)))
    return S, alive_arr.astype(bool), trace


cdef struct MisState:
    int n
    int W
    uint64_t* adj
    uint64_t* stack
    uint64_t* tmp_rest
    uint64_t* tmp_common
    int* chosen
    int nchosen
    int* best
    int nbest


cdef inline int popc_and(const uint64_t* a, const uint64_t* b, int W) nogil:
    cdef int c = 0, i
    for i in range(W):
        c += __builtin_popcountll(a[i] & b[i])
    return c


cdef inline int is_empty(const uint64_t* a, int W) nogil:
    cdef int i
    for i in range(W):
        if a[i]:
            return 0
    return 1


cdef inline int lowest(const uint64_t* a, int W) nogil:
    cdef int i
    for i in range(W):
        if a[i]:
            return i * 64 + __builtin_ctzll(a[i])
    return -1


cdef int cover_bound(MisState* st, const uint64_t* cand) nogil:
    cdef int W = st.W, count = 0, v, u, i
    cdef uint64_t* rest = st.tmp_rest
    cdef uint64_t* common = st.tmp_common
    cdef const uint64_t* row
    memcpy(rest, cand, W * sizeof(uint64_t))
    while True:
        v = lowest(rest, W)
        if v < 0:
            break
        rest[v >> 6] &= ~((<uint64_t>1) << (v & 63))
        row = st.adj + v * W
        for i in range(W):
            common[i] = row[i] & rest[i]
        while True:
            u = lowest(common, W)
            if u < 0:
                break
            rest[u >> 6] &= ~((<uint64_t>1) << (u & 63))
            row = st.adj + u * W
            for i in range(W):
                common[i] &= row[i]
            common[u >> 6] &= ~((<uint64_t>1) << (u & 63))
        count += 1
    return count


cdef void search(MisState* st, int depth, int size) nogil:
    cdef int W = st.W, n = st.n, saved = st.nchosen, found, v, vd, du, u, i, w
    cdef uint64_t* cand = st.stack + depth * W
    cdef uint64_t* nxt = st.stack + (depth + 1) * W
    cdef const uint64_t* row
    cdef uint64_t word, low
    while True:
        if is_empty(cand, W):
            if size > st.nbest:
                st.nbest = size
                memcpy(st.best, st.chosen, st.nchosen * sizeof(int))
            st.nchosen = saved
            return
        found = -1
        for w in range(W):
            word = cand[w]
            while word:
                u = w * 64 + __builtin_ctzll(word)
                if popc_and(st.adj + u * W, cand, W) <= 1:
                    found = u
                    break
                word &= word - 1
            if found >= 0:
                break
        if found < 0:
            break
        st.chosen[st.nchosen] = found
        st.nchosen += 1
        size += 1
        row = st.adj + found * W
        for i in range(W):
            cand[i] &= ~row[i]
        cand[found >> 6] &= ~((<uint64_t>1) << (found & 63))
    if size + cover_bound(st, cand) <= st.nbest:
        st.nchosen = saved
        return
    v = -1
    vd = -1
    for w in range(W):
        word = cand[w]
        while word:
            u = w * 64 + __builtin_ctzll(word)
            du = popc_and(st.adj + u * W, cand, W)
            if du > vd:
                v = u
                vd = du
            word &= word - 1
    row = st.adj + v * W
    for i in range(W):
        nxt[i] = cand[i] & ~row[i]
    nxt[v >> 6] &= ~((<uint64_t>1) << (v & 63))
    st.chosen[st.nchosen] = v
    st.nchosen += 1
    search(st, depth + 1, size + 1)
    st.nchosen -= 1
    memcpy(nxt, cand, W * sizeof(uint64_t))
    nxt[v >> 6] &= ~((<uint64_t>1) << (v & 63))
    search(st, depth + 1, size)
    st.nchosen = saved


def max_independent_set(adj):
    cdef const uint8_t[:, :] A = np.ascontiguousarray(adj, dtype=np.uint8)
    cdef int n = A.shape[0], W = (n + 63) // 64 if n else 1, i, j
    if n == 0:
        return []
    cdef MisState st
    st.n = n
    st.W = W
    st.adj = <uint64_t*>calloc(n * W, sizeof(uint64_t))
    st.stack = <uint64_t*>calloc((n + 2) * W, sizeof(uint64_t))
    st.tmp_rest = <uint64_t*>calloc(W, sizeof(uint64_t))
    st.tmp_common = <uint64_t*>calloc(W, sizeof(uint64_t))
    st.chosen = <int*>calloc(n + 1, sizeof(int))
    st.best = <int*>calloc(n + 1, sizeof(int))
    st.nchosen = 0
    st.nbest = 0
    if (st.adj == NULL or st.stack == NULL or st.tmp_rest == NULL or st.tmp_common == NULL
            or st.chosen == NULL or st.best == NULL):
        free(st.adj); free(st.stack); free(st.tmp_rest); free(st.tmp_common)
        free(st.chosen); free(st.best)
        raise MemoryError()
    try:
        for i in range(n):
            for j in range(n):
                if A[i, j]:
                    st.adj[i * W + (j >> 6)] |= (<uint64_t>1) << (j & 63)
            st.stack[i >> 6] |= (<uint64_t>1) << (i & 63)
        with nogil:
            search(&st, 0, 0)
        return sorted(st.best[i] for i in range(st.nbest))
    finally:
        free(st.adj); free(st.stack); free(st.tmp_rest); free(st.tmp_common)
        free(st.chosen); free(st.best)
