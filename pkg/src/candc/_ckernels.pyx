# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pykernels.py``.

Same signatures, same exploration order, same node counts.
"""
from libc.stdint cimport uint64_t, int64_t
from libc.stdlib cimport malloc, free, calloc

import numpy as np
cimport numpy as cnp

cnp.import_array()

cdef enum:
    FOUND = 1
    EXHAUSTED = 0
    BUDGET = -1

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

BACKEND = "cython"


# ------------------------------------------------------------ k-coloring

cdef struct ColorState:
    int n
    int k
    int *indptr
    int *indices
    int *colors
    int *cnt
    int *sat
    int *deg
    long long nodes
    long long limit
    bint over


cdef int _pick(ColorState *st) noexcept nogil:
    cdef int v, best = -1, bs = -1, bd = -1, s
    for v in range(st.n):
        if st.colors[v] < 0:
            s = st.sat[v]
            if s > bs or (s == bs and st.deg[v] > bd):
                best = v
                bs = s
                bd = st.deg[v]
    return best


cdef inline void _assign(ColorState *st, int v, int c) noexcept nogil:
    cdef int t, w
    st.colors[v] = c
    for t in range(st.indptr[v], st.indptr[v + 1]):
        w = st.indices[t]
        if st.cnt[w * st.k + c] == 0:
            st.sat[w] += 1
        st.cnt[w * st.k + c] += 1


cdef inline void _unassign(ColorState *st, int v, int c) noexcept nogil:
    cdef int t, w
    st.colors[v] = -1
    for t in range(st.indptr[v], st.indptr[v + 1]):
        w = st.indices[t]
        st.cnt[w * st.k + c] -= 1
        if st.cnt[w * st.k + c] == 0:
            st.sat[w] -= 1


cdef bint _color_rec(ColorState *st, int left, int maxc) noexcept nogil:
    cdef int v, c, top
    if left == 0:
        return True
    st.nodes += 1
    if st.limit and st.nodes > st.limit:
        st.over = True
        return False
    v = _pick(st)
    if st.sat[v] >= st.k:
        return False
    top = maxc + 1
    if top > st.k - 1:
        top = st.k - 1
    for c in range(top + 1):
        if st.cnt[v * st.k + c]:
            continue
        _assign(st, v, c)
        if _color_rec(st, left - 1, c if c > maxc else maxc):
            return True
        if st.over:
            return False
        _unassign(st, v, c)
    return False


def color_search(int n, indptr, indices, int k, init_colors, long long node_limit=0):
    cdef ColorState st
    cdef int v, c, t, w, maxc = -1, free_count = 0
    cdef bint ok
    cdef cnp.ndarray[int, ndim=1] ip = np.ascontiguousarray(indptr, dtype=np.intc)
    cdef cnp.ndarray[int, ndim=1] ix = np.ascontiguousarray(indices, dtype=np.intc)
    if ix.shape[0] == 0:
        ix = np.zeros(1, dtype=np.intc)
    cdef cnp.ndarray[int, ndim=1] col = np.array([int(x) for x in init_colors] or [0],
                                                  dtype=np.intc)
    cdef cnp.ndarray[int, ndim=1] cnt = np.zeros(max(n * k, 1), dtype=np.intc)
    cdef cnp.ndarray[int, ndim=1] sat = np.zeros(max(n, 1), dtype=np.intc)
    cdef cnp.ndarray[int, ndim=1] deg = np.zeros(max(n, 1), dtype=np.intc)
    for v in range(n):
        deg[v] = ip[v + 1] - ip[v]
    for v in range(n):
        c = col[v]
        if c >= 0:
            if c >= k:
                return EXHAUSTED, [int(x) for x in col[:n]], 0
            if c > maxc:
                maxc = c
            for t in range(ip[v], ip[v + 1]):
                w = ix[t]
                if col[w] == c:
                    return EXHAUSTED, [int(x) for x in col[:n]], 0
                if cnt[w * k + c] == 0:
                    sat[w] += 1
                cnt[w * k + c] += 1
        else:
            free_count += 1
    st.n = n
    st.k = k
    st.indptr = &ip[0]
    st.indices = &ix[0]
    st.colors = &col[0]
    st.cnt = &cnt[0]
    st.sat = &sat[0]
    st.deg = &deg[0]
    st.nodes = 0
    st.limit = node_limit
    st.over = False
    with nogil:
        ok = _color_rec(&st, free_count, maxc)
    out = [int(x) for x in col[:n]]
    if st.over:
        return BUDGET, out, st.nodes
    return (FOUND if ok else EXHAUSTED), out, st.nodes


# ------------------------------------------------- Alon-Tarsi orientations

cdef struct ATState:
    int m
    int *ea
    int *eb
    int *rem
    int *left
    long long even
    long long odd
    long long nodes


cdef void _at_rec(ATState *st, int i, int parity) noexcept nogil:
    cdef int a, b
    st.nodes += 1
    if i == st.m:
        if parity:
            st.odd += 1
        else:
            st.even += 1
        return
    a = st.ea[i]
    b = st.eb[i]
    st.left[a] -= 1
    st.left[b] -= 1
    if st.rem[a] > 0:
        st.rem[a] -= 1
        if st.rem[a] <= st.left[a] and st.rem[b] <= st.left[b]:
            _at_rec(st, i + 1, parity)
        st.rem[a] += 1
    if st.rem[b] > 0:
        st.rem[b] -= 1
        if st.rem[a] <= st.left[a] and st.rem[b] <= st.left[b]:
            _at_rec(st, i + 1, parity ^ 1)
        st.rem[b] += 1
    st.left[a] += 1
    st.left[b] += 1


def at_count(int n, ea, eb, exponent):
    cdef int m = len(ea), v, i
    if m >= 63:
        raise OverflowError("compiled Alon-Tarsi kernel is limited to < 63 edges")
    cdef cnp.ndarray[int, ndim=1] a = np.array(list(ea) or [0], dtype=np.intc)
    cdef cnp.ndarray[int, ndim=1] b = np.array(list(eb) or [0], dtype=np.intc)
    cdef cnp.ndarray[int, ndim=1] rem = np.array([int(x) for x in exponent] or [0],
                                                  dtype=np.intc)
    cdef cnp.ndarray[int, ndim=1] left = np.zeros(max(n, 1), dtype=np.intc)
    for i in range(m):
        left[a[i]] += 1
        left[b[i]] += 1
    for v in range(n):
        if rem[v] < 0 or rem[v] > left[v]:
            return 0, 0, 0
    cdef ATState st
    st.m = m
    st.ea = &a[0]
    st.eb = &b[0]
    st.rem = &rem[0]
    st.left = &left[0]
    st.even = 0
    st.odd = 0
    st.nodes = 0
    with nogil:
        _at_rec(&st, 0, 0)
    return int(st.even), int(st.odd), int(st.nodes)


# ------------------------------------------- ordered non-nested matchings

cdef inline int _popcount(uint64_t x) noexcept nogil:
    return __builtin_popcountll(x)


cdef struct ChainState:
    int m
    uint64_t *radj
    int need
    int mi
    int mj
    bint has_must
    int clen
    int blen
    int chain_l[40]
    int chain_r[40]
    int best_l[40]
    int best_r[40]


cdef bint _chain_rec(ChainState *st, int pl, int pr, uint64_t used, bint inc) noexcept nogil:
    cdef int l, r, t, avail, pending
    cdef uint64_t rs, full, above
    if st.clen > st.blen and (inc or not st.has_must):
        st.blen = st.clen
        for t in range(st.clen):
            st.best_l[t] = st.chain_l[t]
            st.best_r[t] = st.chain_r[t]
        if st.blen >= st.need:
            return True
    full = (<uint64_t>1 << st.m) - 1 if st.m < 64 else <uint64_t>0xFFFFFFFFFFFFFFFF
    above = ~((<uint64_t>1 << (pl + 1)) - 1)
    avail = _popcount(full & ~used & above)
    pending = 1 if (st.has_must and not inc) else 0
    if st.clen + pending + avail // 2 <= st.blen:
        return False
    for l in range(pl + 1, st.m):
        if (used >> l) & 1:
            if l == st.mi and not inc:
                if st.mj > pr:
                    st.chain_l[st.clen] = st.mi
                    st.chain_r[st.clen] = st.mj
                    st.clen += 1
                    if _chain_rec(st, st.mi, st.mj, used, True):
                        return True
                    st.clen -= 1
                return False
            continue
        if st.has_must and not inc and l > st.mi:
            return False
        rs = st.radj[l] & ~used & ~((<uint64_t>1 << (pr + 1)) - 1)
        if st.has_must and not inc:
            rs &= (<uint64_t>1 << st.mj) - 1
        while rs:
            r = __builtin_ctzll(rs)
            rs &= rs - 1
            st.chain_l[st.clen] = l
            st.chain_r[st.clen] = r
            st.clen += 1
            if _chain_rec(st, l, r, used | (<uint64_t>1 << l) | (<uint64_t>1 << r), inc):
                return True
            st.clen -= 1
    return False


cdef int _longest(ChainState *st, int m, uint64_t *radj, int need, int mi, int mj) noexcept nogil:
    cdef uint64_t reserved = 0
    st.m = m
    st.radj = radj
    st.need = need
    st.clen = 0
    st.blen = 0
    if mi >= 0:
        st.has_must = True
        st.mi = mi
        st.mj = mj
        reserved = (<uint64_t>1 << mi) | (<uint64_t>1 << mj)
    else:
        st.has_must = False
        st.mi = -1
        st.mj = -1
    _chain_rec(st, -1, -1, reserved, False)
    return st.blen


def nonnested_max(int m, colors):
    if m > 62:
        raise ValueError("compiled kernel supports m <= 62")
    cdef uint64_t radj[2][64]
    cdef ChainState st
    cdef int i, j, p = 0, c, t, size0, size1
    for c in range(2):
        for i in range(64):
            radj[c][i] = 0
    cols = list(colors)
    for i in range(m):
        for j in range(i + 1, m):
            radj[<int>cols[p]][i] |= (<uint64_t>1 << j)
            p += 1
    size0 = _longest(&st, m, radj[0], m // 2, -1, -1)
    w0 = [(st.best_l[t], st.best_r[t]) for t in range(size0)]
    size1 = _longest(&st, m, radj[1], m // 2, -1, -1)
    w1 = [(st.best_l[t], st.best_r[t]) for t in range(size1)]
    if size0 >= size1:
        return size0, 0, w0
    return size1, 1, w1


cdef struct AvoidState:
    int m
    int n
    int npairs
    int *pi
    int *pj
    int *rev
    int *colors
    int *fixed
    int nfixed
    uint64_t radj[2][64]
    long long nodes
    long long limit
    bint over
    ChainState chain


cdef bint _leader(AvoidState *st) noexcept nogil:
    cdef int flip, p, a, b
    for flip in range(2):
        for p in range(st.npairs):
            a = st.colors[p]
            b = st.colors[st.rev[p]] ^ flip
            if a < b:
                break
            if a > b:
                return False
    return True


cdef bint _avoid_rec(AvoidState *st, int p) noexcept nogil:
    cdef int i, j, c, lo, hi
    st.nodes += 1
    if st.limit and st.nodes > st.limit:
        st.over = True
        return False
    if p == st.npairs:
        return _leader(st)
    i = st.pi[p]
    j = st.pj[p]
    if p < st.nfixed:
        lo = st.fixed[p]
        hi = lo
    else:
        lo = 0
        hi = 1
    for c in range(lo, hi + 1):
        st.radj[c][i] |= (<uint64_t>1 << j)
        if _longest(&st.chain, st.m, st.radj[c], st.n, i, j) < st.n:
            st.colors[p] = c
            if _avoid_rec(st, p + 1):
                return True
            if st.over:
                return False
            st.colors[p] = -1
        st.radj[c][i] &= ~(<uint64_t>1 << j)
    return False


def ramsey_avoid(int m, int n, long long node_limit=0, prefix=()):
    if m > 62:
        raise ValueError("compiled kernel supports m <= 62")
    pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    cdef int npairs = len(pairs), p, i
    index = {q: k for k, q in enumerate(pairs)}
    cdef cnp.ndarray[int, ndim=1] pi = np.array([q[0] for q in pairs] or [0], dtype=np.intc)
    cdef cnp.ndarray[int, ndim=1] pj = np.array([q[1] for q in pairs] or [0], dtype=np.intc)
    cdef cnp.ndarray[int, ndim=1] rev = np.array(
        [index[(m - 1 - q[1], m - 1 - q[0])] for q in pairs] or [0], dtype=np.intc)
    cdef cnp.ndarray[int, ndim=1] col = np.full(max(npairs, 1), -1, dtype=np.intc)
    fixed_list = list(prefix)
    if npairs and not fixed_list:
        fixed_list = [0]
    cdef cnp.ndarray[int, ndim=1] fixed = np.array(fixed_list or [0], dtype=np.intc)
    if n <= 0:
        return EXHAUSTED, [-1] * npairs, 0
    cdef AvoidState *st = <AvoidState *>calloc(1, sizeof(AvoidState))
    cdef bint ok
    st.m = m
    st.n = n
    st.npairs = npairs
    st.pi = &pi[0]
    st.pj = &pj[0]
    st.rev = &rev[0]
    st.colors = &col[0]
    st.fixed = &fixed[0]
    st.nfixed = len(fixed_list)
    st.limit = node_limit
    with nogil:
        ok = _avoid_rec(st, 0)
    nodes = st.nodes
    over = st.over
    free(st)
    out = [int(x) for x in col[:npairs]]
    if over:
        return BUDGET, out, nodes
    return (FOUND if ok else EXHAUSTED), out, nodes


# --------------------------------------------------- boundary bitset sweep

cdef uint64_t _MASK[3][4]

cdef void _init_masks():
    cdef int p, k, i
    cdef uint64_t mask
    for p in range(3):
        for k in range(4):
            mask = 0
            for i in range(64):
                if (i >> (2 * p)) & 3 == k:
                    mask |= (<uint64_t>1 << i)
            _MASK[p][k] = mask

_init_masks()


cdef inline uint64_t _shift_word(uint64_t w, int group, int p, int a) noexcept nogil:
    cdef int k, t, d
    cdef int s = 1 << (2 * p)
    cdef uint64_t out = 0, part
    for k in range(4):
        if group == 0:
            t = (k + a) & 3
        else:
            t = k ^ a
        part = w & _MASK[p][k]
        d = (t - k) * s
        if d > 0:
            part <<= d
        elif d < 0:
            part >>= -d
        out |= part
    return out


def shift_or(uint64_t[::1] src, uint64_t[::1] dst, int ndigits, int group, positions, amounts):
    """dst |= src translated by the group vector (see the Python twin)."""
    cdef int nlow = 0, nhigh = 0, q, p, a
    cdef int lowp[64]
    cdef int lowa[64]
    cdef int highshift[64]
    cdef int higha[64]
    cdef Py_ssize_t nwords = src.shape[0], J, S
    cdef uint64_t w, keep
    cdef int dig, nd
    for p, a in zip(positions, amounts):
        a = a & 3
        if a == 0:
            continue
        if p < 3:
            lowp[nlow] = p
            lowa[nlow] = a
            nlow += 1
        else:
            highshift[nhigh] = 2 * (p - 3)
            higha[nhigh] = a
            nhigh += 1
    keep = 0xFFFFFFFFFFFFFFFF
    if ndigits < 3:
        keep = (<uint64_t>1 << (1 << (2 * ndigits))) - 1
    with nogil:
        for J in range(nwords):
            # source word: undo the high-digit translation
            S = J
            for q in range(nhigh):
                dig = (S >> highshift[q]) & 3
                if group == 0:
                    nd = (dig - higha[q]) & 3
                else:
                    nd = dig ^ higha[q]
                S += (<Py_ssize_t>(nd - dig)) << highshift[q]
            w = src[S]
            if w == 0:
                continue
            for q in range(nlow):
                w = _shift_word(w, group, lowp[q], lowa[q])
            dst[J] |= w & keep
