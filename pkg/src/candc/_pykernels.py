"""Pure-Python implementations of the hot search kernels.

Each function mirrors one in ``_ckernels.pyx`` with the same signature and
the same exploration order, so both backends return identical results and
node counts.  ``kernels.py`` picks the backend at import time.

Status codes shared by the searches: 1 = witness found, 0 = exhausted,
-1 = node budget exceeded.
"""
from __future__ import annotations

import sys

import numpy as np

FOUND, EXHAUSTED, BUDGET = 1, 0, -1

BACKEND = "python"


class _Budget(Exception):
    pass


# ------------------------------------------------------------ k-coloring

def color_search(n, indptr, indices, k, init_colors, node_limit=0):
    """Exact k-coloring by DSATUR-ordered backtracking.

    ``init_colors[v] >= 0`` pins v.  Only one fresh color is tried per node
    (colors above the largest used one are interchangeable).
    Returns (status, colors, nodes).
    """
    colors = [int(c) for c in init_colors]
    adj = [list(indices[indptr[v]:indptr[v + 1]]) for v in range(n)]
    # cnt[v][c]: colored neighbours of v with color c
    cnt = [[0] * k for _ in range(n)]
    sat = [0] * n
    deg = [len(a) for a in adj]
    maxc = -1
    for v in range(n):
        c = colors[v]
        if c >= 0:
            if c >= k:
                return EXHAUSTED, colors, 0
            maxc = max(maxc, c)
            for w in adj[v]:
                if colors[w] == c:
                    return EXHAUSTED, colors, 0
                if cnt[w][c] == 0:
                    sat[w] += 1
                cnt[w][c] += 1
    free = n - sum(1 for c in colors if c >= 0)
    nodes = 0

    def pick():
        best, bs, bd = -1, -1, -1
        for v in range(n):
            if colors[v] < 0:
                s = sat[v]
                if s > bs or (s == bs and deg[v] > bd):
                    best, bs, bd = v, s, deg[v]
        return best

    def assign(v, c):
        colors[v] = c
        for w in adj[v]:
            if cnt[w][c] == 0:
                sat[w] += 1
            cnt[w][c] += 1

    def unassign(v, c):
        colors[v] = -1
        for w in adj[v]:
            cnt[w][c] -= 1
            if cnt[w][c] == 0:
                sat[w] -= 1

    def rec(left, maxc):
        nonlocal nodes
        if left == 0:
            return True
        nodes += 1
        if node_limit and nodes > node_limit:
            raise _Budget
        v = pick()
        if sat[v] >= k:
            return False
        top = min(k - 1, maxc + 1)
        cv = cnt[v]
        for c in range(top + 1):
            if cv[c]:
                continue
            assign(v, c)
            if rec(left - 1, max(maxc, c)):
                return True
            unassign(v, c)
        return False

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * n + 100))
    try:
        ok = rec(free, maxc)
    except _Budget:
        return BUDGET, colors, nodes
    finally:
        sys.setrecursionlimit(old)
    return (FOUND if ok else EXHAUSTED), colors, nodes


# ------------------------------------------------- Alon-Tarsi orientations

def at_count(n, ea, eb, exponent):
    """Signed count of orientations with out-degree ``exponent``.

    Edge i is (ea[i], eb[i]); keeping it as ea -> eb has sign +1, reversing
    it has sign -1.  Returns (even_count, odd_count, nodes).
    """
    m = len(ea)
    rem = [int(x) for x in exponent]
    left = [0] * n
    for i in range(m):
        left[ea[i]] += 1
        left[eb[i]] += 1
    for v in range(n):
        if rem[v] < 0 or rem[v] > left[v]:
            return 0, 0, 0
    even = odd = nodes = 0

    def rec(i, parity):
        nonlocal even, odd, nodes
        nodes += 1
        if i == m:
            if parity:
                odd += 1
            else:
                even += 1
            return
        a, b = ea[i], eb[i]
        left[a] -= 1
        left[b] -= 1
        # a -> b
        if rem[a] > 0:
            rem[a] -= 1
            if rem[a] <= left[a] and rem[b] <= left[b]:
                rec(i + 1, parity)
            rem[a] += 1
        # b -> a
        if rem[b] > 0:
            rem[b] -= 1
            if rem[a] <= left[a] and rem[b] <= left[b]:
                rec(i + 1, parity ^ 1)
            rem[b] += 1
        left[a] += 1
        left[b] += 1

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 2 * m + 100))
    try:
        rec(0, 0)
    finally:
        sys.setrecursionlimit(old)
    return even, odd, nodes


# ------------------------------------------- ordered non-nested matchings

def _pairs(m):
    return [(i, j) for i in range(m) for j in range(i + 1, m)]


def _longest_chain(m, radj, need, must=None):
    """Longest non-nested matching in the class given by ``radj``.

    radj[l] is a bitmask of right endpoints r > l.  Edges of a non-nested
    matching, sorted by left endpoint, also have increasing right endpoints.
    Stops early once ``need`` edges are found.  With ``must=(i, j)`` only
    matchings through edge ij count.  Returns the edge list.
    """
    best: list = []
    chain: list = []
    if must is not None:
        mi, mj = must
        reserved = (1 << mi) | (1 << mj)
    else:
        mi = mj = -1
        reserved = 0

    def rec(pl, pr, used, inc):
        nonlocal best
        if len(chain) > len(best) and (inc or must is None):
            best = list(chain)
            if len(best) >= need:
                return True
        # vertices above pl that are still free bound the remaining edges
        avail = bin(((1 << m) - 1) & ~used & ~((1 << (pl + 1)) - 1)).count("1")
        pending = 1 if must is not None and not inc else 0
        if len(chain) + pending + avail // 2 <= len(best):
            return False
        for l in range(pl + 1, m):
            if (used >> l) & 1:
                if l == mi and not inc:
                    if mj > pr:
                        chain.append((mi, mj))
                        if rec(mi, mj, used, True):
                            return True
                        chain.pop()
                    return False
                continue
            if must is not None and not inc and l > mi:
                return False
            rs = radj[l] & ~used & ~((1 << (pr + 1)) - 1)
            if must is not None and not inc:
                rs &= (1 << mj) - 1
            while rs:
                r = (rs & -rs).bit_length() - 1
                rs &= rs - 1
                chain.append((l, r))
                if rec(l, r, used | (1 << l) | (1 << r), inc):
                    return True
                chain.pop()
        return False

    rec(-1, -1, reserved, False)
    return best


def nonnested_max(m, colors):
    """Largest monochromatic non-nested matching of a 2-colored ordered K_m.

    ``colors`` lists the color (0/1) of each pair i < j in lexicographic
    order, vertices 0-based.  Returns (size, color, edges).
    """
    radj = [[0] * m, [0] * m]
    for (i, j), c in zip(_pairs(m), colors):
        radj[c][i] |= 1 << j
    res = []
    for c in (0, 1):
        res.append(_longest_chain(m, radj[c], m // 2))
    c = 0 if len(res[0]) >= len(res[1]) else 1
    return len(res[c]), c, res[c]


def ramsey_avoid(m, n, node_limit=0, prefix=()):
    """DFS for a 2-coloring of ordered K_m with no monochromatic non-nested
    n-matching.

    Pairs are colored in lexicographic order; pair (0,1) gets color 0 and
    only lex-leaders under order reversal x color swap are accepted at the
    leaves.  ``prefix`` pins the colors of the first pairs.
    Returns (status, colors, nodes).
    """
    pairs = _pairs(m)
    npairs = len(pairs)
    index = {p: k for k, p in enumerate(pairs)}
    rev = [index[(m - 1 - j, m - 1 - i)] for (i, j) in pairs]
    colors = [-1] * npairs
    radj = [[0] * m, [0] * m]
    nodes = 0
    fixed = list(prefix)
    if npairs and not fixed:
        fixed = [0]

    def leader():
        for flip in (0, 1):
            for p in range(npairs):
                a = colors[p]
                b = colors[rev[p]] ^ flip
                if a < b:
                    break
                if a > b:
                    return False
        return True

    def rec(p):
        nonlocal nodes
        nodes += 1
        if node_limit and nodes > node_limit:
            raise _Budget
        if p == npairs:
            return leader()
        i, j = pairs[p]
        choices = (fixed[p],) if p < len(fixed) else (0, 1)
        for c in choices:
            radj[c][i] |= 1 << j
            if len(_longest_chain(m, radj[c], n, must=(i, j))) < n:
                colors[p] = c
                if rec(p + 1):
                    return True
                colors[p] = -1
            radj[c][i] &= ~(1 << j)
        return False

    if n <= 0:
        return EXHAUSTED, colors, 0
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 2 * npairs + 100))
    try:
        ok = rec(0)
    except _Budget:
        return BUDGET, colors, nodes
    finally:
        sys.setrecursionlimit(old)
    return (FOUND if ok else EXHAUSTED), colors, nodes


# --------------------------------------------------- boundary bitset sweep

Z4, Z2Z2 = 0, 1


def _low_masks():
    # _MASK[p][k]: bits of a 64-bit word whose index has base-4 digit p == k
    out = []
    for p in range(3):
        row = []
        for k in range(4):
            mask = 0
            for i in range(64):
                if (i >> (2 * p)) & 3 == k:
                    mask |= 1 << i
            row.append(np.uint64(mask))
        out.append(row)
    return out


_MASK = _low_masks()


def _shift_low(arr, group, p, a):
    """Move every bit of each word from digit value k to k+a (Z4) or k^a."""
    s = 4 ** p
    out = np.zeros_like(arr)
    for k in range(4):
        t = (k + a) % 4 if group == Z4 else k ^ a
        part = arr & _MASK[p][k]
        d = (t - k) * s
        if d > 0:
            part <<= np.uint64(d)
        elif d < 0:
            part >>= np.uint64(-d)
        out |= part
    return out


def shift_or(src, dst, ndigits, group, positions, amounts):
    """dst |= src translated by the group vector (positions -> amounts).

    The arrays are packed bitsets over ``ndigits`` base-4 digits; bit x of
    the set is word x >> 6, bit x & 63.  Digit p of x is (x >> 2p) & 3.
    Translation adds ``amounts`` (mod 4 or XOR) at the listed digits.
    """
    high = ndigits - 3
    if high < 0:
        # tiny sets live in the low bits of a single word
        view = src.copy()
        for p, a in zip(positions, amounts):
            view = _shift_low(view, group, p, a)
        nb = 4 ** ndigits
        if nb < 64:
            view &= np.uint64((1 << nb) - 1)
        dst |= view
        return
    shape = (4,) * high
    cur = src.reshape(shape) if high else src
    for p, a in zip(positions, amounts):
        a %= 4
        if a == 0:
            continue
        if p < 3:
            cur = _shift_low(cur, group, p, a)
        else:
            axis = high - 1 - (p - 3)  # C order: last axis is digit 3
            if group == Z4:
                cur = np.roll(cur, a, axis=axis)
            else:
                cur = np.take(cur, [k ^ a for k in range(4)], axis=axis)
    dst |= cur.reshape(-1)
