# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled minor-search kernel; same contract as ``_purecore.search``."""

from libc.stdint cimport uint32_t, int64_t

DEF MAXV = 32


cdef extern from *:
    int __builtin_popcount(unsigned int) nogil
    int __builtin_ctz(unsigned int) nogil


cdef inline int popc(uint32_t x) nogil:
    return __builtin_popcount(x)


cdef inline int lowbit(uint32_t x) nogil:
    return __builtin_ctz(x)


cdef struct State:
    int n
    int h
    int pm
    int slack
    int complete
    int64_t nodes
    int64_t limit
    uint32_t rows[MAXV]
    int verts[MAXV]
    int twin_prev[MAXV]
    uint32_t unassigned[MAXV + 1]
    int label[MAXV]
    uint32_t block[MAXV]
    uint32_t pat[MAXV]
    int pdeg[MAXV]
    int pdeg_sorted[MAXV]
    int porder[MAXV]
    uint32_t qrows[MAXV]
    int qdeg[MAXV]
    int image[MAXV]


cdef inline uint32_t reach(State* s, uint32_t start, uint32_t allowed) nogil:
    cdef uint32_t seen = start, frontier = start, nxt, f
    while frontier:
        nxt = 0
        f = frontier
        while f:
            nxt |= s.rows[lowbit(f)]
            f &= f - 1
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


cdef int embed(State* s, int k, uint32_t used) nogil:
    cdef int h = s.h, p, j, q, b
    cdef uint32_t cand, r
    if k == h:
        return 1
    p = s.porder[k]
    cand = ((<uint32_t>1 << h) - 1) & ~used
    r = s.pat[p]
    for j in range(k):
        q = s.porder[j]
        if (r >> q) & 1:
            cand &= s.qrows[s.image[q]]
    while cand:
        b = lowbit(cand)
        cand &= cand - 1
        if s.qdeg[b] < s.pdeg[p]:
            continue
        s.image[p] = b
        if embed(s, k + 1, used | (<uint32_t>1 << b)):
            return 1
    s.image[p] = -1
    return 0


cdef int leaf(State* s) nogil:
    cdef int h = s.h, b, c, i, j, tmp, total = 0
    cdef uint32_t bm, nbm, qr
    cdef int sorted_q[MAXV]
    for b in range(h):
        bm = s.block[b]
        if reach(s, bm & (~bm + 1), bm) != bm:
            return 0
    for b in range(h):
        nbm = 0
        bm = s.block[b]
        while bm:
            nbm |= s.rows[lowbit(bm)]
            bm &= bm - 1
        qr = 0
        for c in range(h):
            if c != b and (nbm & s.block[c]):
                qr |= <uint32_t>1 << c
        s.qrows[b] = qr
        s.qdeg[b] = popc(qr)
        total += s.qdeg[b]
    if total // 2 < s.pm:
        return 0
    if s.complete:
        for b in range(h):
            s.image[b] = b
        return 1
    for i in range(h):
        sorted_q[i] = s.qdeg[i]
    for i in range(1, h):
        tmp = sorted_q[i]
        j = i - 1
        while j >= 0 and sorted_q[j] < tmp:
            sorted_q[j + 1] = sorted_q[j]
            j -= 1
        sorted_q[j + 1] = tmp
    for i in range(h):
        if sorted_q[i] < s.pdeg_sorted[i]:
            return 0
    for i in range(h):
        s.image[i] = -1
    return embed(s, 0, 0)


cdef int rec(State* s, int i, int nb, int internal) nogil:
    cdef int v, lo, remaining, top, b, c, add, ok, r, nnb
    cdef uint32_t vbit, rest, nbrs, bm
    s.nodes += 1
    if s.nodes > s.limit:
        return -1
    if i == s.n:
        if nb == s.h and leaf(s):
            return 1
        return 0
    v = s.verts[i]
    vbit = <uint32_t>1 << v
    lo = s.label[s.twin_prev[i]] if s.twin_prev[i] >= 0 else 0
    remaining = s.n - i - 1
    rest = s.unassigned[i + 1]
    top = nb if nb < s.h else s.h - 1
    nbrs = s.rows[v]
    b = top
    while b >= lo:
        if b == nb:
            if s.h - nb - 1 > remaining:
                b -= 1
                continue
        elif s.h - nb > remaining:
            b -= 1
            continue
        add = popc(nbrs & s.block[b])
        if internal + add > s.slack:
            b -= 1
            continue
        s.block[b] |= vbit
        s.label[i] = b
        nnb = nb + 1 if b == nb else nb
        ok = 1
        for c in range(nnb):
            bm = s.block[c]
            if c != b and not (nbrs & bm):
                continue
            if (reach(s, bm & (~bm + 1), bm | rest) & bm) != bm:
                ok = 0
                break
        if ok:
            r = rec(s, i + 1, nnb, internal + add)
            if r != 0:
                s.block[b] &= ~vbit
                return r
        s.block[b] &= ~vbit
        b -= 1
    return 0


def search(host_rows, verts, twin_prev, pat_rows, node_limit):
    cdef State s
    cdef int i, p, n = len(verts), h = len(pat_rows), m_sel = 0
    cdef uint32_t sel = 0, acc = 0
    cdef int status
    if n > MAXV or h > MAXV or len(host_rows) > MAXV:
        raise ValueError("kernel supports at most 32 vertices")
    if h == 0:
        return 1, 0, []
    for i in range(n):
        sel |= <uint32_t>1 << <int>verts[i]
    for i in range(len(host_rows)):
        s.rows[i] = (<uint32_t>host_rows[i]) & sel
    for i in range(n):
        s.verts[i] = verts[i]
        s.twin_prev[i] = twin_prev[i]
        m_sel += popc(s.rows[s.verts[i]])
        s.label[i] = 0
    m_sel //= 2
    s.n = n
    s.h = h
    s.pm = 0
    for p in range(h):
        s.pat[p] = pat_rows[p]
        s.pdeg[p] = popc(s.pat[p])
        s.pm += s.pdeg[p]
        s.block[p] = 0
    s.pm //= 2
    if h > n or s.pm > m_sel:
        return 0, 0, None
    for p, d in enumerate(sorted([s.pdeg[i] for i in range(h)], reverse=True)):
        s.pdeg_sorted[p] = d
    from ._purecore import _pattern_order
    for p, q in enumerate(_pattern_order(list(pat_rows), h)):
        s.porder[p] = q
    s.complete = 1 if s.pm == h * (h - 1) // 2 else 0
    s.slack = m_sel - s.pm
    s.unassigned[n] = 0
    for i in range(n - 1, -1, -1):
        acc |= <uint32_t>1 << s.verts[i]
        s.unassigned[i] = acc
    s.nodes = 0
    s.limit = node_limit
    with nogil:
        status = rec(&s, 0, 0, 0)
    if status == 1:
        assignment = [0] * n
        inv = [0] * h
        for p in range(h):
            inv[s.image[p]] = p
        for i in range(n):
            assignment[i] = inv[s.label[i]]
        return 1, s.nodes, assignment
    return status, s.nodes, None
