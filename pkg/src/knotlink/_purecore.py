"""Pure-Python minor-search kernel.

Mirror of ``_minorcore.pyx``; both expose :func:`search` with the same
contract so the two can be checked against each other.

The host vertices in ``verts`` are split into exactly ``h`` connected
blocks, all of them used (contracting leftovers into a neighbouring block
never loses a pattern edge, so on a connected host this is no loss of
generality). Blocks are numbered in order of first appearance (a restricted
growth string), which removes the symmetry of block names. Consecutive twin
vertices take non-decreasing block numbers, which removes the symmetry of
interchangeable host vertices. At a leaf the quotient graph is tested for a
spanning copy of the pattern.

Returns ``(status, nodes, assignment)``: status 1 = found, 0 = none,
-1 = node limit exceeded. ``assignment[i]`` is the pattern vertex whose
branch set contains ``verts[i]``.
"""
from __future__ import annotations


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _reach(rows, start, allowed):
    seen = start
    frontier = start
    while frontier:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= rows[low.bit_length() - 1]
            f ^= low
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def _pattern_order(pat_rows, h):
    """Pattern vertices ordered so each one has many earlier neighbours."""
    degs = [_popcount(r) for r in pat_rows]
    order = []
    placed = 0
    while len(order) < h:
        best = -1
        best_key = None
        for p in range(h):
            if (placed >> p) & 1:
                continue
            key = (_popcount(pat_rows[p] & placed), degs[p], -p)
            if best_key is None or key > best_key:
                best, best_key = p, key
        order.append(best)
        placed |= 1 << best
    return order


def _embed(q_rows, h, pat_rows, porder, pdeg):
    """Find a bijection pattern -> quotient blocks preserving pattern edges."""
    qdeg = [_popcount(r) for r in q_rows]
    image = [-1] * h

    def rec(k, used):
        if k == h:
            return True
        p = porder[k]
        cand = ((1 << h) - 1) & ~used
        r = pat_rows[p]
        for q in porder[:k]:
            if (r >> q) & 1:
                cand &= q_rows[image[q]]
        need = pdeg[p]
        while cand:
            low = cand & -cand
            b = low.bit_length() - 1
            cand ^= low
            if qdeg[b] < need:
                continue
            image[p] = b
            if rec(k + 1, used | low):
                return True
        image[p] = -1
        return False

    if rec(0, 0):
        return image
    return None


def search(host_rows, verts, twin_prev, pat_rows, node_limit):
    n = len(verts)
    h = len(pat_rows)
    sel = 0
    for v in verts:
        sel |= 1 << v
    rows = [r & sel for r in host_rows]
    m_sel = sum(_popcount(rows[v]) for v in verts) // 2
    pdeg = [_popcount(r) for r in pat_rows]
    pm = sum(pdeg) // 2
    if h == 0:
        return 1, 0, []
    if h > n or pm > m_sel:
        return 0, 0, None
    pdeg_sorted = sorted(pdeg, reverse=True)
    porder = _pattern_order(pat_rows, h)
    complete = pm == h * (h - 1) // 2
    slack = m_sel - pm

    label = [0] * n
    block = [0] * h
    unassigned = [0] * (n + 1)
    acc = 0
    for i in range(n - 1, -1, -1):
        acc |= 1 << verts[i]
        unassigned[i] = acc
    nodes = 0
    result = [None]

    def leaf():
        for b in range(h):
            bm = block[b]
            if _reach(rows, bm & -bm, bm) != bm:
                return False
        q_rows = [0] * h
        for b in range(h):
            nb_mask = 0
            bm = block[b]
            while bm:
                low = bm & -bm
                nb_mask |= rows[low.bit_length() - 1]
                bm ^= low
            qr = 0
            for c in range(h):
                if c != b and nb_mask & block[c]:
                    qr |= 1 << c
            q_rows[b] = qr
        qdeg = sorted((_popcount(r) for r in q_rows), reverse=True)
        if sum(qdeg) // 2 < pm:
            return False
        if complete:
            image = list(range(h))
        else:
            for a, b in zip(qdeg, pdeg_sorted):
                if a < b:
                    return False
            image = _embed(q_rows, h, pat_rows, porder, pdeg)
            if image is None:
                return False
        inv = [0] * h
        for p, b in enumerate(image):
            inv[b] = p
        result[0] = [inv[label[i]] for i in range(n)]
        return True

    def rec(i, nb, internal):
        nonlocal nodes
        nodes += 1
        if nodes > node_limit:
            return -1
        if i == n:
            return 1 if nb == h and leaf() else 0
        v = verts[i]
        vbit = 1 << v
        lo = label[twin_prev[i]] if twin_prev[i] >= 0 else 0
        remaining = n - i - 1
        rest = unassigned[i + 1]
        top = nb if nb < h else h - 1
        for b in range(top, lo - 1, -1):
            if b == nb:
                if h - nb - 1 > remaining:
                    continue
            elif h - nb > remaining:
                continue
            add = _popcount(rows[v] & block[b])
            if internal + add > slack:
                continue
            block[b] |= vbit
            label[i] = b
            ok = True
            nbrs = rows[v]
            for c in range(nb + 1 if b == nb else nb):
                bm = block[c]
                if c != b and not (nbrs & bm):
                    continue
                if _reach(rows, bm & -bm, bm | rest) & bm != bm:
                    ok = False
                    break
            if ok:
                r = rec(i + 1, nb + 1 if b == nb else nb, internal + add)
                if r != 0:
                    block[b] &= ~vbit
                    return r
            block[b] &= ~vbit
        return 0

    status = rec(0, 0, 0)
    if status == 1:
        return 1, nodes, result[0]
    return status, nodes, None
