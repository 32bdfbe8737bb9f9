# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled compute kernels, API-identical to ``_kernels_py``.

The chordless-cycle scan is fully typed (CSR adjacency, C arrays); the
clique / independent-set / treewidth searches keep the arbitrary-width
Python-int bitsets of the pure version but run the bookkeeping loops at
C speed.
"""

from cpython.mem cimport PyMem_Malloc, PyMem_Free

BACKEND = "cy"

# bitsets are arbitrary-width Python ints; shifting this keeps the shift
# in object arithmetic instead of overflowing a C integer
ONE = 1


def _degeneracy_order(int n, adj):
    """Vertices in a smallest-last (degeneracy) order, plus the degeneracy."""
    cdef int v, u, d, degeneracy = 0
    deg = [len(adj[v]) for v in range(n)]
    removed = [False] * n
    buckets = {}
    for v in range(n):
        buckets.setdefault(deg[v], set()).add(v)
    order = []
    for _ in range(n):
        d = 0
        while d not in buckets or not buckets[d]:
            d += 1
        v = min(buckets[d])
        buckets[d].discard(v)
        if d > degeneracy:
            degeneracy = d
        removed[v] = True
        order.append(v)
        for u in adj[v]:
            if not removed[u]:
                buckets[deg[u]].discard(u)
                deg[u] -= 1
                buckets.setdefault(deg[u], set()).add(u)
    return order, degeneracy


cdef _color_sort(list masks, object p):
    cdef int v, color = 0
    order = []
    colors = []
    uncolored = p
    while uncolored:
        color += 1
        q = uncolored
        while q:
            b = q & -q
            v = b.bit_length() - 1
            order.append(v)
            colors.append(color)
            uncolored &= ~b
            q &= ~(masks[v] | b)
    return order, colors


def _clique_bitset(masks, cand_mask, int best_size):
    """Largest clique within cand_mask (Tomita search with coloring bound);
    returns a vertex list, or [] if none beats best_size."""
    cdef list best = []
    masks = list(masks)

    def expand(list r, p):
        nonlocal best
        cdef int idx, v, floor_
        order, colors = _color_sort(masks, p)
        for idx in range(len(order) - 1, -1, -1):
            v = order[idx]
            floor_ = best_size if best_size > len(best) else len(best)
            if len(r) + <int> colors[idx] <= floor_:
                return
            r.append(v)
            p2 = p & masks[v]
            if p2:
                expand(r, p2)
            elif len(r) > floor_:
                best = list(r)
            r.pop()
            p &= ~(ONE << v)

    expand([], cand_mask)
    return best


def max_clique(int n, adj):
    """An exact maximum clique, as a sorted vertex list."""
    cdef int v, u, i
    if n == 0:
        return []
    adjsets = [set(a) for a in adj]
    order, _ = _degeneracy_order(n, adj)
    rank = [0] * n
    for i in range(n):
        rank[order[i]] = i
    best = [order[0]]
    for v in order:
        cand = [u for u in adjsets[v] if rank[u] > rank[v]]
        if len(cand) + 1 <= len(best):
            continue
        local = {u: i for i, u in enumerate(cand)}
        masks = [0] * len(cand)
        for u in cand:
            m = 0
            for w in adjsets[u]:
                if w in local:
                    m |= ONE << <int> local[w]
            masks[local[u]] = m
        sub = _clique_bitset(masks, (ONE << len(cand)) - 1, len(best) - 1)
        if len(sub) + 1 > len(best):
            best = [v] + [cand[i] for i in sub]
    return sorted(best)


def max_independent_set(int n, adj):
    """An exact maximum independent set, as a sorted vertex list."""
    cdef int v, u
    if n == 0:
        return []
    full = (ONE << n) - 1
    masks = [0] * n
    for v in range(n):
        m = 0
        for u in adj[v]:
            m |= ONE << u
        masks[v] = (~(m | (ONE << v))) & full
    return sorted(_clique_bitset(masks, full, 0))


cdef int _csr_has(int* idx, int* nbr, int u, int w) nogil:
    """Binary search for w in u's sorted CSR row."""
    cdef int lo = idx[u], hi = idx[u + 1] - 1, mid
    while lo <= hi:
        mid = (lo + hi) >> 1
        if nbr[mid] == w:
            return 1
        if nbr[mid] < w:
            lo = mid + 1
        else:
            hi = mid - 1
    return 0


def shortest_hole(int n, adj, int bound):
    """Length of a shortest chordless cycle of length in [4, bound], or None."""
    cdef int s, v, w, k, i, depth, limit, best = -1
    cdef int m = 0, advanced
    if bound < 4:
        return None
    for v in range(n):
        m += len(adj[v])
    cdef int* idx = <int*> PyMem_Malloc((n + 1) * sizeof(int))
    cdef int* nbr = <int*> PyMem_Malloc((m if m else 1) * sizeof(int))
    cdef int* path = <int*> PyMem_Malloc((bound + 2) * sizeof(int))
    cdef int* cursor = <int*> PyMem_Malloc((bound + 2) * sizeof(int))
    cdef char* on_path = <char*> PyMem_Malloc(n * sizeof(char))
    if not (idx and nbr and path and cursor and on_path):
        raise MemoryError()
    try:
        i = 0
        for v in range(n):
            idx[v] = i
            for w in sorted(adj[v]):
                nbr[i] = w
                i += 1
        idx[n] = i
        for v in range(n):
            on_path[v] = 0

        for s in range(n):
            limit = bound if best < 0 else best - 1
            if limit < 4:
                break
            path[0] = s
            cursor[0] = idx[s]
            on_path[s] = 1
            depth = 0
            while depth >= 0:
                advanced = 0
                while cursor[depth] < idx[path[depth] + 1]:
                    w = nbr[cursor[depth]]
                    cursor[depth] += 1
                    if w <= s or on_path[w]:
                        continue
                    if depth == 0:
                        # first edge; nothing to close or chord yet
                        depth += 1
                        path[depth] = w
                        cursor[depth] = idx[w]
                        on_path[w] = 1
                        advanced = 1
                        break
                    # chord against any internal path vertex (not the tip)
                    k = 0
                    for i in range(1, depth):
                        if _csr_has(idx, nbr, w, path[i]):
                            k = 1
                            break
                    if k:
                        continue
                    if _csr_has(idx, nbr, w, s):
                        k = depth + 2
                        if k >= 4 and path[1] < w and (best < 0 or k < best):
                            best = k
                            limit = best - 1
                        # w sees s: extending past w would leave a chord
                        continue
                    if depth + 2 < limit:
                        depth += 1
                        path[depth] = w
                        cursor[depth] = idx[w]
                        on_path[w] = 1
                        advanced = 1
                        break
                if not advanced:
                    on_path[path[depth]] = 0
                    depth -= 1
            if best == 4:
                break
    finally:
        PyMem_Free(idx)
        PyMem_Free(nbr)
        PyMem_Free(path)
        PyMem_Free(cursor)
        PyMem_Free(on_path)
    return None if best < 0 else best


def _treewidth_decide(int n, masks, int k, set memo_failed):
    """Can the graph be eliminated with fill-degree <= k at each step?"""

    def rec(remaining, list cur):
        cdef int v, u, d, cnt, simplicial, fill
        cnt = bin(remaining).count("1")
        if cnt <= k + 1:
            return True
        if remaining in memo_failed:
            return False
        live = remaining
        while live:
            b = live & -live
            v = b.bit_length() - 1
            live &= ~b
            nbv = cur[v] & remaining
            d = bin(nbv).count("1")
            if d > k:
                continue
            if d <= 2 and k >= 2:
                if d == 2:
                    lo = nbv & -nbv
                    u = lo.bit_length() - 1
                    d = (nbv & ~lo).bit_length() - 1
                    nxt = list(cur)
                    nxt[u] |= ONE << d
                    nxt[d] |= ONE << u
                    return rec(remaining & ~b, nxt)
                return rec(remaining & ~b, cur)
            simplicial = 1
            m = nbv
            while m:
                bb = m & -m
                u = bb.bit_length() - 1
                m &= ~bb
                if (nbv & ~cur[u]) & ~bb:
                    simplicial = 0
                    break
            if simplicial:
                return rec(remaining & ~b, cur)
        cands = []
        live = remaining
        while live:
            b = live & -live
            v = b.bit_length() - 1
            live &= ~b
            nbv = cur[v] & remaining
            d = bin(nbv).count("1")
            if d <= k:
                fill = 0
                m = nbv
                while m:
                    bb = m & -m
                    u = bb.bit_length() - 1
                    m &= ~bb
                    fill += bin(nbv & ~cur[u] & ~bb).count("1")
                cands.append((fill // 2, d, v, nbv))
        cands.sort()
        for _, _, v, nbv in cands:
            nxt = list(cur)
            m = nbv
            while m:
                bb = m & -m
                u = bb.bit_length() - 1
                m &= ~bb
                nxt[u] = cur[u] | (nbv & ~bb)
            if rec(remaining & ~(ONE << v), nxt):
                return True
        memo_failed.add(remaining)
        return False

    return rec((ONE << n) - 1, list(masks))


def treewidth_exact(int n, adj):
    """Exact treewidth by search over elimination orderings (n <= 32)."""
    cdef int v, u, k, lb
    if n > 32:
        raise ValueError("treewidth_exact is limited to 32 vertices, got %d" % n)
    if n == 0:
        return 0
    masks = [0] * n
    for v in range(n):
        for u in adj[v]:
            masks[v] |= ONE << u
    if not any(masks):
        return 0
    _, lb = _degeneracy_order(n, adj)
    for k in range(lb, n):
        if _treewidth_decide(n, masks, k, set()):
            return k
    return n - 1
