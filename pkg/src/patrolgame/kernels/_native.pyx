# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twins of the pure-Python kernels.

Only machine-word inputs are accepted (the dispatchers in
``patrolgame.kernels`` check sizes and fall back to the pure versions
otherwise).  All arithmetic is integer, so results are exact.
"""

from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport calloc, free, malloc

from patrolgame.errors import CapExceededError


cdef extern from *:
    int __builtin_ctzll(unsigned long long)


cdef void _rec_enum(int depth, int period, int first, int last,
                    int* walk, int* flat, int* offs,
                    unsigned char* adj, int n, list out):
    cdef int i, v
    if depth == period - 1:
        for i in range(offs[last], offs[last + 1]):
            v = flat[i]
            if adj[v * n + first]:
                walk[depth] = v
                out.append(tuple([walk[j] for j in range(period)]))
    else:
        for i in range(offs[last], offs[last + 1]):
            v = flat[i]
            walk[depth] = v
            _rec_enum(depth + 1, period, first, v, walk, flat, offs, adj, n, out)


def enumerate_cyclic_sequences(neighbors, int period):
    """All length-``period`` index sequences stepping inside ``neighbors``."""
    cdef int n = len(neighbors)
    cdef int total = 0
    cdef int u, v, i
    for u in range(n):
        total += len(neighbors[u])
    cdef int* flat = <int*> malloc(total * sizeof(int))
    cdef int* offs = <int*> malloc((n + 1) * sizeof(int))
    cdef unsigned char* adj = <unsigned char*> calloc(n * n, 1)
    cdef int* walk = <int*> malloc(period * sizeof(int))
    if flat == NULL or offs == NULL or adj == NULL or walk == NULL:
        raise MemoryError()
    i = 0
    for u in range(n):
        offs[u] = i
        for v in neighbors[u]:
            flat[i] = v
            adj[u * n + v] = 1
            i += 1
    offs[n] = i
    out = []
    try:
        for u in range(n):
            walk[0] = u
            _rec_enum(1, period, u, u, walk, flat, offs, adj, n, out)
    finally:
        free(flat)
        free(offs)
        free(adj)
        free(walk)
    return out


def coverage_masks(walks, int n, int period, int duration):
    """Interception bitmasks; requires n * period <= 64."""
    cdef uint64_t mask, one = 1
    cdef int tau, s, node, t0
    out = []
    for walk in walks:
        mask = 0
        for tau in range(period):
            node = walk[tau]
            for s in range(duration):
                t0 = (tau - s) % period
                if t0 < 0:
                    t0 += period
                mask |= one << (node * period + t0)
        out.append(mask)
    return out


cdef inline int64_t _gain(uint64_t m, uint64_t acc, int64_t* wt):
    cdef uint64_t x = m & ~acc
    cdef int64_t g = 0
    while x:
        g += wt[__builtin_ctzll(x)]
        x &= x - 1
    return g


cdef int _search(int pos, int left, uint64_t acc, int64_t accv,
                 int nmask, int k, uint64_t* cmask, int64_t* wt,
                 int64_t* suffix, int* order,
                 int64_t* bestv, int* best_set, int* best_n,
                 int* cur_set, int depth, long* nodes, long cap):
    cdef int i, j
    cdef int64_t g
    if accv > bestv[0]:
        bestv[0] = accv
        best_n[0] = depth
        for j in range(depth):
            best_set[j] = order[cur_set[j]]
    if left == 0 or pos == nmask:
        return 0
    nodes[0] += 1
    if cap >= 0 and nodes[0] > cap:
        return -1
    if accv + suffix[pos * (k + 1) + left] <= bestv[0]:
        return 0
    for i in range(pos, nmask):
        if accv + suffix[i * (k + 1) + left] <= bestv[0]:
            break
        g = _gain(cmask[i], acc, wt)
        if g == 0:
            continue
        cur_set[depth] = i
        if _search(i + 1, left - 1, acc | cmask[i], accv + g,
                   nmask, k, cmask, wt, suffix, order, bestv, best_set,
                   best_n, cur_set, depth + 1, nodes, cap) < 0:
            return -1
    return 0


def max_weight_union(masks, weights, int k, cap=None):
    """Exact maximum of weight(OR of up to ``k`` masks) over all subsets."""
    cdef int nmask = len(masks)
    if nmask == 0:
        return (), 0
    if k > nmask:
        k = nmask
    cdef int nbits = len(weights)
    cdef long climit = -1 if cap is None else <long> cap
    cdef uint64_t* raw = <uint64_t*> malloc(nmask * sizeof(uint64_t))
    cdef int64_t* wt = <int64_t*> malloc(nbits * sizeof(int64_t))
    cdef int64_t* solo = <int64_t*> malloc(nmask * sizeof(int64_t))
    cdef int* order = <int*> malloc(nmask * sizeof(int))
    cdef uint64_t* cmask = <uint64_t*> malloc(nmask * sizeof(uint64_t))
    cdef int64_t* suffix = <int64_t*> calloc((nmask + 1) * (k + 1), sizeof(int64_t))
    cdef int* best_set = <int*> malloc(nmask * sizeof(int))
    cdef int* cur_set = <int*> malloc(nmask * sizeof(int))
    if (raw == NULL or wt == NULL or solo == NULL or order == NULL
            or cmask == NULL or suffix == NULL or best_set == NULL
            or cur_set == NULL):
        raise MemoryError()
    cdef int i, r, j, best_i
    cdef int best_n = 0
    cdef int64_t bestv = 0, g, best_gain
    cdef uint64_t acc
    cdef long nodes = 0
    cdef int status
    try:
        for i in range(nmask):
            raw[i] = <uint64_t> masks[i]
        for i in range(nbits):
            wt[i] = <int64_t> weights[i]
        for i in range(nmask):
            solo[i] = _gain(raw[i], 0, wt)
            order[i] = i
        # stable insertion sort by solo weight, descending (desk scale)
        for i in range(1, nmask):
            j = i
            while j > 0 and solo[order[j - 1]] < solo[order[j]]:
                order[j - 1], order[j] = order[j], order[j - 1]
                j -= 1
        for i in range(nmask):
            cmask[i] = raw[order[i]]
        for i in range(nmask - 1, -1, -1):
            for r in range(1, k + 1):
                suffix[i * (k + 1) + r] = (
                    solo[order[i]] + suffix[(i + 1) * (k + 1) + r - 1]
                )
        # greedy incumbent over the original index order, as in the pure twin
        acc = 0
        for r in range(k):
            best_i = -1
            best_gain = -1
            for i in range(nmask):
                g = _gain(raw[i], acc, wt)
                if g > best_gain:
                    best_gain = g
                    best_i = i
            if best_gain <= 0 and best_n > 0:
                break
            best_set[best_n] = best_i
            best_n += 1
            acc |= raw[best_i]
        bestv = _gain(acc, 0, wt)
        status = _search(0, k, 0, 0, nmask, k, cmask, wt, suffix, order,
                         &bestv, best_set, &best_n, cur_set, 0,
                         &nodes, climit)
        if status < 0:
            raise CapExceededError(
                f"team best-response search exceeded {cap} nodes"
            )
        return tuple([best_set[j] for j in range(best_n)]), int(bestv)
    finally:
        free(raw)
        free(wt)
        free(solo)
        free(order)
        free(cmask)
        free(suffix)
        free(best_set)
        free(cur_set)
