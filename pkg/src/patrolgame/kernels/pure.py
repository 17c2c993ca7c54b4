"""Pure-Python implementations of the hot combinatorial kernels.

These are the reference implementations: exact on arbitrary sizes thanks
to Python's big integers.  The compiled twin in ``_native`` mirrors the
same signatures for the input ranges it supports.
"""

from ..errors import CapExceededError


def enumerate_cyclic_sequences(neighbors, period):
    """All length-``period`` index sequences stepping inside ``neighbors``.

    ``neighbors[u]`` must list the allowed successors of ``u`` (include
    ``u`` itself for walks that may stay put).  The wrap step from the
    last position back to the first must also be allowed.  Output is in
    lexicographic order.
    """
    n = len(neighbors)
    nbr_sets = [frozenset(ns) for ns in neighbors]
    out = []
    last_t = period - 1

    def extend(prefix):
        t = len(prefix)
        last = prefix[-1]
        if t == last_t:
            first = prefix[0]
            for v in neighbors[last]:
                if first in nbr_sets[v]:
                    out.append(prefix + (v,))
        else:
            for v in neighbors[last]:
                extend(prefix + (v,))

    for s in range(n):
        extend((s,))
    return out


def coverage_masks(walks, n, period, duration):
    """Bitmask of intercepted attacks per walk.

    Bit ``node * period + (start - 1)`` is set when the walk occupies
    ``node`` at some time of the attack interval starting at ``start``.
    """
    masks = []
    for walk in walks:
        mask = 0
        for tau, node in enumerate(walk):
            base = node * period
            for s in range(duration):
                mask |= 1 << (base + (tau - s) % period)
        masks.append(mask)
    return masks


def _bit_weight(mask, weights):
    total = 0
    while mask:
        low = mask & -mask
        total += weights[low.bit_length() - 1]
        mask ^= low
    return total


def greedy_union(masks, weights, k):
    """Greedy max-coverage: repeatedly add the mask with best marginal gain."""
    chosen = []
    acc = 0
    for _ in range(min(k, len(masks))):
        best_i = None
        best_gain = -1
        for i, m in enumerate(masks):
            gain = _bit_weight(m & ~acc, weights)
            if gain > best_gain:
                best_gain = gain
                best_i = i
        if best_gain <= 0 and chosen:
            break
        chosen.append(best_i)
        acc |= masks[best_i]
    return chosen, _bit_weight(acc, weights)


def max_weight_union(masks, weights, k, cap=None):
    """Exact maximum of weight(OR of up to ``k`` masks) over all subsets.

    Branch-and-bound seeded with the greedy solution; the bound adds the
    top remaining individual mask weights, which dominates any union
    gain.  ``cap`` limits the number of search nodes explored.
    """
    if not masks:
        return (), 0
    k = min(k, len(masks))
    order = sorted(
        range(len(masks)), key=lambda i: -_bit_weight(masks[i], weights)
    )
    sorted_masks = [masks[i] for i in order]
    solo = [_bit_weight(m, weights) for m in sorted_masks]
    # solo is sorted descending, so the top-r sum from position i onward
    # is just the next r entries
    nmask = len(masks)
    suffix_tops = [[0] * (k + 1) for _ in range(nmask + 1)]
    for i in range(nmask - 1, -1, -1):
        for r in range(1, k + 1):
            suffix_tops[i][r] = solo[i] + suffix_tops[i + 1][r - 1]
    greedy_idx, best_value = greedy_union(masks, weights, k)
    best_set = list(greedy_idx)
    nodes = 0

    def search(pos, left, acc_mask, acc_value, picked):
        nonlocal best_value, best_set, nodes
        if acc_value > best_value:
            best_value = acc_value
            best_set = list(picked)
        if left == 0 or pos == nmask:
            return
        nodes += 1
        if cap is not None and nodes > cap:
            raise CapExceededError(
                f"team best-response search exceeded {cap} nodes"
            )
        if acc_value + suffix_tops[pos][left] <= best_value:
            return
        for i in range(pos, nmask):
            if acc_value + suffix_tops[i][left] <= best_value:
                break
            gain = _bit_weight(sorted_masks[i] & ~acc_mask, weights)
            if gain == 0:
                continue
            picked.append(order[i])
            search(i + 1, left - 1, acc_mask | sorted_masks[i], acc_value + gain, picked)
            picked.pop()

    search(0, k, 0, 0, [])
    return tuple(best_set), best_value
