"""Ground-truth solvers: full enumeration and column generation.

``solve_exact`` enumerates every periodic walk (within a configurable
cap), reduces duplicate and dominated interception patterns, and solves
the resulting matrix game exactly.  ``solve_column_generation`` grows a
restricted walk set with a cyclic dynamic-programming best response and
reaches the same value on instances far beyond the enumeration cap.
"""

import os
from dataclasses import dataclass
from fractions import Fraction

from . import kernels
from .errors import CapExceededError, UnsupportedParametersError
from .lp import solve_matrix_game
from .model import (
    Attack,
    MixedStrategy,
    PeriodicWalk,
    enumerate_attacks,
    intercepts,
)

DEFAULT_WALK_CAP = 200_000


def walk_cap():
    """Enumeration cap; the PATROL_WALK_CAP env var overrides the default."""
    value = os.environ.get("PATROL_WALK_CAP")
    return int(value) if value else DEFAULT_WALK_CAP


def _closed_neighbors(graph):
    return tuple(
        tuple(sorted(set(ns) | {u})) for u, ns in enumerate(graph.neighbors)
    )


def count_walks(graph, period):
    """Number of periodic walks: trace of (A + Id)^period, exact integers."""
    n = graph.n
    mat = [[0] * n for _ in range(n)]
    for u in range(n):
        mat[u][u] = 1
        for v in graph.neighbors[u]:
            mat[u][v] = 1

    def matmul(a, b):
        return [
            [sum(a[i][t] * b[t][j] for t in range(n)) for j in range(n)]
            for i in range(n)
        ]

    result = [[int(i == j) for j in range(n)] for i in range(n)]
    base = mat
    e = period
    while e:
        if e & 1:
            result = matmul(result, base)
        e >>= 1
        if e:
            base = matmul(base, base)
    return sum(result[i][i] for i in range(n))


def enumerate_walks(spec, cap=None):
    """All periodic walks of the instance, lexicographic in node order.

    Refuses to start when the exact count (an independent matrix-power
    computation) exceeds the cap.
    """
    cap = walk_cap() if cap is None else cap
    total = count_walks(spec.graph, spec.period)
    if total > cap:
        raise CapExceededError(
            f"{total} walks exceed the cap of {cap}; use column generation"
        )
    seqs = kernels.enumerate_cyclic_sequences(
        _closed_neighbors(spec.graph), spec.period
    )
    nodes = spec.graph.nodes
    return [PeriodicWalk(tuple(nodes[i] for i in seq)) for seq in seqs]


def _index_walk(spec, walk):
    index = spec.graph.index
    return tuple(index[v] for v in walk.positions)


def walk_masks(spec, walks):
    """Interception bitmask per walk, bit ``node_index * T + (start - 1)``."""
    indexed = [_index_walk(spec, w) for w in walks]
    return kernels.coverage_masks(
        indexed, spec.graph.n, spec.period, spec.duration
    )


def per_attack_interception(spec, strategy):
    """Interception probability of every attack, in attack enumeration order."""
    probs = [Fraction(0)] * (spec.graph.n * spec.period)
    masks = walk_masks(spec, [w for w, _ in strategy])
    for mask, (_, p) in zip(masks, strategy):
        while mask:
            low = mask & -mask
            probs[low.bit_length() - 1] += p
            mask ^= low
    return probs


def patroller_guarantee(spec, strategy):
    """The patrol strategy's security level: its worst attack's probability."""
    for walk, _ in strategy:
        spec.validate_walk(walk)
    return min(per_attack_interception(spec, strategy))


def _attack_weight_table(spec, alpha):
    """alpha as a (node_index, start-1) table, validated against the spec."""
    table = {}
    for attack, prob in alpha:
        spec.validate_attack(attack)
        key = (spec.graph.index[attack.node], attack.start - 1)
        table[key] = table.get(key, Fraction(0)) + prob
    return table


def best_response_walk(spec, alpha):
    """A walk maximizing the interception of the mixed attack ``alpha``.

    For duration 2 the payoff of attack (i, {t, t+1}) depends only on the
    node pair (w(t), w(t+1)), so a cyclic dynamic program over anchor
    nodes finds the exact optimum.  Other durations fall back to
    exhaustive search within the enumeration cap.  Ties break to the
    lexicographically smallest walk.
    """
    if spec.duration != 2:
        return _best_response_exhaustive(spec, alpha)
    table = _attack_weight_table(spec, alpha)
    n = spec.graph.n
    T = spec.period
    zero = Fraction(0)
    weight = [[zero] * n for _ in range(T)]
    for (node, t0), prob in table.items():
        weight[t0][node] += prob
    nbrs = _closed_neighbors(spec.graph)

    def gain(t0, u, v):
        g = weight[t0][u]
        if v != u:
            g += weight[t0][v]
        return g

    best_value = None
    best_walk = None
    for s in range(n):
        # tables[t][u] = best total over transitions t+1..T-1 (closing at s)
        # given position u at time t+1; built backwards from the wrap step
        suffix = [gain(T - 1, u, s) if s in nbrs[u] else None for u in range(n)]
        tables = [suffix]
        for t in range(T - 2, 0, -1):
            nxt = tables[-1]
            cur = [None] * n
            for u in range(n):
                best = None
                for v in nbrs[u]:
                    if nxt[v] is None:
                        continue
                    cand = gain(t, u, v) + nxt[v]
                    if best is None or cand > best:
                        best = cand
                cur[u] = best
            tables.append(cur)
        tables.reverse()
        start_best = None
        for v in nbrs[s]:
            if tables[0][v] is None:
                continue
            cand = gain(0, s, v) + tables[0][v]
            if start_best is None or cand > start_best:
                start_best = cand
        if start_best is None:
            continue
        if best_value is None or start_best > best_value:
            # greedy smallest-successor reconstruction is lexicographically
            # minimal among the maximizers anchored at s
            walk = [s]
            remaining = start_best
            for t in range(T - 1):
                u = walk[-1]
                for v in nbrs[u]:
                    bv = tables[t][v]
                    if bv is not None and gain(t, u, v) + bv == remaining:
                        walk.append(v)
                        remaining = bv
                        break
                else:
                    raise AssertionError("best-response reconstruction failed")
            best_value = start_best
            best_walk = walk
    nodes = spec.graph.nodes
    walk = PeriodicWalk(tuple(nodes[i] for i in best_walk))
    spec.validate_walk(walk)
    return walk, best_value


def _best_response_exhaustive(spec, alpha):
    table = _attack_weight_table(spec, alpha)
    T = spec.period
    weights = {node * T + t0: p for (node, t0), p in table.items()}
    walks = enumerate_walks(spec)
    masks = walk_masks(spec, walks)
    best_walk = None
    best_value = None
    for walk, mask in zip(walks, masks):
        value = Fraction(0)
        for bit, w in weights.items():
            if mask >> bit & 1:
                value += w
        if best_value is None or value > best_value:
            best_value = value
            best_walk = walk
    return best_walk, best_value


def attacker_guarantee(spec, alpha):
    """The attack strategy's security level: the best walk's value against it."""
    return best_response_walk(spec, alpha)[1]


@dataclass
class PatrolSolution:
    """Exact value, optimal strategies and the certificate data.

    ``attack_guarantees`` lists the patrol side's interception probability
    per attack (minimum equals the value); ``response_value`` is the best
    pure response against the attack strategy (equals the value).
    """

    value: Fraction
    patroller: MixedStrategy
    attacker: MixedStrategy
    attack_guarantees: tuple
    response_value: Fraction
    method: str = "exact"

    def verify(self, spec):
        """Recompute the patrol-side certificate from scratch; raises on mismatch."""
        first = self.patroller.entries[0][0]
        if hasattr(first, "walks"):
            from .multi import team_guarantee

            guarantee = team_guarantee(spec, self.patroller)
        else:
            guarantee = patroller_guarantee(spec, self.patroller)
        if guarantee != self.value:
            raise ArithmeticError("patrol guarantee does not match the value")
        if spec.duration == 2 and spec.patrollers == 1:
            if attacker_guarantee(spec, self.attacker) != self.value:
                raise ArithmeticError("attack guarantee does not match the value")
        return True


def _distinct_maximal(masks):
    """Indices of first-seen distinct masks, then the subset-maximal ones."""
    first = {}
    for i, mask in enumerate(masks):
        if mask not in first:
            first[mask] = i
    distinct = list(first.items())  # (mask, representative index)
    by_popcount = sorted(distinct, key=lambda mw: -mw[0].bit_count())
    maximal = []
    for mask, rep in by_popcount:
        if not any(mask | other == other for other, _ in maximal):
            maximal.append((mask, rep))
    return distinct, maximal


def _game_from_masks(row_masks, ncols):
    """Solve the 0/1 game whose rows are interception masks."""
    matrix = [
        [Fraction(mask >> j & 1) for j in range(ncols)] for mask in row_masks
    ]
    return solve_matrix_game(matrix)


def solve_exact(spec, cap=None):
    """Enumerate all walks and solve the full matrix game exactly."""
    if spec.patrollers != 1:
        raise UnsupportedParametersError(
            "solve_exact handles one patroller; use solve_k_exact for teams"
        )
    walks = enumerate_walks(spec, cap)
    attacks = enumerate_attacks(spec)
    masks = walk_masks(spec, walks)
    distinct, maximal = _distinct_maximal(masks)
    game = _game_from_masks([mask for mask, _ in maximal], len(attacks))
    patroller = MixedStrategy(
        (walks[rep], p)
        for (mask, rep), p in zip(maximal, game.row_strategy)
        if p
    )
    attacker = MixedStrategy(
        (attacks[j], q) for j, q in enumerate(game.col_strategy) if q
    )
    # certify the attack strategy against every interception pattern,
    # dominated ones included
    col_weights = [(j, q) for j, q in enumerate(game.col_strategy) if q]
    response = max(
        sum(q for j, q in col_weights if mask >> j & 1) for mask, _ in distinct
    )
    if response != game.value:
        raise ArithmeticError("attack certificate failed against the full walk set")
    return PatrolSolution(
        value=game.value,
        patroller=patroller,
        attacker=attacker,
        attack_guarantees=tuple(game.col_guarantees),
        response_value=response,
        method="exact",
    )


def _seed_walks(spec):
    """Column-generation seeds: stationary walks plus one oscillation per
    edge in each phase (odd periods repeat the starting node at the wrap)."""
    T = spec.period
    seeds = [PeriodicWalk((v,) * T) for v in spec.graph.nodes]
    for u, v in spec.graph.edges:
        for a, b in ((u, v), (v, u)):
            positions = tuple(a if t % 2 == 0 else b for t in range(T))
            seeds.append(PeriodicWalk(positions))
    return seeds


def solve_column_generation(spec, cap=None, max_rounds=10_000):
    """Exact value via a restricted master game and best-response columns.

    Each round solves the restricted game exactly, asks the dynamic
    program for a best response to the attacker's optimal mixture, and
    stops as soon as no walk beats the master value.
    """
    if spec.patrollers != 1:
        raise UnsupportedParametersError("column generation handles one patroller")
    if spec.duration != 2:
        raise UnsupportedParametersError(
            "column generation needs the duration-2 best response"
        )
    attacks = enumerate_attacks(spec)
    pool = []
    seen = set()
    for walk in _seed_walks(spec):
        mask = walk_masks(spec, [walk])[0]
        if mask not in seen:
            seen.add(mask)
            pool.append((mask, walk))
    for _ in range(max_rounds):
        game = _game_from_masks([mask for mask, _ in pool], len(attacks))
        alpha = MixedStrategy(
            (attacks[j], q) for j, q in enumerate(game.col_strategy) if q
        )
        walk, value = best_response_walk(spec, alpha)
        if value > game.value:
            mask = walk_masks(spec, [walk])[0]
            if mask in seen:
                raise AssertionError("improving column was already present")
            seen.add(mask)
            pool.append((mask, walk))
            continue
        patroller = MixedStrategy(
            (entry[1], p)
            for entry, p in zip(pool, game.row_strategy)
            if p
        )
        return PatrolSolution(
            value=game.value,
            patroller=patroller,
            attacker=alpha,
            attack_guarantees=tuple(game.col_guarantees),
            response_value=value,
            method="column-generation",
        )
    raise CapExceededError(f"column generation did not close in {max_rounds} rounds")


def payoff_csv(spec, walks=None):
    """The 0/1 interception matrix as CSV text, for debugging."""
    walks = enumerate_walks(spec) if walks is None else walks
    attacks = enumerate_attacks(spec)
    header = "walk," + ",".join(f"{a.node}@{a.start}" for a in attacks)
    lines = [header]
    for walk in walks:
        row = ",".join("1" if intercepts(walk, a) else "0" for a in attacks)
        lines.append("-".join(walk.positions) + "," + row)
    return "\n".join(lines) + "\n"
