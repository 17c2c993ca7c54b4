"""The k-patroller game: strategy lifting and exact team solving.

A team intercepts when any of its walks does, so a team's coverage is
the union of its walks' interception masks.  That union is monotone, so
best responses can be found greedily and certified by an exhaustive
(branch-and-bound) search over subset-maximal coverage patterns.
"""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from . import kernels
from .errors import UnsupportedParametersError
from .line import (
    OscillationSpec,
    _alternating_walk,
    _arrow_rows,
    canonical_line_cover,
    classify_case,
    expand_oscillation,
)
from .model import MixedStrategy, PeriodicWalk, enumerate_attacks, intercepts
from .solver import (
    PatrolSolution,
    _distinct_maximal,
    _game_from_masks,
    enumerate_walks,
    walk_masks,
)

DEFAULT_TEAM_CAP = 500_000


@dataclass(frozen=True)
class PatrolTeam:
    """An unordered multiset of simultaneous patrols."""

    walks: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "walks", tuple(sorted(self.walks, key=lambda w: w.positions))
        )

    @property
    def size(self):
        return len(self.walks)


def team_intercepts(team, attack):
    """True when at least one walk of the team intercepts the attack."""
    return any(intercepts(walk, attack) for walk in team.walks)


def k_upper_bound(value, k):
    """k patrollers can do at most k times one patroller's value, capped at 1."""
    return min(k * Fraction(value), Fraction(1))


def _team_masks(spec, teams):
    masks = []
    for team in teams:
        union = 0
        for mask in walk_masks(spec, team.walks):
            union |= mask
        masks.append(union)
    return masks


def per_attack_team_interception(spec, strategy):
    """Interception probability of every attack under a mixed team strategy."""
    probs = [Fraction(0)] * (spec.graph.n * spec.period)
    masks = _team_masks(spec, [team for team, _ in strategy])
    for mask, (_, p) in zip(masks, strategy):
        while mask:
            low = mask & -mask
            probs[low.bit_length() - 1] += p
            mask ^= low
    return probs


def team_guarantee(spec, strategy):
    """Worst-attack interception probability of a mixed team strategy."""
    for team, _ in strategy:
        if team.size != spec.patrollers:
            raise UnsupportedParametersError(
                f"team of {team.size} walks in a {spec.patrollers}-patroller game"
            )
        for walk in team.walks:
            spec.validate_walk(walk)
    return min(per_attack_team_interception(spec, strategy))


def _product_teams(families, base_prob):
    """Teams from independently randomized per-patroller families."""
    entries = []
    for combo in itertools.product(*families):
        prob = base_prob
        walks = []
        for walk, p in combo:
            prob *= p
            walks.append(walk)
        entries.append((PatrolTeam(tuple(walks)), prob))
    return entries


def lift_strategy(n, T, k):
    """Spread k patrollers over the single-patroller optimal row structure.

    For k <= n/2 the team guarantee is exactly k times the line value:
    assign the patrollers to a uniformly random k-subset of the covering
    edges (even cases) or of one row's arrows (odd-odd cases).
    """
    if k < 1:
        raise UnsupportedParametersError("need at least one patroller")
    if 2 * k > n:
        raise UnsupportedParametersError("lifting requires k <= n/2")
    case = classify_case(n, T)
    entries = []
    if case.case_id in (1, 2):
        cover = canonical_line_cover(n)
        subsets = list(itertools.combinations(cover, k))
        prob = Fraction(1, len(subsets))
        for subset in subsets:
            walks = tuple(_alternating_walk(a, b, T) for a, b in subset)
            entries.append((PatrolTeam(walks), prob))
    elif case.case_id == 3:
        cover = canonical_line_cover(n)
        subsets = list(itertools.combinations(cover, k))
        prob = Fraction(1, len(subsets))
        for subset in subsets:
            families = [
                list(expand_oscillation(OscillationSpec(e, "right", Fraction(1, 2)), T))
                for e in subset
            ]
            entries.extend(_product_teams(families, prob))
    else:
        bias = Fraction(2 * T + n - 1, 2 * n) if case.case_id == 4 else Fraction(1)
        rows = _arrow_rows(n)
        row_p = Fraction(1, len(rows))
        for arrows in rows:
            subsets = list(itertools.combinations(arrows, k))
            prob = row_p / len(subsets)
            for subset in subsets:
                families = [
                    list(expand_oscillation(OscillationSpec(edge, direction, bias), T))
                    for edge, direction in subset
                ]
                entries.extend(_product_teams(families, prob))
    return MixedStrategy(entries)


def four_patroller_strategy():
    """The exact optimum for four patrollers on the 7-node line, period 3.

    One patroller stands on a random odd node 2j-1 while the other three
    run 4/7-biased oscillations whose favored ends are the even nodes;
    every node is then intercepted with probability exactly 6/7, strictly
    below the generic bound 4 * (5/21) = 20/21.
    """
    T = 3
    bias = Fraction(4, 7)
    entries = []
    row_p = Fraction(1, 4)
    for j in range(1, 5):
        stand = str(2 * j - 1)
        families = [[(PeriodicWalk((stand,) * T), Fraction(1))]]
        for i in range(1, j):
            families.append(
                list(
                    expand_oscillation(
                        OscillationSpec((str(2 * i - 1), str(2 * i)), "right", bias), T
                    )
                )
            )
        for i in range(j, 4):
            families.append(
                list(
                    expand_oscillation(
                        OscillationSpec((str(2 * i), str(2 * i + 1)), "left", bias), T
                    )
                )
            )
        entries.extend(_product_teams(families, row_p))
    return MixedStrategy(entries)


def _compress_projection(cand_masks, support_bits):
    """Project masks onto the support bits and renumber those bits densely."""
    position = {bit: i for i, bit in enumerate(support_bits)}
    projected = []
    for mask in cand_masks:
        small = 0
        for bit in support_bits:
            if mask >> bit & 1:
                small |= 1 << position[bit]
        projected.append(small)
    return projected


def best_response_team(spec, alpha, candidates=None, team_cap=None):
    """Exact best team of ``spec.patrollers`` walks against a mixed attack.

    Greedy seeding plus branch-and-bound over the subset-maximal
    interception patterns restricted to the attack's support; the search
    node count is limited by ``team_cap``.
    """
    team_cap = DEFAULT_TEAM_CAP if team_cap is None else team_cap
    if candidates is None:
        walks = enumerate_walks(spec)
        _, candidates = _distinct_maximal(walk_masks(spec, walks))
        candidates = [(mask, walks[rep]) for mask, rep in candidates]
    k = spec.patrollers
    attacks = enumerate_attacks(spec)
    attack_pos = {
        (spec.graph.index[a.node], a.start - 1): j for j, a in enumerate(attacks)
    }
    weights_by_bit = {}
    for attack, prob in alpha:
        spec.validate_attack(attack)
        bit = attack_pos[(spec.graph.index[attack.node], attack.start - 1)]
        weights_by_bit[bit] = weights_by_bit.get(bit, Fraction(0)) + prob
    support_bits = sorted(bit for bit, w in weights_by_bit.items() if w)
    denom = lcm(*(weights_by_bit[bit].denominator for bit in support_bits))
    weights = [int(weights_by_bit[bit] * denom) for bit in support_bits]
    projected = _compress_projection([m for m, _ in candidates], support_bits)
    # dedup and keep subset-maximal projections only
    seen = {}
    for idx, proj in enumerate(projected):
        if proj and proj not in seen:
            seen[proj] = idx
    pool = sorted(seen.items(), key=lambda kv: -kv[0].bit_count())
    maximal = []
    for proj, idx in pool:
        if not any(proj | other == other for other, _ in maximal):
            maximal.append((proj, idx))
    if not maximal:
        first = candidates[0][1]
        return PatrolTeam((first,) * k), Fraction(0)
    chosen, best_scaled = kernels.max_weight_union(
        [proj for proj, _ in maximal], weights, k, cap=team_cap
    )
    walks = [candidates[maximal[i][1]][1] for i in chosen]
    while len(walks) < k:
        walks.append(walks[0])
    return PatrolTeam(tuple(walks)), Fraction(best_scaled, denom)


def solve_k_exact(spec, cap=None, team_cap=None, max_rounds=10_000):
    """Exact value of the k-patroller game by team column generation.

    The restricted master game over team columns is solved exactly each
    round; the best-response team against the master's attack mixture
    joins as a new column until no team improves, which certifies the
    value for both sides.
    """
    team_cap = DEFAULT_TEAM_CAP if team_cap is None else team_cap
    k = spec.patrollers
    walks = enumerate_walks(spec, cap)
    attacks = enumerate_attacks(spec)
    _, maximal = _distinct_maximal(walk_masks(spec, walks))
    candidates = [(mask, walks[rep]) for mask, rep in maximal]
    nbits = len(attacks)
    greedy_idx, _ = kernels.greedy_union(
        [mask for mask, _ in candidates], [1] * nbits, k
    )
    seed_walks = [candidates[i][1] for i in greedy_idx]
    while len(seed_walks) < k:
        seed_walks.append(seed_walks[0])
    seed = PatrolTeam(tuple(seed_walks))
    pool = [(_team_masks(spec, [seed])[0], seed)]
    seen = {pool[0][0]}
    for _ in range(max_rounds):
        game = _game_from_masks([mask for mask, _ in pool], nbits)
        alpha = MixedStrategy(
            (attacks[j], q) for j, q in enumerate(game.col_strategy) if q
        )
        team, value = best_response_team(
            spec, alpha, candidates=candidates, team_cap=team_cap
        )
        if value > game.value:
            mask = _team_masks(spec, [team])[0]
            if mask in seen:
                raise AssertionError("improving team column was already present")
            seen.add(mask)
            pool.append((mask, team))
            continue
        patroller = MixedStrategy(
            (entry[1], p) for entry, p in zip(pool, game.row_strategy) if p
        )
        return PatrolSolution(
            value=game.value,
            patroller=patroller,
            attacker=alpha,
            attack_guarantees=tuple(game.col_guarantees),
            response_value=value,
            method="team-column-generation",
        )
    raise AssertionError(f"team column generation did not close in {max_rounds} rounds")
