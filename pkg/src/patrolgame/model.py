"""Pure and mixed strategies of both players, payoff evaluation, value bounds.

Time runs on the circle 1..T with T+1 wrapping to 1.  A walk is a node
sequence whose consecutive positions (including the wrap from step T back
to step 1) are equal or adjacent; an attack is a node plus a start time,
lasting ``duration`` consecutive periods.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    InvalidStrategyError,
    InvalidWalkError,
    UnsupportedParametersError,
)
from .graphs import bipartition, covering_number, independence_number


@dataclass(frozen=True)
class PeriodicWalk:
    """One full period of a patrol: the node occupied at times 1..T."""

    positions: tuple

    def __post_init__(self):
        object.__setattr__(self, "positions", tuple(str(v) for v in self.positions))

    @property
    def period(self):
        return len(self.positions)

    def at(self, t):
        """Node occupied at (1-based, cyclic) time ``t``."""
        return self.positions[(t - 1) % len(self.positions)]


@dataclass(frozen=True)
class Attack:
    """Attack at ``node`` over the ``duration`` periods starting at ``start``."""

    node: str
    start: int
    duration: int = 2

    def __post_init__(self):
        object.__setattr__(self, "node", str(self.node))

    def interval(self, period):
        """The attacked times as 1-based representatives on the time circle."""
        return tuple((self.start - 1 + s) % period + 1 for s in range(self.duration))


class GameSpec:
    """Instance parameters: arena graph, period, attack duration, team size."""

    __slots__ = ("graph", "period", "duration", "patrollers")

    def __init__(self, graph, period, duration=2, patrollers=1):
        if period < 2:
            raise UnsupportedParametersError("period must be at least 2")
        if not 1 <= duration <= period:
            raise UnsupportedParametersError("duration must lie in 1..period")
        if patrollers < 1:
            raise UnsupportedParametersError("at least one patroller required")
        self.graph = graph
        self.period = period
        self.duration = duration
        self.patrollers = patrollers

    def validate_walk(self, walk):
        """Raise :class:`InvalidWalkError` unless the walk fits this instance."""
        pos = walk.positions
        if len(pos) != self.period:
            raise InvalidWalkError(
                f"walk has length {len(pos)}, expected period {self.period}"
            )
        index = self.graph.index
        for i, v in enumerate(pos):
            if v not in index:
                raise InvalidWalkError(f"walk visits unknown node {v!r}", index=i)
        for i in range(len(pos)):
            u, v = pos[i], pos[(i + 1) % len(pos)]
            if u != v and not self.graph.adjacent(u, v):
                raise InvalidWalkError(
                    f"step {i + 1} -> {(i + 1) % len(pos) + 1}: {u!r} and {v!r} "
                    "are neither equal nor adjacent",
                    index=i,
                )

    def validate_attack(self, attack):
        if attack.node not in self.graph.index:
            raise InvalidStrategyError(f"attack at unknown node {attack.node!r}")
        if not 1 <= attack.start <= self.period:
            raise InvalidStrategyError(f"attack start {attack.start} outside 1..T")
        if attack.duration != self.duration:
            raise InvalidStrategyError(
                f"attack duration {attack.duration} != instance duration {self.duration}"
            )


class MixedStrategy:
    """Finitely supported rational distribution over pure strategies."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        merged = {}
        for item, prob in entries:
            prob = Fraction(prob)
            if prob < 0:
                raise InvalidStrategyError("negative probability in mixed strategy")
            if prob:
                merged[item] = merged.get(item, Fraction(0)) + prob
        if sum(merged.values()) != 1:
            raise InvalidStrategyError("mixed strategy probabilities must sum to 1")
        self.entries = tuple(merged.items())

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def support(self):
        return tuple(item for item, _ in self.entries)

    def probability(self, item):
        for it, p in self.entries:
            if it == item:
                return p
        return Fraction(0)

    def scaled(self, factor):
        """The same support with every probability multiplied by ``factor``."""
        return [(item, p * Fraction(factor)) for item, p in self.entries]

    @classmethod
    def mix(cls, weighted_parts):
        """Combine (strategy, weight) pairs into one distribution."""
        entries = []
        for strategy, weight in weighted_parts:
            entries.extend(strategy.scaled(weight))
        return cls(entries)


def intercepts(walk, attack):
    """True when the walk occupies the attacked node during the attack."""
    pos = walk.positions
    period = len(pos)
    t0 = attack.start - 1
    node = attack.node
    return any(pos[(t0 + s) % period] == node for s in range(attack.duration))


def enumerate_attacks(spec):
    """All n*T pure attacks, node-major then by start time."""
    return [
        Attack(node, t, spec.duration)
        for node in spec.graph.nodes
        for t in range(1, spec.period + 1)
    ]


def uniform_attack(spec):
    """Equiprobable choice among all n*T attacks."""
    attacks = enumerate_attacks(spec)
    p = Fraction(1, len(attacks))
    return MixedStrategy([(a, p) for a in attacks])


def independent_attack(spec, start=1):
    """Equiprobable attack on a maximum independent set at one fixed interval.

    Only defined for duration 2: the simultaneity argument needs the
    attacked nodes to be pairwise non-adjacent within a single interval.
    """
    if spec.duration != 2:
        raise UnsupportedParametersError("independent attack requires duration 2")
    if not 1 <= start <= spec.period:
        raise InvalidStrategyError(f"start {start} outside 1..T")
    _, witness = independence_number(spec.graph)
    p = Fraction(1, len(witness))
    return MixedStrategy(
        [(Attack(node, start, spec.duration), p) for node in witness]
    )


def interception_probability(strategy, attack):
    """Probability that a mixed patrol strategy intercepts the given attack."""
    total = Fraction(0)
    for walk, prob in strategy:
        if intercepts(walk, attack):
            total += prob
    return total


@dataclass(frozen=True)
class ValueBounds:
    """Provable enclosure of the game value with per-rule provenance.

    ``provenance`` lists (bound, rule) pairs; rules are named after the
    strategy that proves them.
    """

    lower: Fraction
    upper: Fraction
    provenance: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"lower bound {self.lower} exceeds upper {self.upper}")


def value_bounds(spec):
    """Tightest combination of the analytic bounds for duration-2 play.

    Upper bounds come from the independent and uniform attacks; lower
    bounds from oscillating on a minimum edge cover (unbiased for even
    periods, with a random repeat for odd ones).
    """
    if spec.duration != 2:
        raise UnsupportedParametersError("value bounds are proved for duration 2")
    if spec.patrollers != 1:
        raise UnsupportedParametersError("value bounds are for the single-patroller game")
    g = spec.graph
    T = spec.period
    n = g.n
    ind, _ = independence_number(g)
    uppers = [
        (Fraction(1, ind), "independent attack on a maximum independent set"),
        (Fraction(2, n), "uniform attack: a walk meets at most 2 attacks per period"),
    ]
    if T % 2 == 1 and bipartition(g) is not None:
        uppers.append(
            (
                Fraction(2 * T - 1, n * T),
                "uniform attack: odd period on a bipartite graph forces a repeat",
            )
        )
    lowers = []
    if not g.has_isolated_node():
        cov, _ = covering_number(g)
        if T % 2 == 0:
            lowers.append(
                (Fraction(1, cov), "unbiased oscillations on a minimum edge cover")
            )
        else:
            lowers.append(
                (
                    Fraction(2 * T - 1, 2 * T * cov),
                    "randomly repeated oscillations on a minimum edge cover",
                )
            )
    if not lowers:
        lowers.append((Fraction(0), "no covering-based lower bound available"))
    lower = max(v for v, _ in lowers)
    upper = min(v for v, _ in uppers)
    provenance = tuple((v, f"lower: {r}") for v, r in lowers) + tuple(
        (v, f"upper: {r}") for v, r in uppers
    )
    return ValueBounds(lower, upper, provenance)
