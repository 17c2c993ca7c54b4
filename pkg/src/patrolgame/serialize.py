"""JSON wire formats: graphs, strategies, solutions.

Rationals travel as strings like "5/21" (integers as "1"); probabilities
are exact, never floats.
"""

from fractions import Fraction

from .errors import InvalidStrategyError
from .model import Attack, MixedStrategy, PeriodicWalk
from .multi import PatrolTeam


def fraction_str(value):
    """Lowest-terms string form of a rational ("5/2", "1", "0")."""
    return str(Fraction(value))


def parse_fraction(text):
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidStrategyError(f"bad rational {text!r}: {exc}") from exc


def walk_strategy_to_json(strategy):
    return {
        "walks": [
            {"positions": list(walk.positions), "prob": fraction_str(p)}
            for walk, p in strategy
        ]
    }


def walk_strategy_from_json(data):
    try:
        entries = [
            (PeriodicWalk(tuple(item["positions"])), parse_fraction(item["prob"]))
            for item in data["walks"]
        ]
    except (KeyError, TypeError) as exc:
        raise InvalidStrategyError(f"malformed walk strategy JSON: {exc}") from exc
    return MixedStrategy(entries)


def attack_strategy_to_json(strategy):
    return {
        "attacks": [
            {"node": a.node, "start": a.start, "prob": fraction_str(p)}
            for a, p in strategy
        ]
    }


def attack_strategy_from_json(data, duration=2):
    try:
        entries = [
            (
                Attack(item["node"], int(item["start"]), duration),
                parse_fraction(item["prob"]),
            )
            for item in data["attacks"]
        ]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidStrategyError(f"malformed attack strategy JSON: {exc}") from exc
    return MixedStrategy(entries)


def team_strategy_to_json(strategy):
    return {
        "teams": [
            {
                "walks": [list(w.positions) for w in team.walks],
                "prob": fraction_str(p),
            }
            for team, p in strategy
        ]
    }


def team_strategy_from_json(data):
    try:
        entries = [
            (
                PatrolTeam(tuple(PeriodicWalk(tuple(w)) for w in item["walks"])),
                parse_fraction(item["prob"]),
            )
            for item in data["teams"]
        ]
    except (KeyError, TypeError) as exc:
        raise InvalidStrategyError(f"malformed team strategy JSON: {exc}") from exc
    return MixedStrategy(entries)


def strategy_to_json(strategy):
    """Serialize by support type: walks, teams, or attacks."""
    first = strategy.entries[0][0]
    if isinstance(first, PeriodicWalk):
        return walk_strategy_to_json(strategy)
    if isinstance(first, PatrolTeam):
        return team_strategy_to_json(strategy)
    if isinstance(first, Attack):
        return attack_strategy_to_json(strategy)
    raise InvalidStrategyError(f"cannot serialize support of type {type(first)!r}")


def solution_to_json(solution):
    """A solved game with value, both strategies, and the verified guarantee."""
    return {
        "value": fraction_str(solution.value),
        "method": solution.method,
        "patroller": strategy_to_json(solution.patroller),
        "attacker": strategy_to_json(solution.attacker),
    }
