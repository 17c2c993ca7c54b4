"""Closed-form values and optimal strategy constructions for line graphs.

The value of the game on the n-node line with period T splits into five
cases by the parities of T and n and the comparison of n against 2T-1:

    1  T, n even            2/n
    2  T even, n odd        2/(n+1)
    3  T odd, n even        (2T-1)/(nT)
    4  T, n odd, n > 2T-1   (2T-1)/(nT)
    5  T, n odd, n <= 2T-1  2/(n+1)

The boundary n = 2T-1 satisfies both odd-odd conditions and the two
formulas coincide there; this module labels it case 5.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import UnsupportedParametersError
from .graphs import covering_number
from .model import MixedStrategy, PeriodicWalk


@dataclass(frozen=True)
class LineCase:
    """Classification of one (n, T) instance with its exact value."""

    case_id: int
    n: int
    T: int
    value: Fraction

    @property
    def boundary(self):
        """True on the odd-odd boundary n = 2T-1 where cases 4 and 5 meet."""
        return self.n % 2 == 1 and self.T % 2 == 1 and self.n == 2 * self.T - 1


def classify_case(n, T):
    """Case label and value for the n-node line with period T."""
    if n < 2 or T < 2:
        raise UnsupportedParametersError("need n >= 2 and T >= 2")
    if T % 2 == 0:
        if n % 2 == 0:
            return LineCase(1, n, T, Fraction(2, n))
        return LineCase(2, n, T, Fraction(2, n + 1))
    if n % 2 == 0:
        return LineCase(3, n, T, Fraction(2 * T - 1, n * T))
    if n > 2 * T - 1:
        return LineCase(4, n, T, Fraction(2 * T - 1, n * T))
    return LineCase(5, n, T, Fraction(2, n + 1))


def line_value(n, T):
    """Exact game value on the n-node line with period T (duration 2)."""
    return classify_case(n, T).value


def limit_value(n):
    """Large-period limit of the line value: 1/ceil(n/2)."""
    if n < 2:
        raise UnsupportedParametersError("need n >= 2")
    return Fraction(1, (n + 1) // 2)


@dataclass(frozen=True)
class OscillationSpec:
    """An oscillation on one edge, favoring one endpoint with probability ``bias``.

    ``direction`` names the favored endpoint of ``edge`` = (left, right);
    a left oscillation with bias p equals a right one with bias 1-p.
    """

    edge: tuple
    direction: str
    bias: Fraction

    def __post_init__(self):
        if self.direction not in ("left", "right"):
            raise UnsupportedParametersError("direction must be 'left' or 'right'")
        if not 0 <= self.bias <= 1:
            raise UnsupportedParametersError("bias must lie in [0, 1]")


def _alternating_walk(a, b, T):
    return PeriodicWalk(tuple(a if t % 2 == 0 else b for t in range(T)))


def _stutter_walk(a, b, repeated, t0, T):
    """Oscillation on (a, b) that stays at ``repeated`` for times t0 and t0+1."""
    other = b if repeated == a else a
    positions = [None] * T
    for s in range(T):
        positions[(t0 - 1 + s) % T] = repeated if s == 0 or s % 2 == 1 else other
    return PeriodicWalk(tuple(positions))


def expand_oscillation(osc, T):
    """Expand an oscillation into its equally likely pure walks.

    Odd periods force one repeated node: the favored endpoint is repeated
    with probability ``bias``, the other with 1-bias, at a time chosen
    uniformly from the T cyclic positions.  Even periods admit the exact
    alternation, which requires bias 1/2.
    """
    a, b = osc.edge
    if T % 2 == 0:
        if osc.bias != Fraction(1, 2):
            raise UnsupportedParametersError(
                "even periods only support the unbiased oscillation"
            )
        return MixedStrategy([(_alternating_walk(a, b, T), Fraction(1))])
    favored_right = osc.bias if osc.direction == "right" else 1 - osc.bias
    entries = []
    for t0 in range(1, T + 1):
        entries.append((_stutter_walk(a, b, b, t0, T), favored_right / T))
        entries.append((_stutter_walk(a, b, a, t0, T), (1 - favored_right) / T))
    return MixedStrategy(entries)


def _line_size(g):
    """n when g is exactly the line graph on labels "1".."n", else None."""
    n = g.n
    labels = tuple(str(i) for i in range(1, n + 1))
    if g.nodes != labels:
        return None
    expected = tuple((str(i), str(i + 1)) for i in range(1, n))
    return n if g.edges == expected else None


def canonical_line_cover(n):
    """Disjoint pairs (1,2), (3,4), ...; odd n appends the last edge (n-1, n)."""
    edges = [(str(2 * i - 1), str(2 * i)) for i in range(1, n // 2 + 1)]
    if n % 2 == 1:
        edges.append((str(n - 1), str(n)))
    return tuple(edges)


def _covering_edges(g, cover):
    if cover is not None:
        return tuple(cover)
    n = _line_size(g)
    if n is not None:
        return canonical_line_cover(n)
    return covering_number(g)[1]


def unbiased_covering_strategy(g, T, cover=None):
    """Uniform choice of a minimum-cover edge, patrolled by pure alternation."""
    if T % 2 != 0:
        raise UnsupportedParametersError("unbiased covering needs an even period")
    edges = _covering_edges(g, cover)
    p = Fraction(1, len(edges))
    return MixedStrategy([(_alternating_walk(a, b, T), p) for a, b in edges])


def biased_covering_strategy(g, T, cover=None):
    """Uniform cover edge, oscillated with a random node repeated at a random time."""
    if T % 2 != 1:
        raise UnsupportedParametersError("biased covering needs an odd period")
    edges = _covering_edges(g, cover)
    weight = Fraction(1, len(edges))
    parts = []
    for a, b in edges:
        family = expand_oscillation(
            OscillationSpec((a, b), "right", Fraction(1, 2)), T
        )
        parts.append((family, weight))
    return MixedStrategy.mix(parts)


def _arrow_rows(n):
    """The row structure behind the odd-odd strategies.

    Row j pairs the left-favoring edges (2i-1, 2i) for i < j with the
    right-favoring edges (2i, 2i+1) for i >= j; every row has (n-1)/2
    arrows and misses exactly one odd node.
    """
    rows = []
    half = (n - 1) // 2
    for j in range(1, (n + 1) // 2 + 1):
        arrows = []
        for i in range(1, j):
            arrows.append(((str(2 * i - 1), str(2 * i)), "left"))
        for i in range(j, half + 1):
            arrows.append(((str(2 * i), str(2 * i + 1)), "right"))
        rows.append(arrows)
    return rows


def _arrow_strategy(n, T, bias):
    rows = _arrow_rows(n)
    row_p = Fraction(1, len(rows))
    parts = []
    for arrows in rows:
        arrow_p = row_p / len(arrows)
        for edge, direction in arrows:
            family = expand_oscillation(OscillationSpec(edge, direction, bias), T)
            parts.append((family, arrow_p))
    return MixedStrategy.mix(parts)


def case4_strategy(n, T):
    """Optimal odd-odd strategy for n >= 2T-1: oscillations with bias (2T+n-1)/(2n).

    The bias equalizes the interception probability across all nodes at
    exactly (2T-1)/(nT).
    """
    if n % 2 == 0 or T % 2 == 0:
        raise UnsupportedParametersError("both n and T must be odd")
    if n < 2 * T - 1:
        raise UnsupportedParametersError("requires n >= 2T-1")
    return _arrow_strategy(n, T, Fraction(2 * T + n - 1, 2 * n))


def case5_strategy(n, T):
    """Optimal odd-odd strategy for n <= 2T-1: the arrow construction with bias 1."""
    if n % 2 == 0 or T % 2 == 0:
        raise UnsupportedParametersError("both n and T must be odd")
    if n > 2 * T - 1:
        raise UnsupportedParametersError("requires n <= 2T-1")
    return _arrow_strategy(n, T, Fraction(1))


def decompose_bound(v1, v2):
    """Guarantee of splitting play between parts worth v1 and v2.

    Returns (bound, p1, p2): patrolling part 1 with probability p1 and
    part 2 with p2 equalizes the two sides at v1*v2/(v1+v2).
    """
    v1, v2 = Fraction(v1), Fraction(v2)
    if v1 <= 0 or v2 <= 0:
        raise UnsupportedParametersError("subgame values must be positive")
    total = v1 + v2
    return v1 * v2 / total, v2 / total, v1 / total


def _shift_strategy(strategy, offset):
    """Relabel every node i of a line strategy to i + offset."""
    entries = []
    for walk, p in strategy:
        shifted = tuple(str(int(v) + offset) for v in walk.positions)
        entries.append((PeriodicWalk(shifted), p))
    return MixedStrategy(entries)


def decomposed_case4_strategy(n, T):
    """Case-4 optimum that never crosses the edge (2T-1, 2T).

    Mixes the bias-1 construction on nodes 1..2T-1 with repeated
    oscillations on the disjoint pairs of nodes 2T..n, weighted to
    equalize both sides at (2T-1)/(nT).
    """
    if n % 2 == 0 or T % 2 == 0:
        raise UnsupportedParametersError("both n and T must be odd")
    if n <= 2 * T - 1:
        raise UnsupportedParametersError("requires n > 2T-1")
    left_n = 2 * T - 1
    right_n = n - left_n
    v_left = Fraction(2, left_n + 1)
    v_right = Fraction(2 * T - 1, right_n * T)
    _, p_left, p_right = decompose_bound(v_left, v_right)
    left = case5_strategy(left_n, T)
    right_edges = [
        (str(left_n + 2 * i - 1), str(left_n + 2 * i))
        for i in range(1, right_n // 2 + 1)
    ]
    right_parts = []
    edge_p = Fraction(1, len(right_edges))
    for a, b in right_edges:
        family = expand_oscillation(
            OscillationSpec((a, b), "right", Fraction(1, 2)), T
        )
        right_parts.append((family, edge_p))
    right = MixedStrategy.mix(right_parts)
    return MixedStrategy.mix([(left, p_left), (right, p_right)])


@dataclass(frozen=True)
class Decomposition:
    """A split of the line into two parts that loses nothing.

    Patrolling the left part with probability ``p1`` and the right with
    ``p2`` equalizes the sides: p1 * v1 == p2 * v2.
    """

    left_nodes: tuple
    right_nodes: tuple
    p1: Fraction
    p2: Fraction
    v1: Fraction
    v2: Fraction

    def __post_init__(self):
        if self.p1 + self.p2 != 1:
            raise ValueError("split probabilities must sum to 1")
        if self.p1 * self.v1 != self.p2 * self.v2:
            raise ValueError("split probabilities must equalize the two sides")


def _odd_line_value(n, T):
    """Case-5 value extended to the single-node line (a stationary patrol)."""
    return Fraction(1) if n == 1 else line_value(n, T)


def decomposition_gap(n, T, j):
    """Value lost by splitting a case-5 line into L_{2j} plus L_{n-2j}.

    Exactly 4j / ((n+1) (2j + (2T-1)(1+n))), always positive: the
    odd-odd instances with n <= 2T-1 are never decomposable.
    """
    case = classify_case(n, T)
    if case.case_id != 5:
        raise UnsupportedParametersError("gap formula applies to case 5 only")
    if not 1 <= j <= (n - 1) // 2:
        raise UnsupportedParametersError("even part must keep both parts nonempty")
    even_value = line_value(2 * j, T)
    odd_value = _odd_line_value(n - 2 * j, T)
    bound, _, _ = decompose_bound(even_value, odd_value)
    return case.value - bound


def is_decomposable(n, T):
    """Whether restricting patrols to two node-disjoint parts loses nothing.

    Returns (flag, witness).  Only the odd-odd instances with n <= 2T-1
    resist every split; n = 2 has no two-part split at all.
    """
    case = classify_case(n, T)
    if case.case_id == 5:
        return False, None
    if n == 2:
        # no proper split of a single edge exists; any candidate falls
        # strictly short of the value
        return False, None
    if case.case_id == 4:
        left_n = 2 * T - 1
        v1 = Fraction(2, left_n + 1)
        v2 = Fraction(2 * T - 1, (n - left_n) * T)
    elif n == 3:
        # oscillate on (1,2) or stand on node 3, equiprobably
        v1, v2 = Fraction(1), Fraction(1)
        left_n = 2
    else:
        left_n = 2
        v1 = line_value(2, T)
        v2 = line_value(n - 2, T)
    bound, p1, p2 = decompose_bound(v1, v2)
    if bound != case.value:
        raise AssertionError("decomposition witness failed to reach the value")
    witness = Decomposition(
        left_nodes=tuple(str(i) for i in range(1, left_n + 1)),
        right_nodes=tuple(str(i) for i in range(left_n + 1, n + 1)),
        p1=p1,
        p2=p2,
        v1=v1,
        v2=v2,
    )
    return True, witness


def boustrophedon_tour(n, start_phase=0):
    """Period-2(n-1) tour bouncing between the end nodes of the line.

    ``start_phase`` rotates the anchor: phase 0 starts at node 1 heading
    right, phase k starts k steps later along the same cycle.
    """
    if n < 2:
        raise UnsupportedParametersError("need n >= 2")
    cycle = [str(i) for i in range(1, n + 1)]
    cycle += [str(i) for i in range(n - 1, 1, -1)]
    period = len(cycle)
    return PeriodicWalk(
        tuple(cycle[(t + start_phase) % period] for t in range(period))
    )


def tour_with_end_oscillations(n):
    """Phase-uniform tour (weight 3/4) plus the two end-edge oscillations (1/8 each).

    A period-2(n-1) strategy; on the 7-node line it reproduces the
    alternative optimum worth 1/4.
    """
    if n < 3:
        raise UnsupportedParametersError("need n >= 3")
    period = 2 * (n - 1)
    entries = []
    phase_p = Fraction(3, 4) / period
    for phase in range(period):
        entries.append((boustrophedon_tour(n, phase), phase_p))
    entries.append((_alternating_walk("1", "2", period), Fraction(1, 8)))
    entries.append((_alternating_walk(str(n - 1), str(n), period), Fraction(1, 8)))
    return MixedStrategy(entries)


def casemap_rows(n_lo, n_hi, t_lo, t_hi):
    """Grid of (n, T, case, value, boundary-flag) tuples."""
    rows = []
    for n in range(n_lo, n_hi + 1):
        for T in range(t_lo, t_hi + 1):
            case = classify_case(n, T)
            rows.append((n, T, case.case_id, case.value, int(case.boundary)))
    return rows


def casemap_csv(n_lo, n_hi, t_lo, t_hi, decimal=False):
    """Case partition of the (n, T) grid as deterministic CSV text."""
    header = "n,T,case,value,boundary"
    if decimal:
        header += ",value_decimal"
    lines = [header]
    for n, T, case_id, value, boundary in casemap_rows(n_lo, n_hi, t_lo, t_hi):
        line = f"{n},{T},{case_id},{value},{boundary}"
        if decimal:
            line += f",{float(value)!r}"
        lines.append(line)
    return "\n".join(lines) + "\n"


def curves_csv(T, n_lo, n_hi, decimal=False):
    """The two attack upper bounds 2/(n+1) and (2T-1)/(nT) over a range of n.

    The curves cross at n = 2T-1.
    """
    header = "n,independent_upper,uniform_upper"
    if decimal:
        header += ",independent_decimal,uniform_decimal"
    lines = [header]
    for n in range(n_lo, n_hi + 1):
        independent = Fraction(2, n + 1)
        uniform = Fraction(2 * T - 1, n * T)
        line = f"{n},{independent},{uniform}"
        if decimal:
            line += f",{float(independent)!r},{float(uniform)!r}"
        lines.append(line)
    return "\n".join(lines) + "\n"
