"""Graph arena: covering and independence numbers, exact and fractional.

Node identifiers are strings externally and dense integer indices
internally.  All combinatorial searches are exact branch-and-bound; the
instances this suite targets have at most a couple of dozen nodes, so
correctness wins over asymptotics.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidGraphError, NoCoveringSetError


class Graph:
    """Undirected simple graph with ordered node labels.

    Immutable after construction; safe to share between threads.
    """

    __slots__ = ("nodes", "edges", "index", "neighbors", "_neighbor_sets")

    def __init__(self, nodes, edges):
        nodes = tuple(str(v) for v in nodes)
        if len(set(nodes)) != len(nodes):
            raise InvalidGraphError("duplicate node identifiers")
        index = {v: i for i, v in enumerate(nodes)}
        seen = set()
        norm = []
        for u, v in edges:
            u, v = str(u), str(v)
            if u == v:
                raise InvalidGraphError(f"self-loop at node {u!r}")
            if u not in index or v not in index:
                raise InvalidGraphError(f"edge ({u!r}, {v!r}) uses an undeclared node")
            a, b = sorted((index[u], index[v]))
            if (a, b) in seen:
                raise InvalidGraphError(f"duplicate edge ({u!r}, {v!r})")
            seen.add((a, b))
            norm.append((a, b))
        norm.sort()
        self.nodes = nodes
        self.edges = tuple((nodes[a], nodes[b]) for a, b in norm)
        self.index = index
        nbrs = [[] for _ in nodes]
        for a, b in norm:
            nbrs[a].append(b)
            nbrs[b].append(a)
        self.neighbors = tuple(tuple(sorted(ns)) for ns in nbrs)
        self._neighbor_sets = tuple(frozenset(ns) for ns in self.neighbors)

    @property
    def n(self):
        return len(self.nodes)

    def adjacent(self, u, v):
        """True when labels ``u`` and ``v`` are joined by an edge."""
        return self.index[v] in self._neighbor_sets[self.index[u]]

    def edge_indices(self):
        """Edges as pairs of node indices, in sorted order."""
        return tuple((self.index[u], self.index[v]) for u, v in self.edges)

    def has_isolated_node(self):
        return any(not ns for ns in self.neighbors)

    def to_json(self):
        return {"nodes": list(self.nodes), "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data):
        try:
            return cls(data["nodes"], data["edges"])
        except (KeyError, TypeError) as exc:
            raise InvalidGraphError(f"malformed graph JSON: {exc}") from exc

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.nodes == other.nodes
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.nodes, self.edges))

    def __repr__(self):
        return f"Graph(nodes={len(self.nodes)}, edges={len(self.edges)})"


def line_graph(n):
    """Path graph on nodes "1".."n" with consecutive numbers adjacent."""
    if n < 2:
        raise InvalidGraphError("a line graph needs at least 2 nodes")
    labels = [str(i) for i in range(1, n + 1)]
    return Graph(labels, [(labels[i], labels[i + 1]) for i in range(n - 1)])


def bipartition(g):
    """Two-color the graph; returns (side_a, side_b) as label tuples or None.

    The side containing the smallest node of each component comes first,
    so line graphs split into (odd labels, even labels).
    """
    color = [None] * g.n
    for start in range(g.n):
        if color[start] is not None:
            continue
        color[start] = 0
        queue = [start]
        while queue:
            u = queue.pop()
            for v in g.neighbors[u]:
                if color[v] is None:
                    color[v] = 1 - color[u]
                    queue.append(v)
                elif color[v] == color[u]:
                    return None
    side_a = tuple(g.nodes[i] for i in range(g.n) if color[i] == 0)
    side_b = tuple(g.nodes[i] for i in range(g.n) if color[i] == 1)
    return side_a, side_b


def covering_number(g):
    """Minimum number of edges touching every node, with a witness edge set.

    Exact branch-and-bound over the incident edges of the lowest uncovered
    node.  Raises when an isolated node makes covering impossible.
    """
    if g.n == 0:
        return 0, ()
    if g.has_isolated_node():
        raise NoCoveringSetError("graph has an isolated node, no covering set exists")
    edge_idx = g.edge_indices()
    incident = [[] for _ in range(g.n)]
    for k, (a, b) in enumerate(edge_idx):
        incident[a].append(k)
        incident[b].append(k)

    best = {"size": g.n + 1, "edges": None}

    def search(covered, chosen):
        uncovered = g.n - len(covered)
        if uncovered == 0:
            if len(chosen) < best["size"]:
                best["size"] = len(chosen)
                best["edges"] = tuple(chosen)
            return
        # each extra edge covers at most 2 new nodes
        if len(chosen) + (uncovered + 1) // 2 >= best["size"]:
            return
        target = next(i for i in range(g.n) if i not in covered)
        for k in incident[target]:
            a, b = edge_idx[k]
            newly = {x for x in (a, b) if x not in covered}
            covered.update(newly)
            chosen.append(k)
            search(covered, chosen)
            chosen.pop()
            covered.difference_update(newly)

    search(set(), [])
    witness = tuple(g.edges[k] for k in sorted(best["edges"]))
    return best["size"], witness


def independence_number(g):
    """Maximum set of pairwise non-adjacent nodes, with a witness.

    Include-first branch-and-bound in node order keeps the witness
    deterministic (lines yield the odd-numbered nodes).
    """
    best = {"size": -1, "nodes": None}
    chosen = []

    def search(i, banned):
        if len(chosen) + (g.n - i) <= best["size"]:
            return
        if i == g.n:
            if len(chosen) > best["size"]:
                best["size"] = len(chosen)
                best["nodes"] = tuple(chosen)
            return
        if i not in banned:
            chosen.append(i)
            added = {v for v in g.neighbors[i] if v not in banned}
            banned.update(added)
            search(i + 1, banned)
            banned.difference_update(added)
            chosen.pop()
        search(i + 1, banned)

    search(0, set())
    return best["size"], tuple(g.nodes[i] for i in best["nodes"])


@dataclass(frozen=True)
class FractionalWeighting:
    """Optimal fractional edge cover and its dual node weighting.

    ``edge_weights`` solves: minimize the total weight subject to every
    node receiving incident weight at least 1.  ``node_weights`` solves
    the dual packing problem; both totals equal ``total`` exactly.
    """

    edge_weights: dict
    node_weights: dict
    total: Fraction

    def validate(self, g):
        incident = {v: Fraction(0) for v in g.nodes}
        for (u, v), w in self.edge_weights.items():
            if not 0 <= w <= 1:
                raise ValueError(f"edge weight {w} outside [0, 1]")
            incident[u] += w
            incident[v] += w
        for v, s in incident.items():
            if s < 1:
                raise ValueError(f"node {v!r} covered with weight {s} < 1")
        for u, v in g.edges:
            if self.node_weights[u] + self.node_weights[v] > 1:
                raise ValueError(f"edge ({u!r}, {v!r}) packs weight > 1")
        for v, w in self.node_weights.items():
            if not 0 <= w <= 1:
                raise ValueError(f"node weight {w} outside [0, 1]")
        if sum(self.edge_weights.values()) != self.total:
            raise ValueError("edge weights do not sum to the stated total")
        if sum(self.node_weights.values()) != self.total:
            raise ValueError("node weights do not sum to the stated total")


def fractional_weightings(g):
    """Solve the fractional covering LP and its dual exactly.

    Returns a :class:`FractionalWeighting` whose total lies between the
    independence and covering numbers.
    """
    from .lp import LPStatus, solve_lp

    if g.has_isolated_node():
        raise NoCoveringSetError("isolated node makes the covering LP infeasible")
    edge_idx = g.edge_indices()
    m = len(edge_idx)
    rows = []
    for i in range(g.n):
        row = [Fraction(0)] * m
        for k, (a, b) in enumerate(edge_idx):
            if i in (a, b):
                row[k] = Fraction(1)
        rows.append(row)
    result = solve_lp(
        [Fraction(1)] * m,
        rows,
        [">="] * g.n,
        [Fraction(1)] * g.n,
        maximize=False,
    )
    if result.status is not LPStatus.OPTIMAL:
        raise NoCoveringSetError(f"covering LP is {result.status.value}")
    weighting = FractionalWeighting(
        edge_weights={g.edges[k]: result.x[k] for k in range(m)},
        node_weights={g.nodes[i]: result.duals[i] for i in range(g.n)},
        total=result.objective,
    )
    weighting.validate(g)
    return weighting
