"""Half-integer points of the subtour-elimination polytope.

A point on n nodes is stored through its support only: a map from node pairs
to doubled values x2 in {1, 2} (so 1 means x_e = 1/2 and 2 means x_e = 1).
Validation, classification into the square / fractional-cycle families, and
the contraction of 1-paths down to a square graph all live here.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .deltamatroid import SquareGraph
from .graphcore import MultiGraph, WeightedGraph, global_min_cut, is_connected

__all__ = [
    "EdgeKey",
    "HalfIntegerPoint",
    "SubtourReport",
    "PointClass",
    "SquareCycle",
    "OnePath",
    "SupportDecomposition",
    "ContractedPoint",
    "edge_key",
    "support_graph",
    "validate_subtour",
    "classify",
    "decompose",
    "contract_one_paths",
]

EdgeKey = tuple[int, int]

DEGENERATE_MSG = "integral point; tour is the 1-edge cycle"


def edge_key(u: int, v: int) -> EdgeKey:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class HalfIntegerPoint:
    """Support of a half-integer vector indexed by node pairs.

    n: number of nodes (ids 0..n-1).
    support: edge key (u, v) with u < v  ->  doubled value in {1, 2}.
    """

    n: int
    support: dict[EdgeKey, int]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        clean: dict[EdgeKey, int] = {}
        for (u, v), x2 in sorted(self.support.items()):
            if not (0 <= u < v < self.n):
                raise ValueError(f"bad edge ({u}, {v}) for n={self.n}")
            if x2 not in (1, 2):
                raise ValueError(f"doubled value must be 1 or 2, got {x2} on ({u}, {v})")
            clean[(u, v)] = x2
        object.__setattr__(self, "support", clean)

    def half_edges(self) -> list[EdgeKey]:
        return [e for e, x2 in self.support.items() if x2 == 1]

    def one_edges(self) -> list[EdgeKey]:
        return [e for e, x2 in self.support.items() if x2 == 2]

    def cost_x2(self, costs: dict[EdgeKey, int]) -> int:
        """Doubled objective value: sum of cost * x2 over the support."""
        return sum(costs[e] * x2 for e, x2 in self.support.items())


def support_graph(x: HalfIntegerPoint) -> tuple[MultiGraph, list[EdgeKey]]:
    """The support as a MultiGraph; edge id i corresponds to the i-th key."""
    keys = sorted(x.support)
    return MultiGraph(x.n, keys), keys


@dataclass(frozen=True)
class SubtourReport:
    """Outcome of validate_subtour; truthy iff the point is feasible.

    reason is one of "ok", "degree", "disconnected", "cut"; node carries the
    offending node for degree violations, cut_side / cut_value_x2 carry a
    violated cut (doubled value < 4).
    """

    ok: bool
    reason: str = "ok"
    node: int | None = None
    cut_side: frozenset[int] | None = None
    cut_value_x2: int | None = None

    def __bool__(self) -> bool:
        return self.ok

    def witness(self) -> str:
        if self.ok:
            return "ok"
        if self.reason == "degree":
            return f"degree node={self.node}"
        if self.reason == "disconnected":
            return "support disconnected"
        side = ",".join(str(v) for v in sorted(self.cut_side or ()))
        return f"cut S={{{side}}} x2={self.cut_value_x2}"


def validate_subtour(x: HalfIntegerPoint) -> SubtourReport:
    """Check degree-2 equalities and all cut constraints, exactly.

    Degrees are doubled (must equal 4 at every node); the cut condition
    x(delta(S)) >= 2 becomes a doubled global min cut of at least 4, computed
    by Stoer-Wagner on the support.
    """
    deg = [0] * x.n
    for (u, v), x2 in x.support.items():
        deg[u] += x2
        deg[v] += x2
    for v in range(x.n):
        if deg[v] != 4:
            return SubtourReport(False, "degree", node=v)
    g, keys = support_graph(x)
    if not is_connected(g):
        return SubtourReport(False, "disconnected")
    if x.n >= 2:
        val, side = global_min_cut(WeightedGraph(g, tuple(x.support[k] for k in keys)))
        if val < 4:
            return SubtourReport(False, "cut", cut_side=side, cut_value_x2=val)
    return SubtourReport(True)


class PointClass(enum.Enum):
    SQUARE = "SQUARE"
    BOYD_CARR = "BOYD-CARR"
    CARR_VEMPALA = "CARR-VEMPALA"
    OTHER_HALF_INTEGER = "HALF-INTEGER"

    @property
    def label(self) -> str:
        return self.value


def _half_cycles(x: HalfIntegerPoint) -> list[list[int]] | None:
    """Node-disjoint cycles formed by the 1/2-edges, or None if they do not
    decompose that way (some node has half-degree other than 0 or 2)."""
    half_adj: dict[int, list[int]] = {}
    for u, v in x.half_edges():
        half_adj.setdefault(u, []).append(v)
        half_adj.setdefault(v, []).append(u)
    for v, nb in half_adj.items():
        if len(nb) != 2:
            return None
    cycles = []
    seen: set[int] = set()
    for start in sorted(half_adj):
        if start in seen:
            continue
        nb = sorted(half_adj[start])
        cycle = [start]
        seen.add(start)
        prev, cur = start, nb[0]
        while cur != start:
            cycle.append(cur)
            seen.add(cur)
            a, b = half_adj[cur]
            prev, cur = cur, (b if a == prev else a)
        cycles.append(cycle)
    return cycles


def classify(x: HalfIntegerPoint) -> PointClass:
    """Most specific class of a feasible point.

    SQUARE: 1/2-edges decompose into node-disjoint 4-cycles (vacuously for an
    integral cycle); BOYD-CARR additionally has cubic support with exactly one
    1-edge per node; CARR-VEMPALA: the 1/2-edges form a single cycle through
    all nodes.  On n = 4 both square and fractional-cycle conditions can hold
    at once and the square class wins.
    """
    report = validate_subtour(x)
    if not report:
        raise ValueError(f"not a feasible point: {report.witness()}")
    cycles = _half_cycles(x)
    if cycles is not None:
        if all(len(c) == 4 for c in cycles):
            one_deg = [0] * x.n
            half_deg = [0] * x.n
            for u, v in x.one_edges():
                one_deg[u] += 1
                one_deg[v] += 1
            for u, v in x.half_edges():
                half_deg[u] += 1
                half_deg[v] += 1
            if all(one_deg[v] == 1 and half_deg[v] == 2 for v in range(x.n)):
                return PointClass.BOYD_CARR
            return PointClass.SQUARE
        if len(cycles) == 1 and len(cycles[0]) == x.n:
            return PointClass.CARR_VEMPALA
    return PointClass.OTHER_HALF_INTEGER


@dataclass(frozen=True)
class SquareCycle:
    """A 4-cycle of 1/2-edges.  nodes are cyclic; edges[i] joins nodes[i] and
    nodes[(i+1) % 4].  The two perfect matchings pair opposite edges."""

    nodes: tuple[int, int, int, int]
    edges: tuple[EdgeKey, EdgeKey, EdgeKey, EdgeKey] = field(init=False)

    def __post_init__(self):
        ks = tuple(
            edge_key(self.nodes[i], self.nodes[(i + 1) % 4]) for i in range(4)
        )
        object.__setattr__(self, "edges", ks)

    @property
    def matchings(self) -> tuple[frozenset[EdgeKey], frozenset[EdgeKey]]:
        return (
            frozenset((self.edges[0], self.edges[2])),
            frozenset((self.edges[1], self.edges[3])),
        )


@dataclass(frozen=True)
class OnePath:
    """Maximal path (or, in the degenerate integral case, cycle) of 1-edges."""

    nodes: tuple[int, ...]
    closed: bool = False

    @property
    def edges(self) -> tuple[EdgeKey, ...]:
        ks = [edge_key(self.nodes[i], self.nodes[i + 1]) for i in range(len(self.nodes) - 1)]
        if self.closed:
            ks.append(edge_key(self.nodes[-1], self.nodes[0]))
        return tuple(ks)


@dataclass(frozen=True)
class SupportDecomposition:
    squares: tuple[SquareCycle, ...]
    one_paths: tuple[OnePath, ...]
    pair_partition: tuple[frozenset[EdgeKey], ...]


def decompose(x: HalfIntegerPoint) -> SupportDecomposition:
    """Squares, 1-paths, and the pair partition of a square point.

    The pair partition holds the two perfect matchings of every square, in
    square order, matching containing the square's lowest edge first.
    """
    cls = classify(x)
    if cls not in (PointClass.SQUARE, PointClass.BOYD_CARR):
        raise ValueError("not a square point")
    cycles = _half_cycles(x) or []
    squares = []
    for cyc in cycles:
        a = cyc[0]
        nb = (cyc[1], cyc[-1])
        if nb[0] < nb[1]:
            nodes = (a, cyc[1], cyc[2], cyc[3])
        else:
            nodes = (a, cyc[3], cyc[2], cyc[1])
        squares.append(SquareCycle(nodes))

    one_adj: dict[int, list[int]] = {}
    for u, v in x.one_edges():
        one_adj.setdefault(u, []).append(v)
        one_adj.setdefault(v, []).append(u)
    paths: list[OnePath] = []
    visited: set[int] = set()
    endpoints = sorted(v for v, nb in one_adj.items() if len(nb) == 1)
    for start in endpoints:
        if start in visited:
            continue
        nodes = [start]
        visited.add(start)
        prev, cur = start, one_adj[start][0]
        while True:
            nodes.append(cur)
            visited.add(cur)
            nb = one_adj[cur]
            if len(nb) == 1:
                break
            a, b = nb
            prev, cur = cur, (b if a == prev else a)
        paths.append(OnePath(tuple(nodes)))
    for start in sorted(one_adj):
        # anything left over is a closed 1-cycle (degenerate integral point)
        if start in visited:
            continue
        nodes = [start]
        visited.add(start)
        nb = sorted(one_adj[start])
        prev, cur = start, nb[0]
        while cur != start:
            nodes.append(cur)
            visited.add(cur)
            a, b = one_adj[cur]
            prev, cur = cur, (b if a == prev else a)
        paths.append(OnePath(tuple(nodes), closed=True))

    pairs: list[frozenset[EdgeKey]] = []
    for sq in squares:
        pairs.extend(sq.matchings)
    return SupportDecomposition(tuple(squares), tuple(paths), tuple(pairs))


@dataclass(frozen=True)
class ContractedPoint:
    """Square graph obtained by contracting every 1-path to a single edge.

    corner_orig[i] is the original node id of square-graph node i, expansion
    maps each matching edge id to the full original node path it replaced
    (endpoints included, oriented from the edge's first endpoint).
    """

    square_graph: SquareGraph
    cost: tuple[int, ...]
    corner_orig: tuple[int, ...]
    expansion: dict[int, tuple[int, ...]]


def contract_one_paths(x: HalfIntegerPoint, costs: dict[EdgeKey, int]) -> ContractedPoint:
    """Contract 1-paths of a square point into matching edges.

    Every 1-path is replaced by a single edge of summed cost joining its two
    square corners; square edges keep their own costs.  Requires at least one
    square: an integral point has no square graph.
    """
    dec = decompose(x)
    if not dec.squares:
        raise ValueError(DEGENERATE_MSG)
    for e in x.support:
        if e not in costs:
            raise ValueError(f"missing cost for edge {e}")

    corner_orig: list[int] = []
    corner_new: dict[int, int] = {}
    for sq in dec.squares:
        for v in sq.nodes:
            corner_new[v] = len(corner_orig)
            corner_orig.append(v)

    edges: list[tuple[int, int]] = []
    cost: list[int] = []
    squares_new: list[tuple[int, int, int, int]] = []
    for si, sq in enumerate(dec.squares):
        base = 4 * si
        squares_new.append((base, base + 1, base + 2, base + 3))
        for j in range(4):
            u, v = sq.nodes[j], sq.nodes[(j + 1) % 4]
            edges.append((base + j, base + (j + 1) % 4))
            cost.append(costs[edge_key(u, v)])

    expansion: dict[int, tuple[int, ...]] = {}
    def path_sort_key(p: OnePath) -> tuple[int, int]:
        a, b = corner_new[p.nodes[0]], corner_new[p.nodes[-1]]
        return (min(a, b), max(a, b))

    for p in sorted(dec.one_paths, key=path_sort_key):
        if p.closed:
            raise ValueError(DEGENERATE_MSG)
        a, b = corner_new[p.nodes[0]], corner_new[p.nodes[-1]]
        nodes = p.nodes if a <= b else tuple(reversed(p.nodes))
        eid = len(edges)
        edges.append((min(a, b), max(a, b)))
        cost.append(sum(costs[e] for e in p.edges))
        expansion[eid] = nodes

    graph = MultiGraph(len(corner_orig), edges)
    matching = frozenset(range(4 * len(dec.squares), len(edges)))
    sg = SquareGraph(graph, matching, tuple(squares_new))
    return ContractedPoint(sg, tuple(cost), tuple(corner_orig), expansion)
