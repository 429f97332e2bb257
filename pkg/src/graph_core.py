"""
Simple undirected graphs on vertices 0..n-1 with the analytics every
cost formula needs: connectivity, bridges, the sizes nu/sep/rel of the
parts a bridge separates, bridgeless connected components and the
bridge tree.
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

import networkx as nx

from error import (
    get_logger, DisconnectedInput, InvalidGraph, UnknownEdge, UnknownVertex,
)
log = get_logger()

Edge = tuple[int, int]


def canonical_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """
    Simple undirected graph. Edges are stored as (min, max) pairs.
    Instances are hashable, so analytics results can be cached per graph.
    """
    n: int
    edges: frozenset[Edge]

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise InvalidGraph(f"vertex count must be >= 1, got {self.n!r}")
        if not isinstance(self.edges, frozenset):
            object.__setattr__(self, "edges", frozenset(self.edges))
        for e in self.edges:
            if len(e) != 2 or not (0 <= e[0] < e[1] < self.n):
                raise InvalidGraph(
                    f"edge {e!r} is not a canonical pair of ids below {self.n}")

    @classmethod
    def from_edges(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "Graph":
        """Canonicalises the pairs; rejects self-loops, bad ids and parallel edges."""
        seen = set()
        for u, v in pairs:
            if u == v:
                raise InvalidGraph(f"self-loop at vertex {u}")
            for w in (u, v):
                if not isinstance(w, int) or not 0 <= w < n:
                    raise InvalidGraph(f"vertex id {w!r} outside 0..{n - 1}")
            e = canonical_edge(u, v)
            if e in seen:
                raise InvalidGraph(f"parallel edge {e}")
            seen.add(e)
        return cls(n, frozenset(seen))

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> "Graph":
        return cls.from_edges(g.number_of_nodes(), g.edges())

    @property
    def m(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return canonical_edge(u, v) in self.edges

    def neighbors(self, v: int) -> list[int]:
        return sorted(b if a == v else a for a, b in self.edges if v in (a, b))

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def with_edges(self, added: Iterable[Edge]) -> "Graph":
        return Graph(self.n, self.edges | {canonical_edge(*e) for e in added})

    def without_edges(self, removed: Iterable[Edge]) -> "Graph":
        return Graph(self.n, self.edges - {canonical_edge(*e) for e in removed})

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g


@dataclass(frozen=True)
class BridgeTree:
    """
    Tree of bridgeless connected components. Node i is a vertex set of
    the source graph weighted by its size; tree_edges are (i, j, bridge).
    """
    nodes: tuple[frozenset[int], ...]
    tree_edges: tuple[tuple[int, int, Edge], ...]

    @property
    def weights(self) -> list[int]:
        return [len(block) for block in self.nodes]

    def node_of(self, v: int) -> int:
        for i, block in enumerate(self.nodes):
            if v in block:
                return i
        raise UnknownVertex(f"vertex {v} is in no block")

    def to_networkx(self) -> nx.Graph:
        t = nx.Graph()
        for i, block in enumerate(self.nodes):
            t.add_node(i, weight=len(block))
        for i, j, bridge in self.tree_edges:
            t.add_edge(i, j, bridge=bridge)
        return t


@dataclass(frozen=True)
class _BridgeData:
    connected: bool
    bridges: frozenset[Edge]
    # for each bridge, the vertex set of the component of g - e holding e[0]
    near_side: dict


@lru_cache(maxsize=1 << 18)
def _bridge_data(g: Graph) -> _BridgeData:
    nxg = g.to_networkx()
    connected = nx.is_connected(nxg)
    found = frozenset(canonical_edge(u, v) for u, v in nx.bridges(nxg))
    near_side = {}
    if connected:
        for e in found:
            nxg.remove_edge(*e)
            near_side[e] = frozenset(nx.node_connected_component(nxg, e[0]))
            nxg.add_edge(*e)
    return _BridgeData(connected, found, near_side)


def _require_connected(g: Graph, what: str) -> _BridgeData:
    data = _bridge_data(g)
    if not data.connected:
        raise DisconnectedInput(f"{what} needs a connected graph")
    return data


def _require_edge(g: Graph, e: tuple[int, int]) -> Edge:
    ce = canonical_edge(*e)
    if ce not in g.edges:
        raise UnknownEdge(f"{ce} is not an edge of the graph")
    return ce


def _require_vertex(g: Graph, v: int) -> None:
    if not isinstance(v, int) or not 0 <= v < g.n:
        raise UnknownVertex(f"vertex {v!r} outside 0..{g.n - 1}")


def is_connected(g: Graph) -> bool:
    return _bridge_data(g).connected


def bridges(g: Graph) -> frozenset[Edge]:
    return _require_connected(g, "bridges").bridges


def nu(g: Graph, e: tuple[int, int]) -> int:
    """Size of the smaller side of g - e for a bridge, 0 otherwise."""
    data = _require_connected(g, "nu")
    ce = _require_edge(g, e)
    if ce not in data.bridges:
        return 0
    side = len(data.near_side[ce])
    return min(side, g.n - side)


def sep(g: Graph, e: tuple[int, int]) -> int:
    """Ordered vertex pairs separated by deleting e."""
    k = nu(g, e)
    return 2 * k * (g.n - k)


def rel(g: Graph, e: tuple[int, int], v: int) -> int:
    """Vertices reachable from v only through e."""
    data = _require_connected(g, "rel")
    ce = _require_edge(g, e)
    _require_vertex(g, v)
    if ce not in data.bridges:
        return 0
    side = data.near_side[ce]
    return g.n - len(side) if v in side else len(side)


@lru_cache(maxsize=1 << 18)
def relevance_sums(g: Graph) -> tuple[int, ...]:
    """R(v) for every vertex, as one tuple."""
    data = _require_connected(g, "relevance_sums")
    sums = [0] * g.n
    for e in data.bridges:
        side = data.near_side[e]
        far = g.n - len(side)
        for v in range(g.n):
            sums[v] += far if v in side else len(side)
    return tuple(sums)


def relevance_sum(g: Graph, v: int) -> int:
    _require_vertex(g, v)
    return relevance_sums(g)[v]


def bcc_partition(g: Graph) -> list[frozenset[int]]:
    """Bridgeless connected components, ordered by smallest member."""
    data = _require_connected(g, "bcc_partition")
    nxg = g.to_networkx()
    nxg.remove_edges_from(data.bridges)
    blocks = [frozenset(c) for c in nx.connected_components(nxg)]
    return sorted(blocks, key=min)


def bridge_tree(g: Graph) -> BridgeTree:
    blocks = bcc_partition(g)
    index = {v: i for i, block in enumerate(blocks) for v in block}
    tree_edges = tuple(
        (index[u], index[v], (u, v)) for u, v in sorted(_bridge_data(g).bridges))
    return BridgeTree(tuple(blocks), tree_edges)


def bridge_tree_diameter(bt: BridgeTree) -> int:
    if len(bt.nodes) == 1:
        return 0
    return nx.diameter(bt.to_networkx())


def is_chord(g: Graph, e: tuple[int, int]) -> bool:
    """
    True iff some cycle avoiding e passes through both endpoints of e.
    Two vertices share a cycle exactly when they lie in one
    biconnected block of g - e.
    """
    u, v = _require_edge(g, e)
    rest = g.to_networkx()
    rest.remove_edge(u, v)
    return any(u in block and v in block
               for block in nx.biconnected_components(rest))


def is_chord_free(g: Graph) -> bool:
    return not any(is_chord(g, e) for e in g.sorted_edges())


def girth(g: Graph) -> int | None:
    """Length of a shortest cycle, None for a forest."""
    length = nx.girth(g.to_networkx())
    return None if length == float("inf") else int(length)


def vertex_pairs(n: int) -> list[Edge]:
    return list(itertools.combinations(range(n), 2))


def graph_from_index(n: int, index: int) -> Graph:
    """Bit i of index selects the i-th vertex pair in lexicographic order."""
    pairs = vertex_pairs(n)
    return Graph(n, frozenset(p for i, p in enumerate(pairs) if index >> i & 1))


def graph_count(n: int) -> int:
    return 1 << len(vertex_pairs(n))


def iter_graphs(n: int, start: int = 0, stop: int | None = None) -> Iterator[Graph]:
    stop = graph_count(n) if stop is None else stop
    for index in range(start, stop):
        yield graph_from_index(n, index)


def path_graph(n: int) -> Graph:
    return Graph.from_networkx(nx.path_graph(n))


def cycle_graph(n: int) -> Graph:
    return Graph.from_networkx(nx.cycle_graph(n))


def star_graph(n: int) -> Graph:
    """Star on n vertices with center 0."""
    return Graph.from_networkx(nx.star_graph(n - 1))


__all__ = [
    "Edge", "Graph", "BridgeTree", "canonical_edge", "is_connected",
    "bridges", "nu", "sep", "rel", "relevance_sum", "relevance_sums",
    "bcc_partition", "bridge_tree", "bridge_tree_diameter", "is_chord",
    "is_chord_free", "girth", "vertex_pairs", "graph_from_index",
    "graph_count", "iter_graphs", "path_graph", "cycle_graph", "star_graph",
]
