"""Simple undirected graphs, the square operation, and square-root checks."""

from __future__ import annotations

from collections.abc import Iterable

from .errors import (
    DuplicateEdge,
    DuplicateVertex,
    LoopEdge,
    NotSubgraph,
    UnknownVertex,
    VertexSetMismatch,
)


def canonical_pair(u: str, v: str) -> tuple[str, str]:
    """Order an edge's endpoints so that equal pairs compare equal."""
    if u == v:
        raise LoopEdge(f"self-loop at {u!r}")
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple undirected graph over string vertex labels.

    Vertices keep their declared order; edges are stored as canonical
    (sorted) label pairs.  Equality compares the vertex set and edge set,
    independent of declaration order.  Construction rejects self-loops,
    duplicate vertices, duplicate edges, and undeclared endpoints.
    """

    __slots__ = ("_vertices", "_vset", "_edges", "_adj")

    def __init__(self, vertices: Iterable[str], edges: Iterable[tuple[str, str]] = ()):
        ordered: list[str] = []
        seen: set[str] = set()
        for v in vertices:
            if v in seen:
                raise DuplicateVertex(f"duplicate vertex {v!r}")
            seen.add(v)
            ordered.append(v)
        adj: dict[str, set[str]] = {v: set() for v in ordered}
        pairs: set[tuple[str, str]] = set()
        for u, v in edges:
            p = canonical_pair(u, v)
            for end in p:
                if end not in seen:
                    raise UnknownVertex(f"edge endpoint {end!r} is not a declared vertex")
            if p in pairs:
                raise DuplicateEdge(f"duplicate edge {p[0]!r}-{p[1]!r}")
            pairs.add(p)
            adj[p[0]].add(p[1])
            adj[p[1]].add(p[0])
        self._vertices = tuple(ordered)
        self._vset = frozenset(seen)
        self._edges = frozenset(pairs)
        self._adj = {v: frozenset(ns) for v, ns in adj.items()}

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def vertex_set(self) -> frozenset[str]:
        return self._vset

    @property
    def edges(self) -> frozenset[tuple[str, str]]:
        return self._edges

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return len(self._edges)

    def has_vertex(self, v: str) -> bool:
        return v in self._vset

    def has_edge(self, u: str, v: str) -> bool:
        return canonical_pair(u, v) in self._edges

    def neighbors(self, v: str) -> frozenset[str]:
        try:
            return self._adj[v]
        except KeyError:
            raise UnknownVertex(f"unknown vertex {v!r}") from None

    def degree(self, v: str) -> int:
        return len(self.neighbors(v))

    def without_vertices(self, drop: Iterable[str]) -> "Graph":
        """The induced subgraph after deleting `drop` (all must exist)."""
        gone = set(drop)
        for v in gone:
            if v not in self._vset:
                raise UnknownVertex(f"unknown vertex {v!r}")
        kept = [v for v in self._vertices if v not in gone]
        edges = [e for e in self._edges if e[0] not in gone and e[1] not in gone]
        return Graph(kept, edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._vset == other._vset and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._vset, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# -- small named constructions used throughout tests and demos ----------------

def path_graph(labels: Iterable[str]) -> Graph:
    labels = list(labels)
    return Graph(labels, [(labels[i], labels[i + 1]) for i in range(len(labels) - 1)])


def cycle_graph(labels: Iterable[str]) -> Graph:
    labels = list(labels)
    if len(labels) < 3:
        raise LoopEdge("a cycle needs at least three vertices")
    edges = [(labels[i], labels[(i + 1) % len(labels)]) for i in range(len(labels))]
    return Graph(labels, edges)


def complete_graph(labels: Iterable[str]) -> Graph:
    labels = list(labels)
    edges = [(labels[i], labels[j]) for i in range(len(labels)) for j in range(i + 1, len(labels))]
    return Graph(labels, edges)


def star_graph(center: str, leaves: Iterable[str]) -> Graph:
    leaves = list(leaves)
    return Graph([center, *leaves], [(center, leaf) for leaf in leaves])


def connected_components(g: Graph) -> tuple[frozenset[str], ...]:
    """Vertex sets of the connected components, ordered by smallest label."""
    remaining = set(g.vertices)
    comps: list[frozenset[str]] = []
    while remaining:
        root = min(remaining)
        comp = {root}
        frontier = [root]
        while frontier:
            v = frontier.pop()
            for w in g.neighbors(v):
                if w not in comp:
                    comp.add(w)
                    frontier.append(w)
        remaining -= comp
        comps.append(frozenset(comp))
    return tuple(comps)


# -- the square operation and its verifiers -----------------------------------

def square(g: Graph) -> Graph:
    """The graph joining every pair of vertices at distance one or two in g."""
    edges: set[tuple[str, str]] = set()
    for v in g.vertices:
        reach = set(g.neighbors(v))
        for u in g.neighbors(v):
            reach |= g.neighbors(u)
        reach.discard(v)
        for u in reach:
            if v < u:
                edges.add((v, u))
    return Graph(g.vertices, edges)


def verify_square_root(h: Graph, g: Graph) -> bool:
    """True iff square(h) equals g exactly.  Vertex label sets must match."""
    if h.vertex_set != g.vertex_set:
        raise VertexSetMismatch("the candidate root and the square must share one vertex set")
    return square(h).edges == g.edges


def is_subgraph(h: Graph, g: Graph) -> bool:
    """True iff h and g have equal vertex sets and every h-edge is a g-edge."""
    return h.vertex_set == g.vertex_set and h.edges <= g.edges


def neighborhood_clique_check(h: Graph, g: Graph) -> bool:
    """True iff every h-neighborhood induces a clique in g.

    Requires equal vertex sets and E(h) a subset of E(g).  Together with
    "every g-edge is an h-edge or an h-distance-two pair", a passing check
    is equivalent to h being a square root of g, so this doubles as an
    independent verifier.
    """
    if h.vertex_set != g.vertex_set:
        raise VertexSetMismatch("the candidate root and the square must share one vertex set")
    if not h.edges <= g.edges:
        raise NotSubgraph("the candidate root has an edge missing from the square")
    for v in h.vertices:
        nbrs = sorted(h.neighbors(v))
        for i in range(len(nbrs)):
            for j in range(i + 1, len(nbrs)):
                if (nbrs[i], nbrs[j]) not in g.edges:
                    return False
    return True
