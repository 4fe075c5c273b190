"""Core graph, trigraph, and width-certificate types.

Everything here is immutable after construction and safe to share across
threads.  Vertex labels are opaque hashable values; they are kept stable
through every operation (induced subgraphs, views, serialization).
"""

from __future__ import annotations

from typing import Any, Hashable, Iterable, Iterator

Label = Hashable

BLACK = "black"
RED = "red"
NONE = "none"


class LayerwheelError(Exception):
    """Base class for errors raised by this package."""


class UnknownVertexError(LayerwheelError):
    pass


class BudgetExceededError(LayerwheelError):
    """A construction would exceed its vertex budget."""


class CapExceededError(LayerwheelError):
    """An exact oracle was handed an instance above its hard cap."""


class DeadlineExceededError(LayerwheelError):
    """A cooperative deadline expired inside a long-running search."""


class PreconditionError(LayerwheelError):
    """A documented precondition of an operation does not hold."""


class PrefixExhaustedError(LayerwheelError):
    """A search needed layers beyond the built depth of a prefix."""


def label_key(label: Label) -> tuple:
    """Total order on labels of mixed types, for deterministic output."""
    return (type(label).__name__, label)


def _norm_edge(u: Label, v: Label) -> frozenset:
    if u == v:
        raise LayerwheelError(f"loop edge on {u!r}")
    return frozenset((u, v))


class Graph:
    """Finite simple undirected graph with labeled vertices."""

    __slots__ = ("_vertices", "_index", "_adj", "_edges")

    def __init__(self, vertices: Iterable[Label] = (), edges: Iterable = ()):
        vs = tuple(vertices)
        index = {}
        for v in vs:
            if v in index:
                raise LayerwheelError(f"duplicate vertex {v!r}")
            index[v] = len(index)
        adj: dict[Label, set] = {v: set() for v in vs}
        es = set()
        for u, v in edges:
            if u not in index or v not in index:
                raise UnknownVertexError(f"edge ({u!r}, {v!r}) has unknown endpoint")
            e = _norm_edge(u, v)
            if e not in es:
                es.add(e)
                adj[u].add(v)
                adj[v].add(u)
        self._vertices = vs
        self._index = index
        self._adj = {v: frozenset(ns) for v, ns in adj.items()}
        self._edges = frozenset(es)

    @property
    def vertices(self) -> tuple:
        return self._vertices

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def edges(self) -> frozenset:
        return self._edges

    @property
    def m(self) -> int:
        return len(self._edges)

    def __contains__(self, v: Label) -> bool:
        return v in self._index

    def has_edge(self, u: Label, v: Label) -> bool:
        return _norm_edge(u, v) in self._edges

    def neighbors(self, v: Label) -> frozenset:
        try:
            return self._adj[v]
        except KeyError:
            raise UnknownVertexError(f"unknown vertex {v!r}") from None

    def degree(self, v: Label) -> int:
        return len(self.neighbors(v))

    def sorted_vertices(self) -> list:
        return sorted(self._vertices, key=label_key)

    def sorted_edges(self) -> list[tuple]:
        out = []
        for e in self._edges:
            u, v = sorted(e, key=label_key)
            out.append((u, v))
        out.sort(key=lambda p: (label_key(p[0]), label_key(p[1])))
        return out

    def __eq__(self, other: Any) -> bool:
        return (
            isinstance(other, Graph)
            and set(self._vertices) == set(other._vertices)
            and self._edges == other._edges
        )

    def __hash__(self):
        return hash((frozenset(self._vertices), self._edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


class Trigraph:
    """Graph with a partition of its edge set into black and red edges.

    The total graph forgets colors; the real graph keeps black edges only.
    """

    __slots__ = ("_vertices", "_index", "_black", "_red", "_badj", "_radj")

    def __init__(
        self,
        vertices: Iterable[Label] = (),
        black: Iterable = (),
        red: Iterable = (),
    ):
        vs = tuple(vertices)
        index = {}
        for v in vs:
            if v in index:
                raise LayerwheelError(f"duplicate vertex {v!r}")
            index[v] = len(index)
        badj: dict[Label, set] = {v: set() for v in vs}
        radj: dict[Label, set] = {v: set() for v in vs}
        bset, rset = set(), set()
        for u, v in black:
            if u not in index or v not in index:
                raise UnknownVertexError(f"black edge ({u!r}, {v!r}) has unknown endpoint")
            e = _norm_edge(u, v)
            bset.add(e)
            badj[u].add(v)
            badj[v].add(u)
        for u, v in red:
            if u not in index or v not in index:
                raise UnknownVertexError(f"red edge ({u!r}, {v!r}) has unknown endpoint")
            e = _norm_edge(u, v)
            if e in bset:
                raise LayerwheelError(f"edge {sorted(e, key=label_key)!r} is both black and red")
            rset.add(e)
            radj[u].add(v)
            radj[v].add(u)
        self._vertices = vs
        self._index = index
        self._black = frozenset(bset)
        self._red = frozenset(rset)
        self._badj = {v: frozenset(ns) for v, ns in badj.items()}
        self._radj = {v: frozenset(ns) for v, ns in radj.items()}

    @property
    def vertices(self) -> tuple:
        return self._vertices

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def black_edges(self) -> frozenset:
        return self._black

    @property
    def red_edges(self) -> frozenset:
        return self._red

    def __contains__(self, v: Label) -> bool:
        return v in self._index

    def adjacency_type(self, u: Label, v: Label) -> str:
        """One of \"black\", \"red\", \"none\" for a vertex pair."""
        if u not in self._index or v not in self._index:
            raise UnknownVertexError(f"unknown vertex in pair ({u!r}, {v!r})")
        e = _norm_edge(u, v)
        if e in self._black:
            return BLACK
        if e in self._red:
            return RED
        return NONE

    def black_neighbors(self, v: Label) -> frozenset:
        try:
            return self._badj[v]
        except KeyError:
            raise UnknownVertexError(f"unknown vertex {v!r}") from None

    def red_neighbors(self, v: Label) -> frozenset:
        try:
            return self._radj[v]
        except KeyError:
            raise UnknownVertexError(f"unknown vertex {v!r}") from None

    def neighbors(self, v: Label) -> frozenset:
        return self.black_neighbors(v) | self.red_neighbors(v)

    def sorted_vertices(self) -> list:
        return sorted(self._vertices, key=label_key)

    def __eq__(self, other: Any) -> bool:
        return (
            isinstance(other, Trigraph)
            and set(self._vertices) == set(other._vertices)
            and self._black == other._black
            and self._red == other._red
        )

    def __hash__(self):
        return hash((frozenset(self._vertices), self._black, self._red))

    def __repr__(self):
        return f"Trigraph(n={self.n}, black={len(self._black)}, red={len(self._red)})"


def total_graph(t: Trigraph) -> Graph:
    """Forget edge colors."""
    pairs = [tuple(e) for e in t.black_edges] + [tuple(e) for e in t.red_edges]
    return Graph(t.vertices, pairs)


def real_graph(t: Trigraph) -> Graph:
    """Keep black edges only."""
    return Graph(t.vertices, [tuple(e) for e in t.black_edges])


def induced_subgraph(g, keep: Iterable[Label]):
    """Induced sub(tri)graph on `keep`, labels preserved.

    Accepts a Graph or a Trigraph and returns the same kind.
    """
    keep_set = set(keep)
    for v in keep_set:
        if v not in g:
            raise UnknownVertexError(f"unknown vertex {v!r}")
    vs = [v for v in g.vertices if v in keep_set]
    if isinstance(g, Trigraph):
        black = [tuple(e) for e in g.black_edges if e <= keep_set]
        red = [tuple(e) for e in g.red_edges if e <= keep_set]
        return Trigraph(vs, black, red)
    if isinstance(g, Graph):
        edges = [tuple(e) for e in g.edges if e <= keep_set]
        return Graph(vs, edges)
    raise TypeError(f"expected Graph or Trigraph, got {type(g).__name__}")


def connected_components(g: Graph) -> list[list]:
    """Components as vertex lists, deterministically ordered by smallest label."""
    seen = set()
    comps = []
    for start in g.sorted_vertices():
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        queue = [start]
        while queue:
            v = queue.pop()
            for w in g.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        comp.sort(key=label_key)
        comps.append(comp)
    comps.sort(key=lambda c: label_key(c[0]))
    return comps


class TreeDecomposition:
    """Bags indexed by tree nodes; validity is checked by the oracles module."""

    __slots__ = ("_nodes", "_links", "_bags")

    def __init__(self, bags: dict, links: Iterable):
        self._bags = {node: frozenset(bag) for node, bag in bags.items()}
        self._nodes = tuple(self._bags)
        node_set = set(self._nodes)
        ls = set()
        for a, b in links:
            if a not in node_set or b not in node_set:
                raise LayerwheelError(f"link ({a!r}, {b!r}) references unknown node")
            if a == b:
                raise LayerwheelError(f"self link on node {a!r}")
            ls.add(frozenset((a, b)))
        self._links = frozenset(ls)

    @property
    def nodes(self) -> tuple:
        return self._nodes

    @property
    def links(self) -> frozenset:
        return self._links

    @property
    def bags(self) -> dict:
        return dict(self._bags)

    def bag(self, node) -> frozenset:
        return self._bags[node]

    @property
    def width(self) -> int:
        if not self._bags:
            return -1
        return max(len(b) for b in self._bags.values()) - 1

    def __repr__(self):
        return f"TreeDecomposition(nodes={len(self._nodes)}, width={self.width})"


class Bramble:
    """A family of connected, pairwise-touching vertex sets of a host graph."""

    __slots__ = ("_sets", "order_certificate")

    def __init__(self, sets: Iterable, order_certificate=None):
        self._sets = tuple(frozenset(s) for s in sets)
        for s in self._sets:
            if not s:
                raise LayerwheelError("bramble sets must be nonempty")
        self.order_certificate = (
            None if order_certificate is None else frozenset(order_certificate)
        )

    @property
    def sets(self) -> tuple:
        return self._sets

    def __len__(self):
        return len(self._sets)

    def __iter__(self) -> Iterator[frozenset]:
        return iter(self._sets)

    def __repr__(self):
        return f"Bramble(sets={len(self._sets)})"
