"""Layered wheel construction and the layered-graph structure it lives on.

A layered graph couples a trigraph with a rooted tree on the same vertices
whose depth classes are the layers, each layer carrying a left-to-right
order.  Wheel prefixes are layered graphs produced by the inductive child
enumeration below, which records full birth metadata per vertex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Optional, Sequence

from .core import (
    BudgetExceededError,
    Graph,
    LayerwheelError,
    PreconditionError,
    Trigraph,
    UnknownVertexError,
    total_graph,
    real_graph,
)

STANDARD = "standard"
TRIANGLE_FREE = "triangle-free"


@dataclass(frozen=True)
class ChildSpec:
    """Birth data of one child: black targets B, red targets R.

    B and R are disjoint subsets of the parent's upward neighborhood.
    Twins (triangle-free variant only) carry no cross edges at all.
    """

    B: frozenset
    R: frozenset
    parent: object = None
    twin: bool = False

    def __post_init__(self):
        if self.B & self.R:
            raise LayerwheelError("B and R must be disjoint")
        if self.twin and (self.B or self.R):
            raise LayerwheelError("twins carry no cross edges")


def children_count(s: int, t: int) -> int:
    """Number of ordered disjoint pairs (B, R) from a ground set of size s
    with |B u R| <= t."""
    return sum(comb(s, k) * 2**k for k in range(min(s, t) + 1))


def max_children_bound(t: int, variant: str = STANDARD) -> int:
    """Strict upper bound on children per node: 3^(t+1), doubled with twins."""
    base = 3 ** (t + 1)
    return 2 * base if variant == TRIANGLE_FREE else base


def enumerate_children(
    upward: Sequence,
    t: int,
    variant: str = STANDARD,
    red_cliques: Optional[Iterable[frozenset]] = None,
    parent=None,
) -> list[ChildSpec]:
    """Canonically ordered child specs for a parent with ground set `upward`.

    `upward` must already be in (layer, position) order; the canonical order
    is increasing |B u R|, then the B membership mask over `upward`, then the
    R mask.  The triangle-free variant keeps only B in `red_cliques` and
    follows every spec with its plain twin.
    """
    ground = list(upward)
    if len(set(ground)) != len(ground):
        raise LayerwheelError("upward set has repeated vertices")
    if len(ground) > t + 1:
        raise PreconditionError(
            f"upward neighborhood of size {len(ground)} exceeds t+1 = {t + 1}"
        )
    if variant not in (STANDARD, TRIANGLE_FREE):
        raise LayerwheelError(f"unknown variant {variant!r}")
    if variant == TRIANGLE_FREE:
        if red_cliques is None:
            raise PreconditionError("triangle-free enumeration needs the red-clique family")
        allowed = {frozenset(c) for c in red_cliques}

    pairs = []
    n = len(ground)
    for b_mask in range(1 << n):
        b = frozenset(ground[i] for i in range(n) if b_mask >> i & 1)
        if len(b) > t:
            continue
        if variant == TRIANGLE_FREE and b not in allowed:
            continue
        rest = [i for i in range(n) if not b_mask >> i & 1]
        for r_mask in range(1 << len(rest)):
            r = frozenset(ground[rest[j]] for j in range(len(rest)) if r_mask >> j & 1)
            if len(b) + len(r) > t:
                continue
            pairs.append((b, r))

    def mask(subset: frozenset) -> tuple:
        return tuple(0 if g in subset else 1 for g in ground)

    pairs.sort(key=lambda p: (len(p[0] | p[1]), mask(p[0]), mask(p[1])))

    specs = []
    for b, r in pairs:
        specs.append(ChildSpec(B=b, R=r, parent=parent))
        if variant == TRIANGLE_FREE:
            specs.append(ChildSpec(B=frozenset(), R=frozenset(), parent=parent, twin=True))
    return specs


class LayeredGraph:
    """Trigraph plus a rooted layered tree on the same vertex set.

    Layers are the tree's depth classes, in left-to-right order.  The tree
    edges are structural and need not be edges of the trigraph.
    """

    def __init__(self, trigraph: Trigraph, layers: Sequence[Sequence], parent: dict):
        if isinstance(trigraph, Graph):
            trigraph = Trigraph(trigraph.vertices, [tuple(e) for e in trigraph.edges])
        self.trigraph = trigraph
        self.layers = tuple(tuple(layer) for layer in layers)
        self.parent = dict(parent)

        seen = {}
        for i, layer in enumerate(self.layers):
            if not layer:
                raise LayerwheelError(f"layer {i} is empty")
            for pos, v in enumerate(layer):
                if v in seen:
                    raise LayerwheelError(f"vertex {v!r} appears in two layers")
                seen[v] = (i, pos)
        if set(seen) != set(trigraph.vertices):
            raise LayerwheelError("layers do not partition the vertex set")
        if len(self.layers[0]) != 1:
            raise LayerwheelError("layer 0 must hold exactly the root")
        self._index = seen
        self.root = self.layers[0][0]
        if self.parent.get(self.root) is not None:
            raise LayerwheelError("root must have parent None")
        for v, (i, _) in seen.items():
            if v == self.root:
                continue
            p = self.parent.get(v)
            if p is None or p not in seen:
                raise LayerwheelError(f"vertex {v!r} lacks a valid parent")
            if seen[p][0] != i - 1:
                raise LayerwheelError(f"parent of {v!r} is not one layer up")
        self._children = {v: [] for v in seen}
        for i, layer in enumerate(self.layers[1:], start=1):
            for v in layer:
                self._children[self.parent[v]].append(v)
        self._children = {v: tuple(cs) for v, cs in self._children.items()}

    # -- basic lookup -------------------------------------------------

    @property
    def depth(self) -> int:
        return len(self.layers) - 1

    @property
    def vertices(self) -> tuple:
        return self.trigraph.vertices

    @property
    def n(self) -> int:
        return self.trigraph.n

    def __contains__(self, v) -> bool:
        return v in self._index

    def layer_of(self, v) -> int:
        self._check(v)
        return self._index[v][0]

    def position_of(self, v) -> int:
        self._check(v)
        return self._index[v][1]

    def parent_of(self, v):
        self._check(v)
        return self.parent[v]

    def children(self, v) -> tuple:
        self._check(v)
        return self._children[v]

    def tree_degree(self, v) -> int:
        return len(self.children(v)) + (0 if v == self.root else 1)

    def _check(self, v):
        if v not in self._index:
            raise UnknownVertexError(f"unknown vertex {v!r}")

    # -- tree queries ---------------------------------------------------

    def ancestors(self, v, include_self: bool = False) -> list:
        """Ancestors of v ordered root-first.  A node is its own ancestor
        only when include_self is set."""
        self._check(v)
        chain = []
        cur = v if include_self else self.parent[v]
        while cur is not None:
            chain.append(cur)
            cur = self.parent[cur]
        chain.reverse()
        return chain

    def is_ancestor(self, a, v) -> bool:
        """True when a is an ancestor of v (every node is its own ancestor)."""
        self._check(a)
        self._check(v)
        la = self._index[a][0]
        cur = v
        while self._index[cur][0] > la:
            cur = self.parent[cur]
        return cur == a

    def descendants(self, v) -> list:
        """Subtree of v including v, in BFS order."""
        self._check(v)
        out = [v]
        frontier = [v]
        while frontier:
            nxt = []
            for u in frontier:
                nxt.extend(self._children[u])
            out.extend(nxt)
            frontier = nxt
        return out

    def descendant_counts(self, marked: Iterable) -> dict:
        """For every vertex, how many members of `marked` sit in its subtree
        (the vertex itself included)."""
        marked = set(marked)
        for v in marked:
            self._check(v)
        counts = {}
        for layer in reversed(self.layers):
            for v in layer:
                counts[v] = (1 if v in marked else 0) + sum(
                    counts[c] for c in self._children[v]
                )
        return counts

    # -- layer queries --------------------------------------------------

    def layer_neighbors(self, v) -> tuple:
        """Vertices immediately left and right of v in its layer (or None)."""
        self._check(v)
        i, pos = self._index[v]
        layer = self.layers[i]
        left = layer[pos - 1] if pos > 0 else None
        right = layer[pos + 1] if pos + 1 < len(layer) else None
        return left, right

    def upward_neighborhood(self, u) -> list:
        """u plus its total-graph neighbors in strictly earlier layers,
        ordered by (layer, position) with u last."""
        self._check(u)
        lu = self._index[u][0]
        ups = [w for w in self.trigraph.neighbors(u) if self._index[w][0] < lu]
        ups.sort(key=lambda w: self._index[w])
        ups.append(u)
        return ups

    # -- graph views ------------------------------------------------------

    def total(self) -> Graph:
        return total_graph(self.trigraph)

    def real(self) -> Graph:
        return real_graph(self.trigraph)


class WheelPrefix(LayeredGraph):
    """Finite prefix of the inductive wheel construction."""

    def __init__(self, trigraph, layers, parent, birth: dict, t: int, variant: str):
        super().__init__(trigraph, layers, parent)
        if variant not in (STANDARD, TRIANGLE_FREE):
            raise LayerwheelError(f"unknown variant {variant!r}")
        self.birth = dict(birth)
        self.t = t
        self.variant = variant


def upward_neighborhood(w: LayeredGraph, u) -> list:
    return w.upward_neighborhood(u)


def boundary_siblings(w: LayeredGraph, u) -> tuple:
    """Layer neighbors flanking u's children block: the vertex immediately
    left of the leftmost child and the one immediately right of the
    rightmost child (None where the block touches a layer end)."""
    kids = w.children(u)
    if not kids:
        raise PreconditionError(f"{u!r} has no built children")
    positions = sorted(w.position_of(c) for c in kids)
    if positions != list(range(positions[0], positions[0] + len(positions))):
        raise LayerwheelError(f"children of {u!r} are not consecutive in their layer")
    layer = w.layers[w.layer_of(u) + 1]
    lo, hi = positions[0], positions[-1]
    left = layer[lo - 1] if lo > 0 else None
    right = layer[hi + 1] if hi + 1 < len(layer) else None
    return left, right


def _red_cliques(adjacency_type, ground: list, t: int) -> list[frozenset]:
    """Subsets of `ground` of size <= t that are pairwise red."""
    out = []
    n = len(ground)
    for mask in range(1 << n):
        members = [ground[i] for i in range(n) if mask >> i & 1]
        if len(members) > t:
            continue
        ok = all(
            adjacency_type(a, b) == "red"
            for i, a in enumerate(members)
            for b in members[i + 1 :]
        )
        if ok:
            out.append(frozenset(members))
    return out


def _build(t: int, depth: int, variant: str, cap: int) -> WheelPrefix:
    if t < 1:
        raise PreconditionError("t must be at least 1")
    if depth < 0:
        raise PreconditionError("depth must be non-negative")

    root = "0.0"
    layers = [[root]]
    parent = {root: None}
    birth = {}
    black: list[tuple] = []
    red: list[tuple] = []
    # adjacency accumulated so far, for red-clique checks in the variant
    adj: dict = {root: {}}
    index = {root: (0, 0)}
    total = 1

    def adjacency_type(a, b) -> str:
        return adj[a].get(b, "none")

    for i in range(depth):
        new_layer: list = []
        for u in layers[i]:
            # upward ground set: birth cross targets plus u itself
            spec = birth.get(u)
            ground = sorted(
                (spec.B | spec.R) if spec else (),
                key=lambda w: index[w],
            )
            ground.append(u)
            if variant == TRIANGLE_FREE:
                cliques = _red_cliques(adjacency_type, ground, t)
                specs = enumerate_children(ground, t, variant, cliques, parent=u)
            else:
                specs = enumerate_children(ground, t, parent=u)
            for sp in specs:
                total += 1
                if total > cap:
                    raise BudgetExceededError(
                        f"vertex budget {cap} exceeded while building layer {i + 1}"
                    )
                v = f"{i + 1}.{len(new_layer)}"
                if new_layer:
                    left = new_layer[-1]
                    black.append((left, v))
                    adj[left][v] = "black"
                    adj.setdefault(v, {})[left] = "black"
                adj.setdefault(v, {})
                for b in sp.B:
                    black.append((b, v))
                    adj[b][v] = "black"
                    adj[v][b] = "black"
                for r in sp.R:
                    red.append((r, v))
                    adj[r][v] = "red"
                    adj[v][r] = "red"
                new_layer.append(v)
                parent[v] = u
                birth[v] = ChildSpec(B=sp.B, R=sp.R, parent=u, twin=sp.twin)
                index[v] = (i + 1, len(new_layer) - 1)
        layers.append(new_layer)

    vertices = [v for layer in layers for v in layer]
    trig = Trigraph(vertices, black, red)
    return WheelPrefix(trig, layers, parent, birth, t, variant)


def build_wheel(t: int, depth: int, cap: int = 10**6) -> WheelPrefix:
    """Standard wheel prefix with layers L_0 .. L_depth."""
    return _build(t, depth, STANDARD, cap)


def build_trianglefree_wheel(t: int, depth: int, cap: int = 10**6) -> WheelPrefix:
    """Triangle-free variant: black targets must form red cliques, and every
    child is immediately followed by a plain twin."""
    return _build(t, depth, TRIANGLE_FREE, cap)


# ---------------------------------------------------------------------------
# serialization

def prefix_to_obj(w: WheelPrefix) -> dict:
    birth = {}
    for v, sp in w.birth.items():
        entry = {
            "B": sorted(sp.B, key=lambda x: w._index[x]),
            "R": sorted(sp.R, key=lambda x: w._index[x]),
        }
        if sp.twin:
            entry["twin"] = True
        birth[v] = entry
    black = sorted(tuple(sorted(e, key=lambda x: w._index[x])) for e in w.trigraph.black_edges)
    red = sorted(tuple(sorted(e, key=lambda x: w._index[x])) for e in w.trigraph.red_edges)
    return {
        "t": w.t,
        "variant": w.variant,
        "layers": [list(layer) for layer in w.layers],
        "parent": {v: w.parent[v] for v in w.vertices},
        "birth": birth,
        "black": [list(e) for e in black],
        "red": [list(e) for e in red],
    }


def prefix_from_obj(obj: dict) -> WheelPrefix:
    layers = obj["layers"]
    vertices = [v for layer in layers for v in layer]
    trig = Trigraph(vertices, [tuple(e) for e in obj["black"]], [tuple(e) for e in obj["red"]])
    birth = {}
    for v, entry in obj.get("birth", {}).items():
        birth[v] = ChildSpec(
            B=frozenset(entry["B"]),
            R=frozenset(entry["R"]),
            parent=obj["parent"].get(v),
            twin=bool(entry.get("twin", False)),
        )
    return WheelPrefix(trig, layers, obj["parent"], birth, obj["t"], obj["variant"])


def prefix_to_dot(w: WheelPrefix, name: str = "wheel") -> str:
    """DOT export: one rank per layer, dotted tree edges, red edges in red."""
    lines = [f"graph {name} {{", "  rankdir=TB;"]
    for i, layer in enumerate(w.layers):
        row = " ".join(f'"{v}";' for v in layer)
        lines.append(f"  {{ rank=same; {row} }}")
    drawn = set()
    for v in w.vertices:
        p = w.parent[v]
        if p is None:
            continue
        e = frozenset((p, v))
        if w.trigraph.adjacency_type(p, v) == "none":
            lines.append(f'  "{p}" -- "{v}" [style=dotted, color=gray];')
            drawn.add(e)
    for u, v in sorted(tuple(sorted(e, key=lambda x: w._index[x])) for e in w.trigraph.black_edges):
        lines.append(f'  "{u}" -- "{v}";')
    for u, v in sorted(tuple(sorted(e, key=lambda x: w._index[x])) for e in w.trigraph.red_edges):
        lines.append(f'  "{u}" -- "{v}" [color=red];')
    lines.append("}")
    return "\n".join(lines) + "\n"
