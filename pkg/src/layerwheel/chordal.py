"""Chordal trigraphs and their tree representations.

A tree representation places the vertices of a trigraph whose total graph is
chordal on a rooted tree so that upward neighborhoods are cliques, every
neighborhood is confined to the subtree plus the parent's closed upward
neighborhood, and siblings differ toward some common ancestor.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import (
    Graph,
    PreconditionError,
    Trigraph,
    induced_subgraph,
    label_key,
    total_graph,
)
from .oracles import LayerwheelInternal, exact_treewidth, clique_number


@dataclass(frozen=True)
class RepCheck:
    ok: bool
    condition: Optional[str] = None
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok


class RootedTree:
    """Mutable rooted tree with insertion-ordered children."""

    def __init__(self, root):
        self.root = root
        self.parent = {root: None}
        self._children = {root: []}

    @property
    def vertices(self) -> list:
        return list(self.parent)

    def __contains__(self, v) -> bool:
        return v in self.parent

    def add_child(self, parent, v):
        if parent not in self.parent:
            raise PreconditionError(f"unknown parent {parent!r}")
        if v in self.parent:
            raise PreconditionError(f"vertex {v!r} already placed")
        self.parent[v] = parent
        self._children[v] = []
        self._children[parent].append(v)

    def children(self, v) -> list:
        return list(self._children[v])

    def parent_of(self, v):
        return self.parent[v]

    def ancestors(self, v, include_self: bool = False) -> list:
        """Root-first chain of ancestors."""
        chain = []
        cur = v if include_self else self.parent[v]
        while cur is not None:
            chain.append(cur)
            cur = self.parent[cur]
        chain.reverse()
        return chain

    def is_ancestor(self, a, v) -> bool:
        cur = v
        while cur is not None:
            if cur == a:
                return True
            cur = self.parent[cur]
        return False

    def depth_of(self, v) -> int:
        d = 0
        cur = self.parent[v]
        while cur is not None:
            d += 1
            cur = self.parent[cur]
        return d

    def descendants(self, v) -> list:
        """Subtree of v including v, leftmost-first DFS order."""
        out = []
        stack = [v]
        while stack:
            cur = stack.pop()
            out.append(cur)
            stack.extend(reversed(self._children[cur]))
        return out

    def leaves(self) -> list:
        return [v for v in self.parent if not self._children[v]]


# ---------------------------------------------------------------------------
# chordality

def maximum_cardinality_search(g: Graph) -> list:
    """MCS order: repeatedly pick the vertex with most chosen neighbors."""
    weight = {v: 0 for v in g.vertices}
    chosen: set = set()
    order = []
    for _ in range(g.n):
        v = min(
            (u for u in g.vertices if u not in chosen),
            key=lambda u: (-weight[u], label_key(u)),
        )
        order.append(v)
        chosen.add(v)
        for nb in g.neighbors(v):
            if nb not in chosen:
                weight[nb] += 1
    return order


def _bfs_path(g: Graph, a, b, blocked: set) -> Optional[list]:
    if a in blocked or b in blocked:
        return None
    prev = {a: None}
    frontier = [a]
    while frontier:
        nxt = []
        for u in frontier:
            for v in sorted(g.neighbors(u), key=label_key):
                if v in blocked or v in prev:
                    continue
                prev[v] = u
                if v == b:
                    path = [v]
                    while prev[path[-1]] is not None:
                        path.append(prev[path[-1]])
                    path.reverse()
                    return path
                nxt.append(v)
        frontier = nxt
    return None


def find_hole(g: Graph) -> Optional[list]:
    """Some induced cycle of length at least 4, as an ordered vertex list."""
    for v in sorted(g.vertices, key=label_key):
        nbrs = sorted(g.neighbors(v), key=label_key)
        blocked_base = set(nbrs) | {v}
        for i, a in enumerate(nbrs):
            for b in nbrs[i + 1 :]:
                if g.has_edge(a, b):
                    continue
                path = _bfs_path(g, a, b, blocked_base - {a, b})
                if path:
                    return [v] + path
    return None


def is_chordal(g: Graph) -> tuple[bool, object]:
    """(True, elimination order) or (False, hole)."""
    if g.n == 0:
        return True, []
    order = maximum_cardinality_search(g)
    rank = {v: i for i, v in enumerate(order)}
    # reversed MCS order is a perfect elimination order iff chordal:
    # earlier-chosen neighbors of each vertex must form a clique
    for v in order:
        before = [u for u in g.neighbors(v) if rank[u] < rank[v]]
        if not before:
            continue
        u = max(before, key=lambda x: rank[x])
        for wv in before:
            if wv != u and not g.has_edge(u, wv):
                hole = find_hole(g)
                if hole is None:
                    raise LayerwheelInternal("elimination check failed but no hole found")
                return False, hole
    return True, list(reversed(order))


def find_simplicial(g: Graph) -> Optional[object]:
    """Smallest-labeled vertex whose neighborhood is a clique."""
    for v in sorted(g.vertices, key=label_key):
        nbrs = list(g.neighbors(v))
        if all(
            g.has_edge(a, b) for i, a in enumerate(nbrs) for b in nbrs[i + 1 :]
        ):
            return v
    return None


# ---------------------------------------------------------------------------
# representations

def validate_representation(h: Trigraph, tree: RootedTree) -> RepCheck:
    """Check the three representation conditions of `tree` against `h`."""
    if set(tree.vertices) != set(h.vertices):
        return RepCheck(False, "vertex-set", None)
    H = total_graph(h)

    for v in tree.vertices:
        anc_nbrs = [a for a in tree.ancestors(v) if H.has_edge(a, v)]
        for i, a in enumerate(anc_nbrs):
            for b in anc_nbrs[i + 1 :]:
                if not H.has_edge(a, b):
                    return RepCheck(False, "upward-clique", (v, a, b))

    for v in tree.vertices:
        p = tree.parent_of(v)
        if p is None:
            continue
        allowed = set(tree.descendants(v))
        closed_parent = set(H.neighbors(p)) | {p}
        allowed |= set(tree.ancestors(v)) & closed_parent
        for nb in H.neighbors(v):
            if nb not in allowed:
                return RepCheck(False, "neighborhood-containment", (v, nb))

    for p in tree.vertices:
        kids = tree.children(p)
        common_anc = tree.ancestors(p, include_self=True)
        for i, a in enumerate(kids):
            for b in kids[i + 1 :]:
                if all(
                    h.adjacency_type(a, x) == h.adjacency_type(b, x)
                    for x in common_anc
                ):
                    return RepCheck(False, "sibling-condition", (a, b))

    return RepCheck(True)


def tree_representation(h: Trigraph) -> RootedTree:
    """Tree representation of a trigraph with chordal total graph.

    Peels simplicial vertices (smallest label first), then re-inserts each
    under the deepest neighbor, descending further while an existing branch
    matches the new vertex's adjacency profile toward its ancestors.
    """
    H = total_graph(h)
    chordal, cert = is_chordal(H)
    if not chordal:
        raise PreconditionError(f"total graph is not chordal; hole {cert!r}")
    if h.n == 0:
        raise PreconditionError("empty trigraph has no representation")

    peel = []
    remaining = H
    while remaining.n > 0:
        v = find_simplicial(remaining)
        if v is None:
            raise LayerwheelInternal("chordal graph without simplicial vertex")
        peel.append(v)
        remaining = induced_subgraph(remaining, [u for u in remaining.vertices if u != v])

    tree = RootedTree(peel[-1])
    for v in reversed(peel[:-1]):
        _insert_vertex(tree, h, H, v)

    check = validate_representation(h, tree)
    if not check:
        raise LayerwheelInternal(
            f"constructed representation violates {check.condition}: {check.witness!r}"
        )
    tree.trigraph = h  # downstream searches need the pattern alongside its tree
    return tree


def _insert_vertex(tree: RootedTree, h: Trigraph, H: Graph, v):
    present = set(tree.vertices)
    nbrs = [u for u in H.neighbors(v) if u in present]

    if not nbrs:
        # leftmost deepest leaf keeps the choice deterministic
        leaf = max(tree.leaves(), key=lambda x: tree.depth_of(x))
        deepest = tree.depth_of(leaf)
        for cand in tree.descendants(tree.root):
            if not tree.children(cand) and tree.depth_of(cand) == deepest:
                leaf = cand
                break
        tree.add_child(leaf, v)
        return

    nbrs.sort(key=lambda x: tree.depth_of(x))
    for a, b in zip(nbrs, nbrs[1:]):
        if not tree.is_ancestor(a, b):
            raise LayerwheelInternal(
                f"neighborhood of {v!r} does not lie on one branch: {a!r}, {b!r}"
            )
    u = nbrs[-1]

    def matches(w) -> bool:
        return all(
            h.adjacency_type(w, x) == h.adjacency_type(v, x)
            for x in tree.ancestors(w)
        )

    cand = [w for w in tree.children(u) if matches(w)]
    if not cand:
        tree.add_child(u, v)
        return
    if len(cand) > 1:
        raise LayerwheelInternal(
            f"sibling condition violated below {u!r}: {cand!r} both match {v!r}"
        )
    w = cand[0]
    best = w
    best_depth = tree.depth_of(w)
    for x in tree.descendants(w):
        if tree.depth_of(x) > best_depth and matches(x):
            best, best_depth = x, tree.depth_of(x)
    tree.add_child(best, v)


# ---------------------------------------------------------------------------
# completion

def chordal_complete(g: Graph, t: int) -> Trigraph:
    """Complete g into a trigraph whose total graph is chordal with clique
    number at most t+1: black the original edges, red the fill of an optimal
    tree decomposition's bags."""
    width, td = exact_treewidth(g)
    if width > t:
        raise PreconditionError(f"treewidth {width} exceeds the requested bound {t}")
    fill = set()
    for node in td.nodes:
        bag = sorted(td.bag(node), key=label_key)
        for i, a in enumerate(bag):
            for b in bag[i + 1 :]:
                fill.add(frozenset((a, b)))
    black = [tuple(e) for e in g.edges]
    red = [tuple(e) for e in fill if e not in g.edges]
    trig = Trigraph(g.vertices, black, red)

    total = total_graph(trig)
    chordal, cert = is_chordal(total)
    if not chordal:
        raise LayerwheelInternal(f"bag completion not chordal; hole {cert!r}")
    if clique_number(total) > t + 1:
        raise LayerwheelInternal("bag completion exceeds clique bound")
    return trig


# ---------------------------------------------------------------------------
# random instances for round-trip testing

def random_chordal_trigraph(rng, max_n: int = 12) -> Trigraph:
    """Random trigraph with chordal total graph: vertices arrive one at a
    time, each attached to a random sub-clique of an earlier bag, and every
    edge gets a random color."""
    n = rng.randint(1, max_n)
    bags: list[list[int]] = []
    black, red = [], []
    for v in range(n):
        if not bags or rng.random() < 0.1:
            clique: list[int] = []
        else:
            base = bags[rng.randrange(len(bags))]
            clique = [u for u in base if rng.random() < 0.6]
        for u in clique:
            (black if rng.random() < 0.5 else red).append((u, v))
        bags.append(clique + [v])
    return Trigraph(range(n), black, red)
