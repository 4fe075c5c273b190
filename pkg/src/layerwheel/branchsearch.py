"""Branch searches inside wheel prefixes.

bounded_branch_search realizes the dichotomy: below any node, either an
obstruction pattern embeds along the branches, or some downward path meets
few marked vertices.  min_branch_hits finds the true minimum of marked
vertices over downward paths by dynamic programming.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .core import (
    CapExceededError,
    Graph,
    PreconditionError,
    Trigraph,
    UnknownVertexError,
    label_key,
    total_graph,
    real_graph,
)
from .chordal import RootedTree, validate_representation
from .oracles import LayerwheelInternal, _Deadline, clique_number
from .wheels import WheelPrefix, TRIANGLE_FREE

EMBEDDING = "embedding"
PATH = "path"
PREFIX_EXHAUSTED = "prefix-exhausted"


@dataclass(frozen=True)
class BranchSearchResult:
    verdict: str
    embedding: Optional[dict] = None
    subtree: Optional[frozenset] = None
    path: Optional[tuple] = None
    hits: Optional[tuple] = None

    @property
    def hit_count(self) -> Optional[int]:
        return None if self.hits is None else len(self.hits)


# ---------------------------------------------------------------------------
# induced sub(tri)graph isomorphism

def _type_fn(g):
    if isinstance(g, Trigraph):
        return g.adjacency_type
    if isinstance(g, Graph):
        return lambda u, v: "black" if g.has_edge(u, v) else "none"
    raise PreconditionError("expected Graph or Trigraph")


def hfree_check(g, h, cap: int = 10, deadline: Optional[float] = None) -> Optional[dict]:
    """Search for an induced, adjacency-type-preserving copy of h in g.

    Returns None when g is h-free, otherwise a mapping from h vertices to g
    vertices.  Pattern graphs larger than `cap` are refused; raise the cap
    knowingly for big patterns.
    """
    if isinstance(g, Trigraph) != isinstance(h, Trigraph):
        raise PreconditionError("host and pattern must both be graphs or both trigraphs")
    if h.n > cap:
        raise CapExceededError(f"pattern has {h.n} vertices, cap is {cap}")
    if h.n == 0:
        return {}
    if h.n > g.n:
        return None
    tg, th = _type_fn(g), _type_fn(h)
    dl = _Deadline(deadline)
    gdeg = {v: len(g.neighbors(v)) for v in g.vertices}
    hdeg = {v: len(h.neighbors(v)) for v in h.vertices}

    # most-constrained-first: maximize placed neighbors, then degree
    first_h = min(h.vertices, key=lambda v: (-hdeg[v], label_key(v)))
    order = [first_h]
    placed = {first_h}
    while len(order) < h.n:
        nxt = min(
            (v for v in h.vertices if v not in placed),
            key=lambda v: (
                -sum(1 for u in h.neighbors(v) if u in placed),
                -hdeg[v],
                label_key(v),
            ),
        )
        order.append(nxt)
        placed.add(nxt)

    gverts = sorted(g.vertices, key=label_key)

    image: dict = {}
    used: set = set()

    def backtrack(i: int) -> bool:
        dl.check()
        if i == len(order):
            return True
        hv = order[i]
        for gv in gverts:
            if gv in used or gdeg[gv] < hdeg[hv]:
                continue
            ok = True
            for hu, gu in image.items():
                if th(hv, hu) != tg(gv, gu):
                    ok = False
                    break
            if ok:
                image[hv] = gv
                used.add(gv)
                if backtrack(i + 1):
                    return True
                del image[hv]
                used.discard(gv)
        return False

    if backtrack(0):
        return dict(image)
    return None


# ---------------------------------------------------------------------------
# minimum-hit downward paths

def min_branch_hits(w, x, v) -> tuple[int, list]:
    """Minimum number of `x` vertices on a maximal downward path from v,
    with the leftmost optimal path as witness."""
    w._check(v)
    x = set(x)
    for m in x:
        w._check(m)
    best: dict = {}
    for layer in reversed(w.layers):
        for node in layer:
            kids = w.children(node)
            below = min((best[c] for c in kids), default=0)
            best[node] = (1 if node in x else 0) + below
    path = [v]
    cur = v
    while w.children(cur):
        cur = min(w.children(cur), key=lambda c: (best[c], w.position_of(c)))
        path.append(cur)
    return best[v], path


# ---------------------------------------------------------------------------
# bounded branch search

def _peel_order(tree: RootedTree) -> list:
    """Level order: every prefix induces a subtree and each new vertex is a
    leaf of it."""
    order = [tree.root]
    i = 0
    while i < len(order):
        order.extend(tree.children(order[i]))
        i += 1
    return order


def _tree_path_down(w, top, bottom) -> list:
    """Vertices of the tree path from `top` down to its descendant `bottom`."""
    rev = [bottom]
    cur = bottom
    while cur != top:
        cur = w.parent_of(cur)
        if cur is None:
            raise LayerwheelInternal(f"{top!r} is not an ancestor of {bottom!r}")
        rev.append(cur)
    rev.reverse()
    return rev


def bounded_branch_search(w: WheelPrefix, hrep: RootedTree, x, u) -> BranchSearchResult:
    """Either embed hrep's trigraph below u along the branches, or produce a
    downward path from u meeting x fewer times than the pattern has vertices.

    hrep must be a tree representation carrying its trigraph (as produced by
    tree_representation), with total clique number at most t+1.
    """
    h: Optional[Trigraph] = getattr(hrep, "trigraph", None)
    if h is None:
        raise PreconditionError("hrep must carry its trigraph (use tree_representation)")
    check = validate_representation(h, hrep)
    if not check:
        raise PreconditionError(f"invalid representation: {check.condition}")
    if clique_number(total_graph(h)) > w.t + 1:
        raise PreconditionError(
            f"total clique number of the pattern exceeds t+1 = {w.t + 1}"
        )
    w._check(u)
    x = set(x)
    for m in x:
        w._check(m)

    peel = _peel_order(hrep)
    images: dict = {}
    placed: set = set()
    subtree: set = set()

    # base: a minimum-depth descendant of u in x, leftmost on its layer
    first = None
    frontier = [u]
    while frontier and first is None:
        for cand in frontier:
            if cand in x:
                first = cand
                break
        frontier = [c for node in frontier for c in w.children(node)]
    if first is None:
        path = [u]
        cur = u
        while w.children(cur):
            cur = w.children(cur)[0]
            path.append(cur)
        return BranchSearchResult(verdict=PATH, path=tuple(path), hits=())

    images[peel[0]] = first
    placed.add(first)
    subtree.update(_tree_path_down(w, u, first))

    for k in range(1, len(peel)):
        hv = peel[k]
        hparent = hrep.parent_of(hv)
        anchor = images[hparent]
        targets = [(images[a], h.adjacency_type(hv, a)) for a in hrep.ancestors(hv)]

        walk = [anchor]
        cur = anchor
        hit = None
        while True:
            nxt = None
            for c in w.children(cur):
                if all(w.trigraph.adjacency_type(c, img) == typ for img, typ in targets):
                    nxt = c
                    break
            if nxt is None:
                if w.children(cur):
                    raise LayerwheelInternal(
                        f"no child of {cur!r} matches the required profile"
                    )
                break  # bottom layer reached without a hit
            if nxt in placed:
                raise LayerwheelInternal(f"walk revisited an image {nxt!r}")
            walk.append(nxt)
            if nxt in x:
                hit = nxt
                break
            cur = nxt

        if hit is None:
            upper = _tree_path_down(w, u, anchor)
            path = upper + walk[1:]
            hits = tuple(v for v in path if v in x)
            # k images are placed, so at most k hits along the upper part
            if len(hits) > k:
                raise LayerwheelInternal("path outcome exceeds its hit bound")
            return BranchSearchResult(verdict=PATH, path=tuple(path), hits=hits)

        images[hv] = hit
        placed.add(hit)
        subtree.update(walk)

    _validate_embedding(w, h, hrep, images, subtree, x)
    return BranchSearchResult(
        verdict=EMBEDDING, embedding=dict(images), subtree=frozenset(subtree)
    )


def _validate_embedding(w, h, hrep, images, subtree, x):
    verts = list(h.vertices)
    for i, a in enumerate(verts):
        for b in verts[i + 1 :]:
            want = h.adjacency_type(a, b)
            got = w.trigraph.adjacency_type(images[a], images[b])
            if want != got:
                raise LayerwheelInternal(
                    f"embedding breaks adjacency of ({a!r}, {b!r}): {want} vs {got}"
                )
    for a in verts:
        for b in verts:
            if a == b:
                continue
            if hrep.is_ancestor(a, b) != w.is_ancestor(images[a], images[b]):
                raise LayerwheelInternal(
                    f"embedding breaks ancestry of ({a!r}, {b!r})"
                )
    on_tree = set(images.values())
    stray = (set(subtree) & set(x)) - on_tree
    if stray:
        raise LayerwheelInternal(f"connector vertices meet x: {sorted(stray, key=str)!r}")
