"""Exact combinatorial oracles: treewidth, decomposition checking, brambles,
girth, clique number.

All searches are exact and deterministic.  Sizes are guarded by hard caps and
an optional cooperative deadline (seconds); exceeding either raises instead of
returning a weaker answer.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Iterable, Optional

from .core import (
    Bramble,
    CapExceededError,
    DeadlineExceededError,
    Graph,
    PreconditionError,
    TreeDecomposition,
    label_key,
)


class _Deadline:
    """Cooperative deadline, polled every few thousand steps."""

    def __init__(self, seconds: Optional[float]):
        self.limit = None if seconds is None else time.monotonic() + seconds
        self._tick = 0

    def check(self):
        if self.limit is None:
            return
        self._tick += 1
        if self._tick & 0x3FF == 0 and time.monotonic() > self.limit:
            raise DeadlineExceededError("oracle deadline exceeded")


# ---------------------------------------------------------------------------
# tree decomposition checking

@dataclass(frozen=True)
class TDCheck:
    ok: bool
    condition: Optional[str] = None
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok


def verify_tree_decomposition(g: Graph, td: TreeDecomposition) -> TDCheck:
    """Check the three decomposition conditions against g, reporting the
    first violated one with a concrete witness."""
    nodes = td.nodes
    bags = {x: td.bag(x) for x in nodes}
    vertex_set = set(g.vertices)
    for x in nodes:
        for v in bags[x]:
            if v not in vertex_set:
                return TDCheck(False, "unknown-bag-member", (x, v))

    if nodes:
        if len(td.links) != len(nodes) - 1:
            return TDCheck(False, "tree", "link count is not #nodes - 1")
        seen = {nodes[0]}
        frontier = [nodes[0]]
        link_sets = [set(l) for l in td.links]
        while frontier:
            cur = frontier.pop()
            for l in link_sets:
                if cur in l:
                    other = next(iter(l - {cur}), cur)
                    if other not in seen:
                        seen.add(other)
                        frontier.append(other)
        if len(seen) != len(nodes):
            missing = next(x for x in nodes if x not in seen)
            return TDCheck(False, "tree", missing)

    for v in g.vertices:
        if not any(v in bags[x] for x in nodes):
            return TDCheck(False, "vertex-coverage", v)

    for e in g.edges:
        u, v = tuple(e)
        if not any(u in bags[x] and v in bags[x] for x in nodes):
            return TDCheck(False, "edge-coverage", (u, v))

    adj = {x: [] for x in nodes}
    for l in td.links:
        a, b = tuple(l)
        adj[a].append(b)
        adj[b].append(a)
    for v in g.vertices:
        holding = [x for x in nodes if v in bags[x]]
        seen = {holding[0]}
        frontier = [holding[0]]
        holding_set = set(holding)
        while frontier:
            cur = frontier.pop()
            for nb in adj[cur]:
                if nb in holding_set and nb not in seen:
                    seen.add(nb)
                    frontier.append(nb)
        if len(seen) != len(holding):
            return TDCheck(False, "connected-subtree", v)

    return TDCheck(True)


# ---------------------------------------------------------------------------
# exact treewidth

def _reachable_neighbors(adj: list[int], v: int, elim: int) -> int:
    """Non-eliminated vertices joined to v via paths inside `elim`: the
    neighborhood of v once `elim` has been eliminated."""
    visited = 1 << v
    stack = [v]
    out = 0
    while stack:
        u = stack.pop()
        fresh = adj[u] & ~visited
        visited |= fresh
        out |= fresh & ~elim
        inside = fresh & elim
        while inside:
            bit = inside & -inside
            inside ^= bit
            stack.append(bit.bit_length() - 1)
    return out & ~(1 << v)


def _minfill_order(adj: list[int], n: int) -> list[int]:
    """Elimination order by repeatedly removing the vertex needing the
    fewest fill edges."""
    work = list(adj)
    alive = list(range(n))
    order = []
    while alive:
        best_v, best_fill = None, None
        for v in alive:
            nb = work[v]
            fill = 0
            rest = nb
            while rest:
                bit = rest & -rest
                rest ^= bit
                u = bit.bit_length() - 1
                fill += bin(nb & ~work[u] & ~bit).count("1")
            if best_fill is None or fill < best_fill:
                best_v, best_fill = v, fill
        v = best_v
        nb = work[v]
        rest = nb
        while rest:
            bit = rest & -rest
            rest ^= bit
            u = bit.bit_length() - 1
            work[u] = (work[u] | nb) & ~(1 << u) & ~(1 << v)
        work[v] = 0
        for u in alive:
            work[u] &= ~(1 << v)
        alive.remove(v)
        order.append(v)
    return order


def _order_width(adj: list[int], order: list[int]) -> int:
    width = 0
    elim = 0
    for v in order:
        width = max(width, bin(_reachable_neighbors(adj, v, elim)).count("1"))
        elim |= 1 << v
    return width


def _contraction_lower_bound(adj: list[int], n: int) -> int:
    """Max over contraction steps of the minimum degree (a minor degree
    lower bound on treewidth)."""
    work = list(adj)
    alive = set(range(n))
    lb = 0
    while len(alive) > 1:
        v = min(alive, key=lambda x: (bin(work[x]).count("1"), x))
        deg = bin(work[v]).count("1")
        lb = max(lb, deg)
        if deg == 0:
            alive.remove(v)
            continue
        # contract into the neighbor sharing the fewest common neighbors
        rest = work[v]
        best_u, best_common = None, None
        while rest:
            bit = rest & -rest
            rest ^= bit
            u = bit.bit_length() - 1
            common = bin(work[v] & work[u]).count("1")
            if best_common is None or common < best_common:
                best_u, best_common = u, common
        u = best_u
        work[u] = (work[u] | work[v]) & ~(1 << u) & ~(1 << v)
        nb = work[v] & ~(1 << u)
        while nb:
            bit = nb & -nb
            nb ^= bit
            x = bit.bit_length() - 1
            work[x] = (work[x] | (1 << u)) & ~(1 << v)
        work[u] &= ~(1 << v)
        for x in alive:
            work[x] &= ~(1 << v)
        alive.remove(v)
    return lb


def _td_from_order(g: Graph, labels: list, adj: list[int], order: list[int]) -> TreeDecomposition:
    n = len(order)
    bags = {}
    elim = 0
    elim_index = {}
    bag_masks = []
    for k, v in enumerate(order):
        nb = _reachable_neighbors(adj, v, elim)
        bag_masks.append(nb | (1 << v))
        elim |= 1 << v
        elim_index[v] = k
    links = []
    for k, v in enumerate(order):
        members = bag_masks[k] & ~(1 << v)
        later = [elim_index[u] for u in _bits(members) if elim_index[u] > k]
        if later:
            links.append((f"b{k}", f"b{min(later)}"))
        elif k + 1 < n:
            links.append((f"b{k}", f"b{k + 1}"))
        bags[f"b{k}"] = [labels[i] for i in _bits(bag_masks[k])]
    return TreeDecomposition(bags, links)


def _bits(mask: int):
    while mask:
        bit = mask & -mask
        mask ^= bit
        yield bit.bit_length() - 1


def exact_treewidth(
    g: Graph, cap: int = 18, deadline: Optional[float] = None
) -> tuple[int, TreeDecomposition]:
    """Exact treewidth with a verified witness decomposition.

    Branch and bound over elimination orders, memoized on the eliminated
    subset.  Graphs larger than `cap` vertices are refused.
    """
    n = g.n
    if n > cap:
        raise CapExceededError(f"exact treewidth capped at {cap} vertices, got {n}")
    if n == 0:
        return -1, TreeDecomposition({}, [])
    labels = list(g.vertices)
    index = {v: i for i, v in enumerate(labels)}
    adj = [0] * n
    for e in g.edges:
        u, v = tuple(e)
        adj[index[u]] |= 1 << index[v]
        adj[index[v]] |= 1 << index[u]

    dl = _Deadline(deadline)
    full = (1 << n) - 1

    ub_order = _minfill_order(adj, n)
    best_width = _order_width(adj, ub_order)
    best_order = list(ub_order)
    global_lb = _contraction_lower_bound(adj, n)

    memo: dict[int, int] = {}

    def dfs(elim: int, width: int, order: list[int]):
        nonlocal best_width, best_order
        dl.check()
        if width >= best_width:
            return
        if elim == full:
            best_width = width
            best_order = list(order)
            return
        prev = memo.get(elim)
        if prev is not None and prev <= width:
            return
        memo[elim] = width

        cand = []
        for v in range(n):
            if elim >> v & 1:
                continue
            nb = _reachable_neighbors(adj, v, elim)
            cand.append((bin(nb).count("1"), v, nb))
        cand.sort()

        # a simplicial vertex may always be eliminated first
        for d, v, nb in cand:
            clique = True
            rest = nb
            while rest and clique:
                bit = rest & -rest
                rest ^= bit
                u = bit.bit_length() - 1
                if nb & ~_reachable_neighbors(adj, u, elim) & ~bit:
                    clique = False
            if clique:
                order.append(v)
                dfs(elim | (1 << v), max(width, d), order)
                order.pop()
                return

        for d, v, nb in cand:
            if max(width, d) >= best_width:
                break
            order.append(v)
            dfs(elim | (1 << v), max(width, d), order)
            order.pop()

    if best_width > global_lb:
        dfs(0, 0, [])

    td = _td_from_order(g, labels, adj, best_order)
    check = verify_tree_decomposition(g, td)
    if not check:
        raise LayerwheelInternal(f"witness decomposition invalid: {check.condition}")
    if td.width != best_width:
        raise LayerwheelInternal("witness width disagrees with search result")
    return best_width, td


class LayerwheelInternal(AssertionError):
    """Internal consistency failure; a bug, never an input error."""


# ---------------------------------------------------------------------------
# brambles

def verify_bramble(g: Graph, sets: Iterable[frozenset]) -> TDCheck:
    """Each bramble set must induce a connected subgraph and every pair must
    touch (intersect or be joined by an edge)."""
    sets = [frozenset(s) for s in sets]
    vertex_set = set(g.vertices)
    for i, s in enumerate(sets):
        if not s:
            return TDCheck(False, "empty-set", i)
        if not s <= vertex_set:
            return TDCheck(False, "unknown-member", (i, next(iter(s - vertex_set))))
        start = next(iter(s))
        seen = {start}
        frontier = [start]
        while frontier:
            cur = frontier.pop()
            for nb in g.neighbors(cur):
                if nb in s and nb not in seen:
                    seen.add(nb)
                    frontier.append(nb)
        if seen != s:
            return TDCheck(False, "disconnected-set", i)
    for i, a in enumerate(sets):
        for j in range(i + 1, len(sets)):
            b = sets[j]
            if a & b:
                continue
            if not any(g.has_edge(u, v) for u in a for v in b):
                return TDCheck(False, "non-touching-pair", (i, j))
    return TDCheck(True)


def layer_bramble(w, i: int) -> Bramble:
    """Bramble of the real graph on layers 0..i: the layers themselves.

    Verified before returning: each layer is connected along its path and
    every layer pair is joined by an edge.
    """
    if not 0 <= i <= w.depth:
        raise PreconditionError(f"layer index {i} outside built range 0..{w.depth}")
    keep = [v for layer in w.layers[: i + 1] for v in layer]
    from .core import induced_subgraph

    host = induced_subgraph(w.real(), keep)
    sets = [frozenset(layer) for layer in w.layers[: i + 1]]
    check = verify_bramble(host, sets)
    if not check:
        raise PreconditionError(
            f"layers 0..{i} do not form a bramble: {check.condition} {check.witness!r}"
        )
    return Bramble(sets)


def bramble_order(
    bramble: Bramble,
    element_cap: int = 25,
    set_cap: int = 20,
    deadline: Optional[float] = None,
) -> int:
    """Order of a bramble: minimum size of a hitting set of its sets."""
    sets = [frozenset(s) for s in bramble]
    if not sets:
        return 0
    elements = sorted(set().union(*sets), key=label_key)
    if len(sets) > set_cap and len(elements) > element_cap:
        raise CapExceededError(
            f"bramble with {len(sets)} sets over {len(elements)} elements "
            f"exceeds caps ({set_cap} sets / {element_cap} elements)"
        )

    if all(not (sets[i] & sets[j]) for i in range(len(sets)) for j in range(i + 1, len(sets))):
        return len(sets)

    hit_mask = {}
    for e in elements:
        m = 0
        for k, s in enumerate(sets):
            if e in s:
                m |= 1 << k
        hit_mask[e] = m
    full = (1 << len(sets)) - 1
    dl = _Deadline(deadline)
    best = len(sets)
    memo: dict[int, int] = {}

    def disjoint_lb(covered: int) -> int:
        taken: list[frozenset] = []
        for k, s in enumerate(sets):
            if covered >> k & 1:
                continue
            if all(not (s & t) for t in taken):
                taken.append(s)
        return len(taken)

    def dfs(covered: int, count: int):
        nonlocal best
        dl.check()
        if covered == full:
            best = min(best, count)
            return
        if count + disjoint_lb(covered) >= best:
            return
        prev = memo.get(covered)
        if prev is not None and prev <= count:
            return
        memo[covered] = count
        k = min(
            (k for k in range(len(sets)) if not covered >> k & 1),
            key=lambda k: len(sets[k]),
        )
        for e in sorted(sets[k], key=label_key):
            dfs(covered | hit_mask[e], count + 1)

    dfs(0, 0)
    return best


# ---------------------------------------------------------------------------
# girth and cliques

def girth(g: Graph) -> float:
    """Length of a shortest cycle, math.inf for forests."""
    best = math.inf
    for root in g.vertices:
        dist = {root: 0}
        parent = {root: None}
        frontier = [root]
        while frontier and 2 * dist[frontier[0]] + 1 < best:
            nxt = []
            for u in frontier:
                for v in g.neighbors(u):
                    if v not in dist:
                        dist[v] = dist[u] + 1
                        parent[v] = u
                        nxt.append(v)
                    elif parent[u] != v and parent[v] != u:
                        best = min(best, dist[u] + dist[v] + 1)
            frontier = nxt
        if best == 3:
            return 3
    return best


def clique_number(g: Graph, deadline: Optional[float] = None) -> int:
    """Maximum clique size, branch and bound with a greedy coloring bound."""
    n = g.n
    if n == 0:
        return 0
    labels = sorted(g.vertices, key=lambda v: (-g.degree(v), label_key(v)))
    index = {v: i for i, v in enumerate(labels)}
    adj = [0] * n
    for e in g.edges:
        u, v = tuple(e)
        adj[index[u]] |= 1 << index[v]
        adj[index[v]] |= 1 << index[u]
    dl = _Deadline(deadline)
    best = 0

    def expand(size: int, allowed: int):
        nonlocal best
        dl.check()
        if allowed == 0:
            best = max(best, size)
            return
        order: list[int] = []
        bounds: list[int] = []
        uncolored = allowed
        color = 0
        while uncolored:
            color += 1
            avail = uncolored
            while avail:
                bit = avail & -avail
                v = bit.bit_length() - 1
                order.append(v)
                bounds.append(color)
                uncolored ^= bit
                avail = (avail ^ bit) & ~adj[v]
        for i in range(len(order) - 1, -1, -1):
            if size + bounds[i] <= best:
                return
            v = order[i]
            expand(size + 1, allowed & adj[v])
            allowed &= ~(1 << v)

    expand(0, (1 << n) - 1)
    return best
