"""Balanced separators and the recursive tree decomposition they drive.

The separator around a balanced vertex u is the trace of three upward
neighborhoods and two downward wall paths on the current part.  Removing it
leaves components at most an alpha fraction of the part, so accumulating
separators along the recursion gives bags of logarithmic depth.  The module
also houses the closed-form bound evaluators, the greedy h-free layer
selection for high-girth hosts, and the synthetic fixtures that exercise it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .branchsearch import (
    EMBEDDING,
    PREFIX_EXHAUSTED,
    bounded_branch_search,
    hfree_check,
    min_branch_hits,
)
from .chordal import chordal_complete, tree_representation
from .core import (
    Graph,
    PreconditionError,
    PrefixExhaustedError,
    TreeDecomposition,
    Trigraph,
    connected_components,
    induced_subgraph,
)
from .oracles import LayerwheelInternal, exact_treewidth, girth, verify_tree_decomposition
from .wheels import (
    STANDARD,
    LayeredGraph,
    WheelPrefix,
    boundary_siblings,
    max_children_bound,
)

MIN_HITS = "min_hits"
BBP = "bbp"

BASE_CASE_SIZE = 8


def balance_fraction(t: int) -> float:
    """Component-size fraction guaranteed by the bounded-variant separator."""
    return 1.0 - 1.0 / (8 * 3 ** (t + 1))


def _resolve_t(w, t: Optional[int]) -> int:
    if t is not None:
        return t
    if isinstance(w, WheelPrefix):
        return w.t
    raise PreconditionError("t is required for a host that is not a wheel prefix")


def find_balanced_vertex(w: LayeredGraph, x, t: Optional[int] = None):
    """First layer in which every vertex has at most n/4 marked descendants,
    then the maximum-count vertex there (leftmost on ties).

    The previous layer holds a vertex above n/4, so the winner's count is at
    least (n/4 - 1) divided by the children bound, hence >= n/(8*3^(t+1)).
    """
    t = _resolve_t(w, t)
    x = set(x)
    n = len(x)
    if n < BASE_CASE_SIZE:
        raise PreconditionError(f"need at least {BASE_CASE_SIZE} marked vertices, got {n}")
    counts = w.descendant_counts(x)
    bound = max_children_bound(t, getattr(w, "variant", STANDARD))
    for layer in w.layers:
        if all(4 * counts[v] <= n for v in layer):
            u = max(layer, key=lambda v: counts[v])
            assert 8 * bound * counts[u] >= n, "balanced-vertex count window violated"
            return u
    raise LayerwheelInternal("no layer had all descendant counts at or below n/4")


@dataclass(frozen=True)
class BalancedSplit:
    """Outcome of the unbounded-degree walk: either u itself is balanced
    (u_plus is None) or the children strictly between u's leftmost child and
    u_plus carry between n/16 and n/8 of the marked weight."""

    u: object
    u_plus: object = None


def find_balanced_split(w: LayeredGraph, x) -> BalancedSplit:
    """Walk from the root toward heavy children; stop when the current count
    drops below n/4 or no single child carries n/16."""
    x = set(x)
    n = len(x)
    if n < BASE_CASE_SIZE:
        raise PreconditionError(f"need at least {BASE_CASE_SIZE} marked vertices, got {n}")
    counts = w.descendant_counts(x)
    u = w.root
    while True:
        if 4 * counts[u] < n:
            return BalancedSplit(u=u)
        kids = w.children(u)
        heavy = max(kids, key=lambda c: counts[c], default=None)
        if heavy is None or 16 * counts[heavy] < n:
            break
        u = heavy
    kids = w.children(u)
    total = 0
    for idx in range(1, len(kids)):
        total += counts[kids[idx]]
        if 16 * total >= n:
            assert 8 * total <= n, "children block overshot n/8"
            if idx + 1 >= len(kids):
                raise LayerwheelInternal("children block consumed the last child")
            return BalancedSplit(u=u, u_plus=kids[idx + 1])
    raise LayerwheelInternal("children weights never reached n/16 despite a heavy parent")


@dataclass(frozen=True)
class SeparatorCertificate:
    separator: frozenset
    side_below: frozenset
    balance: float
    provenance: dict

    @property
    def size(self) -> int:
        return len(self.separator)


def _wall_path(w, x, start, path_source, pattern_rep):
    if start is None:
        return ()
    if path_source == MIN_HITS:
        _, path = min_branch_hits(w, x, start)
        return tuple(path)
    if path_source != BBP:
        raise PreconditionError(f"unknown path source {path_source!r}")
    if pattern_rep is None:
        raise PreconditionError("bbp path source needs a pattern representation")
    result = bounded_branch_search(w, pattern_rep, x, start)
    if result.verdict == PREFIX_EXHAUSTED:
        raise PrefixExhaustedError(f"branch search below {start!r} ran out of layers")
    if result.verdict == EMBEDDING:
        raise LayerwheelInternal(
            "branch search embedded the pattern inside a supposedly pattern-free part"
        )
    return result.path


def build_separator(
    w: LayeredGraph,
    x,
    target,
    path_source: str = MIN_HITS,
    pattern_rep=None,
    hsize: Optional[int] = None,
    t: Optional[int] = None,
) -> SeparatorCertificate:
    """Assemble and verify the separator around a balanced target.

    A plain vertex target or a light BalancedSplit fences the whole subtree
    of u: upward neighborhoods of u and the two boundary siblings flanking
    its children block, plus wall paths descending from those siblings.  A
    BalancedSplit carrying a children block instead walls off the leftmost
    child and u_plus, fencing the children strictly between them.  Wall
    vertices and neighborhood members count only when they lie in x.  When
    hsize is given the size law |S| <= 3t + 2*hsize + 1 is enforced.
    """
    t = _resolve_t(w, t)
    x = set(x)
    n = len(x)
    if n == 0:
        raise PreconditionError("empty part")

    if isinstance(target, BalancedSplit) and target.u_plus is not None:
        # children-block case: walls start at the leftmost child and at
        # u_plus, fencing the children strictly between them
        u = target.u
        balance = 15.0 / 16.0
        kids = w.children(u)
        if target.u_plus not in kids:
            raise PreconditionError("u_plus is not a child of u")
        cut = kids.index(target.u_plus)
        left, right = kids[0], target.u_plus
        below_roots = list(kids[1:cut])
        u_minus, u_plus = left, right
        anchors = [u]
    else:
        # light-vertex case: fence the whole subtree of u between the
        # boundary siblings of its children block
        if isinstance(target, BalancedSplit):
            u = target.u
            balance = 15.0 / 16.0
        else:
            u = target
            balance = balance_fraction(t)
        kids = w.children(u)
        if kids:
            u_minus, u_plus = boundary_siblings(w, u)
        else:
            u_minus = u_plus = None
        left, right = u_minus, u_plus
        anchors = [u] + [v for v in (u_minus, u_plus) if v is not None]
        below_roots = list(kids)

    separator: set = set()
    for a in anchors:
        separator.update(w.upward_neighborhood(a))
    paths = {}
    for name, start in (("left", left), ("right", right)):
        path = _wall_path(w, x, start, path_source, pattern_rep)
        paths[name] = path
        separator.update(path)
    separator &= x

    if hsize is not None:
        size_bound = 3 * t + 2 * hsize + 1
        if len(separator) > size_bound:
            raise LayerwheelInternal(
                f"separator has {len(separator)} vertices, law allows {size_bound}"
            )

    below_seed: set = set()
    for c in below_roots:
        below_seed.update(w.descendants(c))
    if isinstance(target, BalancedSplit) and target.u_plus is None:
        below_seed.add(u)

    host = induced_subgraph(w.total(), x - separator)
    below: set = set()
    rest: set = set()
    for comp in connected_components(host):
        if below_seed.intersection(comp):
            below.update(comp)
        else:
            rest.update(comp)
    if len(below) > balance * n or len(rest) > balance * n:
        raise LayerwheelInternal(
            f"balance law violated: sides {len(below)}/{len(rest)} of {n} "
            f"exceed {balance:.4f}"
        )

    return SeparatorCertificate(
        separator=frozenset(separator),
        side_below=frozenset(below),
        balance=balance,
        provenance={
            "u": u,
            "u_minus": u_minus,
            "u_plus": u_plus,
            "path_source": path_source,
            "paths": paths,
            "part_size": n,
        },
    )


@dataclass
class TraceNode:
    part_size: int
    bag_name: str
    certificate: Optional[SeparatorCertificate] = None
    children: list = field(default_factory=list)


@dataclass
class DecompositionTrace:
    root: TraceNode
    decomposition: TreeDecomposition
    width: int
    bounds: dict
    certificates: list


def constructive_width_bound(t: int, hsize: int, n: int) -> int:
    """Bag-size bound of the recursion: per level one separator of size at
    most 3t + 2*hsize + 1 accumulates, and levels stop once parts drop
    below the base-case size."""
    alpha = balance_fraction(t)
    levels = math.ceil(math.log(max(n, BASE_CASE_SIZE) / 7) / math.log(1 / alpha)) + 1
    return (3 * t + 2 * hsize + 1) * levels + 7


def decompose(
    w: WheelPrefix,
    x,
    h: Graph,
    t: int,
    path_source: str = MIN_HITS,
) -> DecompositionTrace:
    """Recursive balanced-separator tree decomposition of the real graph
    restricted to x, which must be h-free with tw(h) <= t."""
    x = set(x)
    n = len(x)
    if n == 0:
        raise PreconditionError("empty vertex subset")
    width_h, _ = exact_treewidth(h)
    if width_h > t:
        raise PreconditionError(f"pattern treewidth {width_h} exceeds t = {t}")
    real_host = induced_subgraph(w.real(), x)
    if hfree_check(real_host, h, cap=max(10, h.n)) is not None:
        raise PreconditionError("subset is not pattern-free")

    pattern_rep = None
    if path_source == BBP:
        pattern_rep = tree_representation(chordal_complete(h, t))

    alpha = balance_fraction(t)
    bound = constructive_width_bound(t, h.n, n)

    bags: dict = {}
    links: list = []
    certificates: list = []
    counter = 0

    def fresh_name() -> str:
        nonlocal counter
        name = f"n{counter}"
        counter += 1
        return name

    root_trace = TraceNode(part_size=n, bag_name=fresh_name())
    stack = [(frozenset(x), frozenset(), root_trace)]
    while stack:
        part, acc, node = stack.pop()
        if len(part) < BASE_CASE_SIZE:
            bags[node.bag_name] = acc | part
            continue
        u = find_balanced_vertex(w, part, t)
        cert = build_separator(
            w, part, u, path_source=path_source, pattern_rep=pattern_rep,
            hsize=h.n, t=t,
        )
        certificates.append(cert)
        sep = cert.separator
        remainder = induced_subgraph(w.total(), part - sep)
        components = connected_components(remainder)
        if not sep and len(components) == 1:
            # the accumulated set stabilized and the part will not split
            bags[node.bag_name] = acc | part
            continue
        bags[node.bag_name] = acc | sep
        new_acc = acc | sep
        for comp in components:
            assert len(comp) <= alpha * len(part), "component exceeds the balance law"
            child = TraceNode(part_size=len(comp), bag_name=fresh_name())
            node.children.append(child)
            links.append((node.bag_name, child.bag_name))
            stack.append((frozenset(comp), new_acc, child))

    td = TreeDecomposition(bags, links)
    check = verify_tree_decomposition(real_host, td)
    if not check:
        raise LayerwheelInternal(f"decomposition failed verification: {check}")
    if td.width > bound:
        raise LayerwheelInternal(
            f"measured width {td.width} exceeds the constructive bound {bound}"
        )
    ratio = math.log(2 / 3) / math.log(alpha)
    bounds = {
        "alpha": alpha,
        "separator_size": 3 * t + 2 * h.n + 1,
        "constructive_width": bound,
        "lemma_width": 15 * ratio * (3 * t + 2 * h.n + 1),
    }
    return DecompositionTrace(
        root=root_trace,
        decomposition=td,
        width=td.width,
        bounds=bounds,
        certificates=certificates,
    )


@dataclass(frozen=True)
class BoundsReport:
    lemma_main: float
    small_tw_bbp: float
    lw_log_tw_ub: float
    lw_log_tw_lb: float


def theoretical_bounds(t: int, hsize: int, n: int, d: int, h_branch: int) -> BoundsReport:
    """Closed-form bound values: the balanced-separator width bound, its
    specialization to bounded-branch hosts, the log-n width bound, and the
    degree-based lower bound (log terms base 2)."""
    if min(t, hsize, n, h_branch) < 1:
        raise PreconditionError("parameters must be positive")
    if d <= 1:
        raise PreconditionError("the lower bound needs branching degree d >= 2")
    alpha = balance_fraction(t)
    ratio_alpha = math.log(2 / 3) / math.log(alpha)
    ratio16 = math.log(2 / 3) / math.log(15 / 16)
    return BoundsReport(
        lemma_main=15 * ratio_alpha * (3 * t + 2 * hsize + 1),
        small_tw_bbp=15 * ratio16 * (3 * (t + 1) + 2 * h_branch),
        lw_log_tw_ub=15 * ratio16 * (3 * (t + 1) + 2 * h_branch * math.log2(n)),
        lw_log_tw_lb=math.log2(n) / math.log2(d) - 1,
    )


# ---------------------------------------------------------------------------
# high-girth greedy layer selection

def _check_proper(w: LayeredGraph, g: Graph) -> None:
    depth = w.depth
    hit = set()
    for e in g.edges:
        a, b = tuple(e)
        ia, ib = w.layer_of(a), w.layer_of(b)
        if ia != ib:
            hit.add((min(ia, ib), max(ia, ib)))
    for i in range(depth + 1):
        for j in range(i + 1, depth + 1):
            if (i, j) not in hit:
                raise PreconditionError(f"no edge between layers {i} and {j}")


def select_hfree_layers(
    w: LayeredGraph,
    h: Graph,
    k: int,
    cap: Optional[int] = None,
    deadline: Optional[float] = None,
) -> list[int]:
    """Greedy layer selection on a girth->=5 proper host: start with the root
    layer, then repeatedly add the smallest later layer keeping the union
    h-free."""
    if k < 1:
        raise PreconditionError("k must be at least 1")
    real = w.real()
    host_girth = girth(real)
    if host_girth < 5:
        raise PreconditionError(f"host girth {host_girth} < 5")
    pattern_girth = girth(h)
    if pattern_girth < 5:
        raise PreconditionError(f"pattern girth {pattern_girth} < 5")
    min_degree = min((len(h.neighbors(v)) for v in h.vertices), default=0)
    if min_degree < 4:
        raise PreconditionError(f"pattern minimum degree {min_degree} < 4")
    _check_proper(w, real)

    cap = cap if cap is not None else max(10, h.n)
    indices = [0]
    union = list(w.layers[0])
    if hfree_check(induced_subgraph(real, union), h, cap=cap, deadline=deadline) is not None:
        raise LayerwheelInternal("root layer alone is not h-free")
    while len(indices) < k:
        accepted = None
        for j in range(indices[-1] + 1, w.depth + 1):
            candidate = union + list(w.layers[j])
            found = hfree_check(
                induced_subgraph(real, candidate), h, cap=cap, deadline=deadline
            )
            if found is None:
                accepted = j
                break
        if accepted is None:
            raise PrefixExhaustedError(
                f"no h-free extension of {indices} within depth {w.depth}"
            )
        indices.append(accepted)
        union += list(w.layers[accepted])
    return indices


# ---------------------------------------------------------------------------
# synthetic fixtures

def doubled_petersen() -> Graph:
    """4-regular girth-5 graph on 20 vertices: two Petersen copies joined by
    a matching chosen so that no edge maps onto an edge."""
    sigma = (9, 1, 5, 2, 8, 3, 7, 6, 0, 4)
    edges = []
    for i in range(5):
        for base in (0, 10):
            edges.append((base + i, base + (i + 1) % 5))
            edges.append((base + i, base + i + 5))
            edges.append((base + 5 + i, base + 5 + (i + 2) % 5))
    for i in range(10):
        edges.append((i, 10 + sigma[i]))
    g = Graph(range(20), edges)
    assert girth(g) == 5 and all(len(g.neighbors(v)) == 4 for v in g.vertices)
    return g


def high_girth_host(depth: int = 5) -> LayeredGraph:
    """Layered host with girth >= 5 and an edge between every layer pair.

    Layers sit on a scaffold tree (root, 13 children, two grandchildren
    each, then chains).  Edges are the layer paths plus one cross edge per
    layer pair; cross endpoints inside a layer stay >= 3 positions apart so
    no two cross edges close a short cycle.
    """
    if not 2 <= depth <= 5:
        raise PreconditionError("fixture depth must be between 2 and 5")
    sizes = [1, 13] + [26] * (depth - 1)
    layers = []
    parent = {}
    for i, size in enumerate(sizes):
        layers.append(tuple(f"{i}.{p}" for p in range(size)))
    parent[layers[0][0]] = None
    for p, v in enumerate(layers[1]):
        parent[v] = layers[0][0]
    if depth >= 2:
        for p, v in enumerate(layers[2]):
            parent[v] = layers[1][p // 2]
    for i in range(3, depth + 1):
        for p, v in enumerate(layers[i]):
            parent[v] = layers[i - 1][p]

    black = []
    for layer in layers:
        for a, b in zip(layer, layer[1:]):
            black.append((a, b))
    slot = [0] * (depth + 1)

    def endpoint(i: int) -> str:
        pos = 3 * slot[i]
        slot[i] += 1
        assert pos < len(layers[i]), "layer too narrow for its cross endpoints"
        return layers[i][pos]

    for i in range(depth + 1):
        for j in range(i + 1, depth + 1):
            a = layers[0][0] if i == 0 else endpoint(i)
            black.append((a, endpoint(j)))

    vertices = [v for layer in layers for v in layer]
    host = LayeredGraph(Trigraph(vertices, black, []), layers, parent)
    host_girth = girth(host.real())
    assert host_girth >= 5, f"fixture girth {host_girth}"
    return host
