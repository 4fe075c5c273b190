"""Structural condition validation for layered graphs.

Each numbered condition gets a verdict: "holds", "fails" with a re-checkable
witness, or "prefix-limited" when a finite prefix can only be consistent with
the condition, never certify it.  Witnesses are concrete objects (edges,
vertex triples, runs) that the caller can re-test directly.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .core import Graph, PreconditionError, Trigraph
from .wheels import LayeredGraph, WheelPrefix, max_children_bound

HOLDS = "holds"
FAILS = "fails"
PREFIX_LIMITED = "prefix-limited"


@dataclass(frozen=True)
class ConditionVerdict:
    status: str
    witness: object = None
    detail: dict = field(default_factory=dict)


@dataclass
class AxiomReport:
    conditions: dict
    metrics: dict
    view: str

    @property
    def failed(self) -> list[str]:
        return [k for k, v in self.conditions.items() if v.status == FAILS]

    def to_obj(self) -> dict:
        conds = {}
        for key, v in self.conditions.items():
            entry = {"status": v.status}
            if v.witness is not None:
                entry["witness"] = _jsonable(v.witness)
            if v.detail:
                entry["detail"] = _jsonable(v.detail)
            conds[key] = entry
        return {"view": self.view, "conditions": conds, "metrics": _jsonable(self.metrics)}


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [_jsonable(v) for v in x]
        if isinstance(x, (set, frozenset)):
            items.sort(key=repr)
        return items
    return x


def _layer_edge_set(lg: LayeredGraph) -> set:
    edges = set()
    for layer in lg.layers:
        for a, b in zip(layer, layer[1:]):
            edges.add(frozenset((a, b)))
    return edges


def t_stroll_exists(lg: LayeredGraph, u, v, t: int) -> bool:
    """Is there a u-v path through tree and layer-path edges that never takes
    t+1 consecutive layer edges and never re-enters a layer?

    Never re-entering a layer forces the layer sequence to be monotone and
    each layer's visit to be one directed block, which is exactly the state
    space searched here.
    """
    lg._check(u)
    lg._check(v)
    if t < 0:
        raise PreconditionError("stroll width must be non-negative")
    if u == v:
        return True
    # state: vertex, consecutive layer edges taken, tree direction, block direction
    start = (u, 0, "none", "none")
    seen = {start}
    queue = deque([start])
    while queue:
        cur, run, tdir, bdir = queue.popleft()
        nexts = []
        if run < t:
            left, right = lg.layer_neighbors(cur)
            if left is not None and bdir in ("none", "left"):
                nexts.append((left, run + 1, tdir, "left"))
            if right is not None and bdir in ("none", "right"):
                nexts.append((right, run + 1, tdir, "right"))
        if tdir in ("none", "up") and lg.parent_of(cur) is not None:
            nexts.append((lg.parent_of(cur), 0, "up", "none"))
        if tdir in ("none", "down"):
            for c in lg.children(cur):
                nexts.append((c, 0, "down", "none"))
        for state in nexts:
            if state[0] == v:
                return True
            if state not in seen:
                seen.add(state)
                queue.append(state)
    return False


def compute_upward_restriction(lg: LayeredGraph, graph: Optional[Graph] = None) -> dict:
    """Minimal witness sets X_v for upward restriction: the upper endpoints
    of non-layer edges leaving the subtree of v.

    Requires every non-layer edge to join an ancestor-descendant pair.
    """
    if graph is None:
        graph = lg.total()
    layer_edges = _layer_edge_set(lg)
    x = {v: set() for v in lg.vertices}
    for e in graph.edges:
        if e in layer_edges:
            continue
        a, b = tuple(e)
        if lg.layer_of(a) > lg.layer_of(b):
            a, b = b, a
        if not lg.is_ancestor(a, b):
            raise PreconditionError(
                f"edge {tuple(e)!r} joins an incomparable pair; upward restriction undefined"
            )
        cur = b
        while cur != a:
            x[cur].add(a)
            cur = lg.parent_of(cur)
    return {v: frozenset(s) for v, s in x.items()}


def _as_layered(w, view: str) -> tuple[LayeredGraph, Graph]:
    if isinstance(w, LayeredGraph):
        lg = w
        graph = lg.total() if view == "total" else lg.real()
        return lg, graph
    raise PreconditionError("expected a LayeredGraph or WheelPrefix")


def validate_axioms(
    w,
    stroll_t: Optional[int] = None,
    d: Optional[int] = None,
    f: Optional[Sequence[int]] = None,
    degree2_threshold: Optional[int] = None,
    upward_t: Optional[int] = None,
    view: str = "total",
) -> AxiomReport:
    """Validate the layered-wheel conditions on a built prefix.

    view selects which edge set is judged: "total" (black and red) or
    "real" (black only).  Defaults for wheel prefixes come from the prefix
    itself: stroll_t = t and upward_t = t + 1.
    """
    if view not in ("total", "real"):
        raise PreconditionError(f"unknown view {view!r}")
    lg, graph = _as_layered(w, view)
    if isinstance(w, WheelPrefix):
        if stroll_t is None:
            stroll_t = w.t
        if upward_t is None:
            upward_t = w.t + 1
        if d is None:
            d = max_children_bound(w.t, w.variant) - 1
    if stroll_t is None:
        stroll_t = 0

    conditions: dict[str, ConditionVerdict] = {}
    metrics: dict = {}
    layer_edges = _layer_edge_set(lg)

    # Condition 1: each layer induces its left-to-right path
    verdict = ConditionVerdict(HOLDS)
    for layer in lg.layers:
        for a, b in zip(layer, layer[1:]):
            if not graph.has_edge(a, b):
                verdict = ConditionVerdict(FAILS, witness=("missing-layer-edge", a, b))
                break
        if verdict.status == FAILS:
            break
        for i, a in enumerate(layer):
            for b in layer[i + 2 :]:
                if graph.has_edge(a, b):
                    verdict = ConditionVerdict(FAILS, witness=("layer-chord", a, b))
                    break
            if verdict.status == FAILS:
                break
        if verdict.status == FAILS:
            break
    conditions["1"] = verdict

    # Condition 2: non-layer edges join ancestor-descendant pairs
    verdict = ConditionVerdict(HOLDS)
    for e in graph.edges:
        if e in layer_edges:
            continue
        a, b = tuple(e)
        if not (lg.is_ancestor(a, b) or lg.is_ancestor(b, a)):
            verdict = ConditionVerdict(FAILS, witness=("incomparable-edge", a, b))
            break
    conditions["2"] = verdict

    # Condition 2'(t): non-layer edges join t-wide pairs (stroll-connected)
    verdict = ConditionVerdict(HOLDS, detail={"stroll_t": stroll_t})
    for e in graph.edges:
        if e in layer_edges:
            continue
        a, b = tuple(e)
        if lg.is_ancestor(a, b) or lg.is_ancestor(b, a):
            continue  # tree path is a 0-stroll
        if not t_stroll_exists(lg, a, b, stroll_t):
            verdict = ConditionVerdict(
                FAILS, witness=("no-stroll", a, b), detail={"stroll_t": stroll_t}
            )
            break
    conditions["2prime"] = verdict
    metrics["stroll_t"] = stroll_t

    # Condition 3: runs of tree-degree-2 vertices (never certifiable on a prefix).
    # Degree-2 vertices induce disjoint paths in the tree; the longest run is
    # the largest component.
    deg2 = {v for v in lg.vertices if lg.tree_degree(v) == 2}
    max_run, run_witness = 0, None
    seen = set()
    for v in deg2:
        if v in seen:
            continue
        comp = [v]
        seen.add(v)
        frontier = [v]
        while frontier:
            cur = frontier.pop()
            near = [lg.parent_of(cur)] + list(lg.children(cur))
            for nb in near:
                if nb in deg2 and nb not in seen:
                    seen.add(nb)
                    comp.append(nb)
                    frontier.append(nb)
        if len(comp) > max_run:
            max_run, run_witness = len(comp), sorted(comp, key=lambda x: lg._index[x])
    detail = {"max_degree2_run": max_run}
    if degree2_threshold is not None:
        detail["threshold"] = degree2_threshold
        detail["exceeds_threshold"] = max_run >= degree2_threshold
    conditions["3"] = ConditionVerdict(
        PREFIX_LIMITED, witness=run_witness if max_run else None, detail=detail
    )
    metrics["max_degree2_run"] = max_run

    # Condition 4: some edge between every pair of built layers
    verdict = ConditionVerdict(HOLDS, detail={"scope": "built layer pairs"})
    pair_hit = [[False] * len(lg.layers) for _ in lg.layers]
    for e in graph.edges:
        a, b = tuple(e)
        la, lb = lg.layer_of(a), lg.layer_of(b)
        pair_hit[min(la, lb)][max(la, lb)] = True
    for i in range(len(lg.layers)):
        for j in range(i + 1, len(lg.layers)):
            if not pair_hit[i][j]:
                verdict = ConditionVerdict(FAILS, witness=("no-edge-between-layers", i, j))
                break
        if verdict.status == FAILS:
            break
    conditions["4"] = verdict

    # Condition 5: no leaf, judged away from the unfinished last layer
    verdict = ConditionVerdict(PREFIX_LIMITED, detail={"scope": "layers before the last"})
    for layer in lg.layers[:-1]:
        for v in layer:
            if not lg.children(v):
                verdict = ConditionVerdict(FAILS, witness=("childless-internal-vertex", v))
                break
        if verdict.status == FAILS:
            break
    conditions["5"] = verdict

    # Condition 6: at most d children per node
    max_children = max((len(lg.children(v)) for v in lg.vertices), default=0)
    metrics["max_children"] = max_children
    if d is None:
        conditions["6"] = ConditionVerdict(
            PREFIX_LIMITED, detail={"max_children": max_children, "bound": None}
        )
    elif max_children <= d:
        conditions["6"] = ConditionVerdict(HOLDS, detail={"max_children": max_children, "bound": d})
    else:
        witness = next(v for v in lg.vertices if len(lg.children(v)) > d)
        conditions["6"] = ConditionVerdict(
            FAILS, witness=("too-many-children", witness), detail={"bound": d}
        )

    # Condition 7: children of layer-n nodes bounded by f(n)
    per_layer_max = [
        max((len(lg.children(v)) for v in layer), default=0) for layer in lg.layers[:-1]
    ]
    if f is None:
        conditions["7"] = ConditionVerdict(
            PREFIX_LIMITED, detail={"per_layer_max_children": per_layer_max, "bound": None}
        )
    else:
        verdict = ConditionVerdict(HOLDS, detail={"per_layer_max_children": per_layer_max})
        for i, layer in enumerate(lg.layers[:-1]):
            bound = f[i] if i < len(f) else None
            if bound is None:
                verdict = ConditionVerdict(
                    FAILS, witness=("layer-bound-missing", i), detail={"layer": i}
                )
                break
            for v in layer:
                if len(lg.children(v)) > bound:
                    verdict = ConditionVerdict(
                        FAILS, witness=("layer-bound-exceeded", v), detail={"layer": i, "bound": bound}
                    )
                    break
            if verdict.status == FAILS:
                break
        conditions["7"] = verdict

    # Condition 8: upward restriction, via the minimal witness sets
    if conditions["2"].status == FAILS:
        conditions["8"] = ConditionVerdict(
            FAILS,
            witness=conditions["2"].witness,
            detail={"reason": "upward restriction undefined without condition 2"},
        )
    else:
        xsets = compute_upward_restriction(lg, graph)
        max_x = max((len(s) for s in xsets.values()), default=0)
        metrics["max_upward_restriction"] = max_x
        if upward_t is None:
            conditions["8"] = ConditionVerdict(
                PREFIX_LIMITED, detail={"max_upward_restriction": max_x, "bound": None}
            )
        elif max_x <= upward_t:
            conditions["8"] = ConditionVerdict(
                HOLDS, detail={"max_upward_restriction": max_x, "bound": upward_t}
            )
        else:
            witness = next(v for v, s in xsets.items() if len(s) > upward_t)
            conditions["8"] = ConditionVerdict(
                FAILS,
                witness=("upward-restriction-exceeded", witness, sorted(xsets[witness], key=str)),
                detail={"bound": upward_t},
            )

    # Condition 9: ancestors adjacent to v form a clique
    verdict = ConditionVerdict(HOLDS)
    for v in lg.vertices:
        anc = [a for a in lg.ancestors(v) if graph.has_edge(a, v)]
        done = False
        for i, a in enumerate(anc):
            for b in anc[i + 1 :]:
                if not graph.has_edge(a, b):
                    verdict = ConditionVerdict(FAILS, witness=("non-clique-upward", v, a, b))
                    done = True
                    break
            if done:
                break
        if done:
            break
    conditions["9"] = verdict

    # Condition 10: edges to far ancestors force edges to the ones between
    verdict = ConditionVerdict(HOLDS)
    for wv in lg.vertices:
        anc = lg.ancestors(wv)  # root first, strict
        done = False
        for i, u in enumerate(anc):
            if not graph.has_edge(u, wv):
                continue
            for v in anc[i + 1 :]:
                if not graph.has_edge(u, v):
                    verdict = ConditionVerdict(FAILS, witness=("nesting-gap", u, v, wv))
                    done = True
                    break
            if done:
                break
        if done:
            break
    conditions["10"] = verdict

    metrics["n"] = lg.n
    metrics["depth"] = lg.depth
    return AxiomReport(conditions=conditions, metrics=metrics, view=view)
