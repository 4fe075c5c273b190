"""Contraction sequences and red quotients.

A contraction sequence merges two parts at a time, from singletons down to
one part.  Its width is the largest red degree any quotient shows along the
way; the oriented variant counts out-arcs, bounding the plain width.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .core import (
    CapExceededError,
    Graph,
    PreconditionError,
    Trigraph,
    UnknownVertexError,
    label_key,
)
from .wheels import LayeredGraph, WheelPrefix


def red_quotient(g: Graph, partition: Iterable[Iterable]) -> Graph:
    """Quotient graph on the parts, joining parts that some pair of their
    members sees inconsistently."""
    parts = [frozenset(p) for p in partition]
    seen: set = set()
    for p in parts:
        if not p:
            raise PreconditionError("empty part")
        for v in p:
            if v in seen:
                raise PreconditionError(f"vertex {v!r} in two parts")
            if v not in g:
                raise UnknownVertexError(f"unknown vertex {v!r}")
            seen.add(v)
    if seen != set(g.vertices):
        raise PreconditionError("partition does not cover the vertex set")

    edges = []
    for i, p in enumerate(parts):
        for j in range(i + 1, len(parts)):
            q = parts[j]
            pairs = [(u, v) for u in p for v in q]
            connected = [g.has_edge(u, v) for u, v in pairs]
            if any(connected) and not all(connected):
                edges.append((p, q))
    return Graph(parts, edges)


def oriented_out_arcs(g: Graph, partition: Iterable[Iterable]) -> dict:
    """For each part, the parts some two of its members disagree about.
    Singleton parts have no out-arcs."""
    parts = [frozenset(p) for p in partition]
    out = {p: set() for p in parts}
    member_part = {v: p for p in parts for v in p}
    for p in parts:
        if len(p) < 2:
            continue
        members = list(p)
        for q in parts:
            if q is p:
                continue
            for w in q:
                adj = {g.has_edge(u, w) for u in members}
                if len(adj) == 2:
                    out[p].add(q)
                    break
    return out


@dataclass(frozen=True)
class ContractionStep:
    step: int
    merged_a: object
    merged_b: object
    red_degree: int
    outdegree: int


@dataclass(frozen=True)
class SequenceStats:
    steps: tuple
    width: int
    oriented_width: int


def wheel_contraction_sequence(w: LayeredGraph) -> list[tuple]:
    """Layer-by-layer contraction: within each deepest layer fold every
    sibling block left to right, then merge each folded block into its
    parent.  Merges are named by any current member of each part."""
    merges: list[tuple] = []
    for i in range(w.depth, 0, -1):
        parents = [p for p in w.layers[i - 1] if w.children(p)]
        for p in parents:
            kids = w.children(p)
            for k in kids[1:]:
                merges.append((kids[0], k))
        for p in parents:
            merges.append((p, w.children(p)[0]))
    return merges


def sequence_width(
    g, merges: Sequence[tuple], record_steps: bool = True
) -> SequenceStats:
    """Simulate a contraction sequence and measure every quotient.

    g may be a Graph or a layered structure (its real graph is used).  Each
    step reports the quotient's maximum red degree and maximum out-degree
    after the merge.
    """
    if isinstance(g, LayeredGraph):
        g = g.real()
    if not isinstance(g, Graph):
        raise PreconditionError("expected a Graph or LayeredGraph")
    labels = list(g.vertices)
    n = len(labels)
    index = {v: i for i, v in enumerate(labels)}
    adj = [0] * n
    for e in g.edges:
        u, v = tuple(e)
        adj[index[u]] |= 1 << index[v]
        adj[index[v]] |= 1 << index[u]

    part_of = list(range(n))
    mask = {i: 1 << i for i in range(n)}
    orm = {i: adj[i] for i in range(n)}
    andm = {i: adj[i] for i in range(n)}

    steps = []
    width = 0
    owidth = 0
    for step, (a, b) in enumerate(merges, start=1):
        if a not in index or b not in index:
            raise UnknownVertexError(f"merge names unknown vertex ({a!r}, {b!r})")
        pa, pb = part_of[index[a]], part_of[index[b]]
        if pa == pb:
            raise PreconditionError(f"step {step} merges a part with itself")
        mask[pa] |= mask[pb]
        orm[pa] |= orm[pb]
        andm[pa] &= andm[pb]
        bits = mask[pb]
        while bits:
            bit = bits & -bits
            bits ^= bit
            part_of[bit.bit_length() - 1] = pa
        del mask[pb], orm[pb], andm[pb]

        red_nbrs = {p: set() for p in mask}
        out_count = {}
        for p in mask:
            mixed = orm[p] & ~andm[p] & ~mask[p]
            hit = set()
            while mixed:
                bit = mixed & -mixed
                q = part_of[bit.bit_length() - 1]
                hit.add(q)
                mixed &= ~mask[q]
            out_count[p] = len(hit)
            for q in hit:
                red_nbrs[p].add(q)
                red_nbrs[q].add(p)
        max_red = max((len(s) for s in red_nbrs.values()), default=0)
        max_out = max(out_count.values(), default=0)
        width = max(width, max_red)
        owidth = max(owidth, max_out)
        if record_steps:
            steps.append(
                ContractionStep(
                    step=step,
                    merged_a=a,
                    merged_b=b,
                    red_degree=max_red,
                    outdegree=max_out,
                )
            )

    if len(mask) != 1:
        raise PreconditionError(
            f"sequence ends with {len(mask)} parts; a full sequence reaches one"
        )
    return SequenceStats(steps=tuple(steps), width=width, oriented_width=owidth)


def brute_twinwidth(g: Graph, cap: int = 7, oriented: bool = False) -> int:
    """Exact twin-width by dynamic programming over all partitions."""
    n = g.n
    if n > cap:
        raise CapExceededError(f"brute twin-width capped at {cap} vertices, got {n}")
    if n <= 1:
        return 0
    labels = list(g.vertices)
    index = {v: i for i, v in enumerate(labels)}
    adj = [0] * n
    for e in g.edges:
        u, v = tuple(e)
        adj[index[u]] |= 1 << index[v]
        adj[index[v]] |= 1 << index[u]

    def part_rows(p_mask: int) -> tuple[int, int]:
        orm, andm = 0, (1 << n) - 1
        bits = p_mask
        while bits:
            bit = bits & -bits
            bits ^= bit
            row = adj[bit.bit_length() - 1]
            orm |= row
            andm &= row
        return orm, andm

    def quotient_width(parts: tuple[int, ...]) -> int:
        rows = {p: part_rows(p) for p in parts}
        red = {p: 0 for p in parts}
        out = {p: 0 for p in parts}
        for i, p in enumerate(parts):
            orm, andm = rows[p]
            for q in parts[i + 1 :]:
                mixed_pq = (orm & ~andm) & q
                qorm, qandm = rows[q]
                mixed_qp = (qorm & ~qandm) & p
                if mixed_pq or mixed_qp:
                    red[p] += 1
                    red[q] += 1
                if mixed_pq:
                    out[p] += 1
                if mixed_qp:
                    out[q] += 1
        source = out if oriented else red
        return max(source.values())

    memo: dict[frozenset, int] = {}

    def best(parts: tuple[int, ...]) -> int:
        if len(parts) == 1:
            return 0
        key = frozenset(parts)
        if key in memo:
            return memo[key]
        here = quotient_width(parts)
        sub = min(
            best(tuple(sorted([p for k, p in enumerate(parts) if k not in (i, j)]
                              + [parts[i] | parts[j]])))
            for i in range(len(parts))
            for j in range(i + 1, len(parts))
        )
        memo[key] = max(here, sub)
        return memo[key]

    return best(tuple(1 << i for i in range(n)))
