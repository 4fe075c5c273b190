"""Serialization: graph6, DIMACS col, DOT, and canonical JSON.

JSON output is deterministic: keys sorted, two-space indent, lists sorted
by label where order carries no meaning.  graph6 and DIMACS address the
vertices by position, so both writers emit an explicit label mapping
(DIMACS as comments) or drop labels entirely (graph6).
"""

from __future__ import annotations

import json
from typing import Iterable

from .core import (
    Graph,
    LayerwheelError,
    TreeDecomposition,
    Trigraph,
    label_key,
)


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, indent 2, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# graph6

def graph_to_graph6(g: Graph) -> str:
    """Encode in graph6; labels are dropped, vertex order is insertion order."""
    n = g.n
    order = {v: i for i, v in enumerate(g.vertices)}
    bits = []
    for j in range(1, n):
        vj = g.vertices[j]
        nbrs = g.neighbors(vj)
        for i in range(j):
            bits.append(1 if g.vertices[i] in nbrs else 0)
    return _graph6_size(n) + _graph6_pack(bits)


def graph6_to_graph(text: str) -> Graph:
    """Decode graph6 into a Graph on vertices 0..n-1."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    n, rest = _graph6_read_size(s)
    need = n * (n - 1) // 2
    bits = []
    for ch in rest:
        c = ord(ch) - 63
        if not 0 <= c < 64:
            raise LayerwheelError(f"invalid graph6 character {ch!r}")
        for k in range(5, -1, -1):
            bits.append((c >> k) & 1)
    if len(bits) < need:
        raise LayerwheelError("graph6 payload too short")
    edges = []
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                edges.append((i, j))
            idx += 1
    return Graph(range(n), edges)


def _graph6_size(n: int) -> str:
    if n < 0:
        raise LayerwheelError("negative vertex count")
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return chr(126) + "".join(chr(((n >> k) & 63) + 63) for k in (12, 6, 0))
    if n <= 68719476735:
        return chr(126) + chr(126) + "".join(
            chr(((n >> k) & 63) + 63) for k in (30, 24, 18, 12, 6, 0)
        )
    raise LayerwheelError("graph too large for graph6")


def _graph6_read_size(s: str) -> tuple[int, str]:
    if not s:
        raise LayerwheelError("empty graph6 string")
    if s[0] != chr(126):
        return ord(s[0]) - 63, s[1:]
    if len(s) >= 2 and s[1] != chr(126):
        if len(s) < 4:
            raise LayerwheelError("truncated graph6 size")
        n = 0
        for ch in s[1:4]:
            n = (n << 6) | (ord(ch) - 63)
        return n, s[4:]
    if len(s) < 8:
        raise LayerwheelError("truncated graph6 size")
    n = 0
    for ch in s[2:8]:
        n = (n << 6) | (ord(ch) - 63)
    return n, s[8:]


def _graph6_pack(bits: list[int]) -> str:
    if len(bits) % 6:
        bits = bits + [0] * (6 - len(bits) % 6)
    out = []
    for i in range(0, len(bits), 6):
        c = 0
        for b in bits[i : i + 6]:
            c = (c << 1) | b
        out.append(chr(c + 63))
    return "".join(out)


# ---------------------------------------------------------------------------
# DIMACS col

def graph_to_dimacs(g: Graph) -> str:
    """DIMACS edge format, 1-indexed, with a label map in comments."""
    order = {v: i + 1 for i, v in enumerate(g.vertices)}
    lines = [f"c vertex {i} = {v}" for v, i in order.items()]
    lines.append(f"p edge {g.n} {g.m}")
    pairs = sorted(
        (min(order[u], order[v]), max(order[u], order[v])) for u, v in g.sorted_edges()
    )
    lines.extend(f"e {a} {b}" for a, b in pairs)
    return "\n".join(lines) + "\n"


def dimacs_to_graph(text: str) -> Graph:
    """Parse DIMACS edge format; vertices become ints 1..n."""
    n = None
    edges = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) < 4 or parts[1] not in ("edge", "col"):
                raise LayerwheelError(f"bad problem line: {raw!r}")
            n = int(parts[2])
        elif parts[0] == "e":
            if len(parts) != 3:
                raise LayerwheelError(f"bad edge line: {raw!r}")
            edges.append((int(parts[1]), int(parts[2])))
        else:
            raise LayerwheelError(f"unrecognized DIMACS line: {raw!r}")
    if n is None:
        raise LayerwheelError("DIMACS input has no problem line")
    return Graph(range(1, n + 1), edges)


# ---------------------------------------------------------------------------
# DOT

def trigraph_to_dot(t: Trigraph, name: str = "trigraph") -> str:
    """Undirected DOT; red edges are drawn red, black edges solid black."""
    lines = [f"graph {name} {{"]
    for v in t.sorted_vertices():
        lines.append(f'  "{v}";')
    for u, v in _sorted_pairs(t.black_edges):
        lines.append(f'  "{u}" -- "{v}";')
    for u, v in _sorted_pairs(t.red_edges):
        lines.append(f'  "{u}" -- "{v}" [color=red];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_dot(g: Graph, name: str = "graph_") -> str:
    lines = [f"graph {name} {{"]
    for v in g.sorted_vertices():
        lines.append(f'  "{v}";')
    for u, v in g.sorted_edges():
        lines.append(f'  "{u}" -- "{v}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _sorted_pairs(edges: Iterable[frozenset]) -> list[tuple]:
    pairs = [tuple(sorted(e, key=label_key)) for e in edges]
    pairs.sort(key=lambda p: (label_key(p[0]), label_key(p[1])))
    return pairs


# ---------------------------------------------------------------------------
# JSON object schemas

def graph_to_obj(g: Graph) -> dict:
    return {
        "n": g.n,
        "vertices": g.sorted_vertices(),
        "edges": [list(e) for e in g.sorted_edges()],
    }


def graph_from_obj(obj: dict) -> Graph:
    vertices = obj.get("vertices")
    if vertices is None:
        vertices = list(range(obj["n"]))
    return Graph(vertices, [tuple(e) for e in obj["edges"]])


def trigraph_to_obj(t: Trigraph) -> dict:
    return {
        "n": t.n,
        "vertices": t.sorted_vertices(),
        "black": [list(e) for e in _sorted_pairs(t.black_edges)],
        "red": [list(e) for e in _sorted_pairs(t.red_edges)],
    }


def trigraph_from_obj(obj: dict) -> Trigraph:
    vertices = obj.get("vertices")
    if vertices is None:
        vertices = list(range(obj["n"]))
    return Trigraph(
        vertices,
        [tuple(e) for e in obj["black"]],
        [tuple(e) for e in obj.get("red", [])],
    )


def td_to_obj(td: TreeDecomposition) -> dict:
    bags = {
        str(node): sorted(td.bag(node), key=label_key)
        for node in sorted(td.nodes, key=label_key)
    }
    links = [sorted(l, key=label_key) for l in td.links]
    links.sort(key=lambda p: (label_key(p[0]), label_key(p[1])))
    return {"bags": bags, "links": [list(l) for l in links], "width": td.width}


def td_from_obj(obj: dict) -> TreeDecomposition:
    bags = {node: members for node, members in obj["bags"].items()}
    return TreeDecomposition(bags, [tuple(l) for l in obj["links"]])
