"""Serialization: JSON objects, graph6, DIMACS, dot."""

import json
import random

import networkx as nx
import pytest

from layerwheel.core import Graph, TreeDecomposition, Trigraph
from layerwheel.formats import (
    dimacs_to_graph,
    dumps,
    graph6_to_graph,
    graph_from_obj,
    graph_to_dimacs,
    graph_to_dot,
    graph_to_graph6,
    graph_to_obj,
    td_from_obj,
    td_to_obj,
    trigraph_from_obj,
    trigraph_to_obj,
    trigraph_to_dot,
)


def _random_graph(rng, n):
    vs = [f"v{i}" for i in range(n)]
    edges = [
        (vs[i], vs[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.4
    ]
    return Graph(vs, edges)


def test_dumps_is_sorted_and_newline_terminated():
    text = dumps({"b": 1, "a": [2, 1]})
    assert text.endswith("\n")
    assert text.index('"a"') < text.index('"b"')
    assert json.loads(text) == {"b": 1, "a": [2, 1]}


def test_graph_obj_roundtrip():
    g = Graph(["a", "b", "c"], [("a", "c")])
    obj = graph_to_obj(g)
    assert obj["n"] == 3
    h = graph_from_obj(json.loads(dumps(obj)))
    assert h.sorted_vertices() == g.sorted_vertices()
    assert h.has_edge("a", "c") and not h.has_edge("a", "b")


def test_trigraph_obj_roundtrip():
    t = Trigraph(["a", "b", "c"], black=[("a", "b")], red=[("b", "c")])
    t2 = trigraph_from_obj(json.loads(dumps(trigraph_to_obj(t))))
    assert t2.black_edges == t.black_edges
    assert t2.red_edges == t.red_edges


def test_td_obj_uses_bag_dict():
    td = TreeDecomposition({"n0": ["a", "b"], "n1": ["b"]}, [("n0", "n1")])
    obj = td_to_obj(td)
    assert obj["bags"] == {"n0": ["a", "b"], "n1": ["b"]}
    assert obj["width"] == 1
    td2 = td_from_obj(json.loads(dumps(obj)))
    assert td2.bag("n0") == frozenset({"a", "b"})
    assert td2.width == 1


def test_graph6_roundtrip_random():
    # encoding walks insertion order; decoding yields ints 0..n-1
    rng = random.Random(7)
    for n in [0, 1, 5, 12, 40]:
        g = _random_graph(rng, n)
        h = graph6_to_graph(graph_to_graph6(g))
        assert h.n == g.n
        order = list(g.vertices)
        for i in range(n):
            for j in range(i + 1, n):
                assert h.has_edge(i, j) == g.has_edge(order[i], order[j])


def test_graph6_matches_networkx_encoding():
    rng = random.Random(11)
    for n in [3, 9, 26]:
        g = _random_graph(rng, n)
        order = list(g.vertices)
        nxg = nx.Graph()
        nxg.add_nodes_from(range(n))
        for i in range(n):
            for j in range(i + 1, n):
                if g.has_edge(order[i], order[j]):
                    nxg.add_edge(i, j)
        expected = nx.to_graph6_bytes(nxg, header=False).decode().strip()
        assert graph_to_graph6(g) == expected


def test_dimacs_roundtrip_preserves_structure():
    # DIMACS vertices are 1..n; label i+1 stands for the i-th sorted label
    g = Graph(["0.0", "1.0", "1.1"], [("0.0", "1.0"), ("1.0", "1.1")])
    text = graph_to_dimacs(g)
    assert "c vertex 1 = 0.0" in text
    h = dimacs_to_graph(text)
    assert h.n == 3
    assert h.has_edge(1, 2) and h.has_edge(2, 3)
    assert not h.has_edge(1, 3)


def test_dot_outputs_mention_all_vertices():
    g = Graph(["a", "b"], [("a", "b")])
    out = graph_to_dot(g)
    assert '"a"' in out and '"b"' in out and "--" in out
    t = Trigraph(["a", "b"], black=[], red=[("a", "b")])
    tout = trigraph_to_dot(t)
    assert "dashed" in tout or "red" in tout


def test_graph6_rejects_garbage():
    with pytest.raises(Exception):
        graph6_to_graph("\x01\x02")
