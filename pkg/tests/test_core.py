"""Base containers: graphs, trigraphs, decompositions, label ordering."""

import pytest
from hypothesis import given, strategies as st

from layerwheel.core import (
    BLACK,
    NONE,
    RED,
    Bramble,
    Graph,
    LayerwheelError,
    TreeDecomposition,
    Trigraph,
    UnknownVertexError,
    connected_components,
    induced_subgraph,
    label_key,
    real_graph,
    total_graph,
)


def test_graph_basics():
    g = Graph(["a", "b", "c"], [("a", "b"), ("b", "c")])
    assert g.n == 3
    assert g.has_edge("a", "b") and g.has_edge("b", "a")
    assert not g.has_edge("a", "c")
    assert g.neighbors("b") == frozenset({"a", "c"})
    assert g.degree("b") == 2
    assert g.sorted_vertices() == ["a", "b", "c"]


def test_graph_rejects_unknown_endpoint():
    with pytest.raises(UnknownVertexError):
        Graph(["a"], [("a", "b")])


def test_graph_rejects_duplicate_vertex():
    with pytest.raises(LayerwheelError):
        Graph(["a", "a"], [])


def test_graph_rejects_loop():
    with pytest.raises(LayerwheelError):
        Graph(["a"], [("a", "a")])


def test_trigraph_adjacency_types():
    t = Trigraph(["a", "b", "c"], black=[("a", "b")], red=[("b", "c")])
    assert t.adjacency_type("a", "b") == BLACK
    assert t.adjacency_type("b", "c") == RED
    assert t.adjacency_type("a", "c") == NONE
    assert t.black_neighbors("b") == frozenset({"a"})
    assert t.red_neighbors("b") == frozenset({"c"})
    assert t.neighbors("b") == frozenset({"a", "c"})


def test_trigraph_rejects_conflicting_colors():
    with pytest.raises(LayerwheelError):
        Trigraph(["a", "b"], black=[("a", "b")], red=[("a", "b")])


def test_total_and_real_views():
    t = Trigraph(["a", "b", "c"], black=[("a", "b")], red=[("b", "c")])
    assert total_graph(t).has_edge("b", "c")
    assert not real_graph(t).has_edge("b", "c")
    assert real_graph(t).has_edge("a", "b")


def test_label_key_totally_orders_mixed_types():
    labels = ["1.0", 3, "0.0", 10, "1.1"]
    ordered = sorted(labels, key=label_key)
    assert ordered == [3, 10, "0.0", "1.0", "1.1"]


def test_connected_components_sorted_by_smallest_label():
    g = Graph(["0.0", "1.0", "1.1", "5.0"], [("1.0", "1.1")])
    comps = connected_components(g)
    assert comps == [["0.0"], ["1.0", "1.1"], ["5.0"]]


def test_induced_subgraph_keeps_only_inner_edges():
    g = Graph(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d")])
    sub = induced_subgraph(g, ["a", "b", "d"])
    assert sub.n == 3
    assert sub.has_edge("a", "b")
    assert not sub.has_edge("b", "d")


def test_tree_decomposition_width_and_bags():
    td = TreeDecomposition({"x": ["a", "b"], "y": ["b", "c"]}, [("x", "y")])
    assert td.width == 1
    assert set(td.nodes) == {"x", "y"}
    assert td.bag("x") == frozenset({"a", "b"})


def test_bramble_rejects_empty_set():
    with pytest.raises(LayerwheelError):
        Bramble([frozenset()])


@given(st.lists(st.one_of(st.integers(0, 99), st.text("0123456789.", max_size=5)), max_size=8))
def test_label_key_sort_is_stable_total_order(labels):
    once = sorted(labels, key=label_key)
    assert sorted(once, key=label_key) == once


@given(
    st.sets(st.integers(0, 9), min_size=1).flatmap(
        lambda vs: st.tuples(
            st.just(sorted(vs)),
            st.sets(
                st.tuples(st.sampled_from(sorted(vs)), st.sampled_from(sorted(vs))).filter(
                    lambda e: e[0] < e[1]
                )
            ),
        )
    )
)
def test_components_partition_the_vertices(data):
    vs, edges = data
    g = Graph(vs, edges)
    comps = connected_components(g)
    seen = [v for comp in comps for v in comp]
    assert sorted(seen) == sorted(vs)
    for comp in comps:
        assert len(set(comp)) == len(comp)
