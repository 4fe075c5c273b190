"""Wheel construction: child enumeration, layer census, tree bookkeeping."""

import math

import pytest
from hypothesis import given, strategies as st

from layerwheel.core import PreconditionError, BudgetExceededError
from layerwheel.wheels import (
    boundary_siblings,
    build_trianglefree_wheel,
    build_wheel,
    children_count,
    enumerate_children,
    max_children_bound,
    prefix_from_obj,
    prefix_to_obj,
    upward_neighborhood,
)

# layer sizes are locked: the construction is canonical, any drift is a bug
W1_LAYERS = [1, 3, 13, 59, 269, 1227]
W2_LAYERS = [1, 3, 21, 251, 3493]
W3_LAYERS = [1, 3, 21, 315]
TF1_LAYERS = [1, 6, 44, 328]
TF2_LAYERS = [1, 6, 58]


def test_w1_layer_census(w1d5):
    assert [len(layer) for layer in w1d5.layers] == W1_LAYERS
    assert w1d5.trigraph.n == sum(W1_LAYERS)


def test_w2_layer_census(w2d3):
    assert [len(layer) for layer in w2d3.layers] == W2_LAYERS[:4]


def test_w3_layer_census(w3d2):
    assert [len(layer) for layer in w3d2.layers] == W3_LAYERS[:3]


def test_trianglefree_layer_census(tf1d3, tf2d2):
    assert [len(layer) for layer in tf1d3.layers] == TF1_LAYERS
    assert [len(layer) for layer in tf2d2.layers] == TF2_LAYERS


def test_children_count_closed_form():
    # c_t(s) = sum_{k<=min(t,s)} C(s,k) 2^k
    for t in range(1, 5):
        for s in range(0, 8):
            expected = sum(
                math.comb(s, k) * 2 ** k for k in range(0, min(t, s) + 1)
            )
            assert children_count(s, t) == expected


def test_children_count_small_values():
    assert [children_count(s, 1) for s in (1, 2)] == [3, 5]
    assert [children_count(s, 2) for s in (1, 2, 3)] == [3, 9, 19]
    assert [children_count(s, 3) for s in (1, 2, 3, 4)] == [3, 9, 27, 65]


def test_children_count_bounded_by_power_of_three():
    for t in range(1, 5):
        for s in range(0, 10):
            assert children_count(s, t) < 3 ** (t + 1) or s > t


def test_max_children_bound_dominates_built_prefixes(w1d3, w2d2, tf1d3):
    for w in (w1d3, w2d2, tf1d3):
        bound = max_children_bound(w.t, w.variant)
        worst = max(len(w.children(v)) for layer in w.layers[:-1] for v in layer)
        assert worst <= bound


def test_enumerate_children_matches_count():
    anchors = ["0.0", "1.1", "2.3"]
    for t in (3, 4):
        specs = enumerate_children(anchors, t)
        assert len(specs) == children_count(len(anchors), t)
        assert len(set((sp.B, sp.R) for sp in specs)) == len(specs)
        for sp in specs:
            assert len(sp.B | sp.R) <= t
            assert not (sp.B & sp.R)


def test_enumerate_children_canonical_order():
    specs = enumerate_children(["a", "b"], 2)
    sizes = [len(sp.B | sp.R) for sp in specs]
    assert sizes == sorted(sizes)
    assert specs[0].B == frozenset() and specs[0].R == frozenset()


def test_first_anchor_free_child_has_no_real_parent_edge(w1d2):
    # tree edges are bookkeeping, not graph edges: the anchor-free child
    # is nonadjacent to its parent in both views
    real, total = w1d2.real(), w1d2.total()
    for layer in w1d2.layers[:-1]:
        for u in layer:
            kids = w1d2.children(u)
            if kids:
                assert not total.has_edge(u, kids[0])
                assert not real.has_edge(u, kids[0])


def test_layers_induce_paths(w1d3):
    real = w1d3.real()
    for layer in w1d3.layers:
        for a, b in zip(layer, layer[1:]):
            assert real.has_edge(a, b)
        for i in range(len(layer)):
            for j in range(i + 2, len(layer)):
                assert not real.has_edge(layer[i], layer[j])


def test_upward_neighborhood_contents(w1d2):
    # N_up[v] = anchors plus v itself, ordered by (layer, position), v last
    for layer in w1d2.layers[1:]:
        for v in layer:
            nb = upward_neighborhood(w1d2, v)
            assert nb[-1] == v
            sp = w1d2.birth[v]
            assert set(nb) == set(sp.B) | set(sp.R) | {v}
    assert upward_neighborhood(w1d2, "0.0") == ["0.0"]


def test_upward_neighborhood_is_total_upward_closed(w1d3):
    total = w1d3.total()
    for v in w1d3.trigraph.vertices:
        nb = set(upward_neighborhood(w1d3, v))
        lv = w1d3.layer_of(v)
        for u in total.neighbors(v):
            if w1d3.layer_of(u) < lv:
                assert u in nb


def test_boundary_siblings(w1d2):
    layer = w1d2.layers[1]
    # walls flanking u's child block: last child of the left sibling,
    # first child of the right sibling, None past the layer ends
    kids = {u: w1d2.children(u) for u in layer}
    left, right = boundary_siblings(w1d2, layer[1])
    assert left == kids[layer[0]][-1]
    assert right == kids[layer[2]][0]
    lend = boundary_siblings(w1d2, layer[0])
    assert lend[0] is None and lend[1] == kids[layer[1]][0]
    rend = boundary_siblings(w1d2, layer[-1])
    assert rend[0] == kids[layer[-2]][-1] and rend[1] is None


def test_boundary_siblings_requires_children(w1d2):
    bottom = w1d2.layers[-1][0]
    with pytest.raises(PreconditionError):
        boundary_siblings(w1d2, bottom)


def test_ancestor_descendant_bookkeeping(w1d3):
    v = w1d3.layers[3][0]
    anc = w1d3.ancestors(v)
    assert anc[0] == "0.0"
    assert anc[-1] == w1d3.parent_of(v)
    assert w1d3.is_ancestor("0.0", v)
    assert not w1d3.is_ancestor(v, "0.0")
    assert v in w1d3.descendants(v)


def test_descendant_counts_marked(w1d2):
    marked = set(w1d2.layers[2])
    counts = w1d2.descendant_counts(marked)
    assert counts["0.0"] == len(w1d2.layers[2])
    assert sum(counts[v] for v in w1d2.layers[1]) == len(w1d2.layers[2])


def test_nonlayer_edges_join_comparable_pairs(w1d3):
    # every cross edge climbs from a vertex to one of its tree ancestors
    total = w1d3.total()
    for e in total.sorted_edges():
        u, v = tuple(e)
        if w1d3.layer_of(u) == w1d3.layer_of(v):
            continue
        if w1d3.layer_of(u) > w1d3.layer_of(v):
            u, v = v, u
        assert w1d3.is_ancestor(u, v)


def test_prefix_roundtrip(w2d2):
    obj = prefix_to_obj(w2d2)
    w = prefix_from_obj(obj)
    assert w.t == w2d2.t and w.variant == w2d2.variant
    assert w.layers == w2d2.layers
    assert w.trigraph.black_edges == w2d2.trigraph.black_edges
    assert w.trigraph.red_edges == w2d2.trigraph.red_edges
    assert w.birth == w2d2.birth


def test_build_wheel_rejects_bad_params():
    with pytest.raises(PreconditionError):
        build_wheel(0, 2)
    with pytest.raises(PreconditionError):
        build_wheel(1, -1)


def test_build_wheel_budget():
    with pytest.raises(BudgetExceededError):
        build_wheel(1, 6, cap=500)


def test_trianglefree_twins_follow_their_original(tf1d3):
    # children alternate: an anchored spec, then its plain isolated twin
    for layer in tf1d3.layers[:-1]:
        for u in layer:
            kids = tf1d3.children(u)
            assert len(kids) % 2 == 0
            for orig, twin in zip(kids[0::2], kids[1::2]):
                assert not tf1d3.birth[orig].twin
                tsp = tf1d3.birth[twin]
                assert tsp.twin and not tsp.B and not tsp.R


@given(st.integers(1, 3), st.integers(0, 2))
def test_build_is_deterministic(t, depth):
    a = build_wheel(t, depth)
    b = build_wheel(t, depth)
    assert prefix_to_obj(a) == prefix_to_obj(b)
