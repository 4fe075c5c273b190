"""End-to-end checks of the console entry points via CliRunner."""

import json

import pytest
from click.testing import CliRunner

from layerwheel import formats
from layerwheel.cli import main
from layerwheel.core import Graph, Trigraph


@pytest.fixture()
def runner():
    return CliRunner()


def _write(path, text):
    path.write_text(text, encoding="utf-8")
    return str(path)


def _p4_file(tmp_path):
    g = Graph(range(4), [(0, 1), (1, 2), (2, 3)])
    return _write(tmp_path / "p4.json", formats.dumps(formats.graph_to_obj(g)))


def _triangle_file(tmp_path):
    h = Trigraph(range(3), [(0, 1), (1, 2), (0, 2)], [])
    return _write(tmp_path / "k3.json", formats.dumps(formats.trigraph_to_obj(h)))


def _gen(runner, tmp_path, name="w.json", args=()):
    out = str(tmp_path / name)
    res = runner.invoke(main, ["gen", "--t", "1", "--depth", "2", "--out", out, *args])
    assert res.exit_code == 0, res.output
    return out


def test_gen_json_roundtrips(runner, tmp_path):
    out = _gen(runner, tmp_path)
    obj = json.loads(open(out).read())
    assert obj["t"] == 1
    assert len(obj["layers"]) == 3
    assert sum(len(layer) for layer in obj["layers"]) == 17


def test_gen_deterministic_bytes(runner, tmp_path):
    a = _gen(runner, tmp_path, "a.json")
    b = _gen(runner, tmp_path, "b.json")
    assert open(a, "rb").read() == open(b, "rb").read()


def test_gen_exports(runner, tmp_path):
    for fmt, name in (("graph6", "w.g6"), ("dimacs", "w.col"), ("dot", "w.dot")):
        out = str(tmp_path / name)
        res = runner.invoke(
            main, ["gen", "--t", "1", "--depth", "2", "--format", fmt, "--out", out]
        )
        assert res.exit_code == 0, res.output
    g6 = open(tmp_path / "w.g6").read().strip()
    g = formats.graph6_to_graph(g6)
    assert g.n == 17
    assert "p edge 17" in open(tmp_path / "w.col").read()
    assert "digraph" in open(tmp_path / "w.dot").read() or "graph" in open(tmp_path / "w.dot").read()


def test_gen_bad_params_exit_2(runner, tmp_path):
    res = runner.invoke(main, ["gen", "--t", "1", "--depth", "-3", "--out", str(tmp_path / "x")])
    assert res.exit_code == 2


def test_gen_cap_exit_2(runner, tmp_path):
    res = runner.invoke(
        main, ["gen", "--t", "2", "--depth", "6", "--cap", "100", "--out", str(tmp_path / "x")]
    )
    assert res.exit_code == 2


def test_validate_clean_prefix(runner, tmp_path):
    out = _gen(runner, tmp_path)
    res = runner.invoke(main, ["validate", out])
    assert res.exit_code == 0, res.output
    assert "condition 1: holds" in res.output
    res = runner.invoke(main, ["validate", out, "--report", "json"])
    assert res.exit_code == 0
    report = json.loads(res.output)
    assert all(v["status"] != "fails" for v in report["conditions"].values())


def test_validate_corrupted_prefix_exit_1(runner, tmp_path):
    out = _gen(runner, tmp_path)
    obj = json.loads(open(out).read())
    layer1 = obj["layers"][1]
    drop = {tuple(sorted((layer1[0], layer1[1])))}
    obj["black"] = [e for e in obj["black"] if tuple(sorted(e)) not in drop]
    bad = _write(tmp_path / "bad.json", formats.dumps(obj))
    res = runner.invoke(main, ["validate", bad])
    assert res.exit_code == 1
    assert "fails" in res.output


def test_rep_writes_tree(runner, tmp_path):
    h = Trigraph("abcd", [("a", "b"), ("b", "c")], [("c", "d")])
    hf = _write(tmp_path / "h.json", formats.dumps(formats.trigraph_to_obj(h)))
    out = str(tmp_path / "tree.json")
    res = runner.invoke(main, ["rep", "--in", hf, "--out", out])
    assert res.exit_code == 0, res.output
    tree = json.loads(open(out).read())
    assert set(tree) == {"root", "parent", "children"}
    assert tree["parent"][tree["root"]] is None


def test_rep_rejects_hole(runner, tmp_path):
    c4 = Trigraph(range(4), [(0, 1), (1, 2), (2, 3), (0, 3)], [])
    hf = _write(tmp_path / "c4.json", formats.dumps(formats.trigraph_to_obj(c4)))
    res = runner.invoke(main, ["rep", "--in", hf, "--out", str(tmp_path / "t.json")])
    assert res.exit_code == 2
    assert "error:" in res.output


def test_complete_path_no_fill(runner, tmp_path):
    pf = _p4_file(tmp_path)
    out = str(tmp_path / "tri.json")
    res = runner.invoke(main, ["complete", "--in", pf, "--t", "1", "--out", out])
    assert res.exit_code == 0, res.output
    assert "0 red fill edges" in res.output


def test_complete_overwide_exit_2(runner, tmp_path):
    c5 = Graph(range(5), [(i, (i + 1) % 5) for i in range(5)])
    gf = _write(tmp_path / "c5.json", formats.dumps(formats.graph_to_obj(c5)))
    res = runner.invoke(main, ["complete", "--in", gf, "--t", "1", "--out", str(tmp_path / "o")])
    assert res.exit_code == 2


def test_bbp_path_verdict(runner, tmp_path):
    out = str(tmp_path / "w2.json")
    res = runner.invoke(main, ["gen", "--t", "2", "--depth", "2", "--out", out])
    assert res.exit_code == 0
    obj = json.loads(open(out).read())
    evens = obj["layers"][2][::2]
    xf = _write(tmp_path / "x.json", json.dumps(evens))
    hf = _triangle_file(tmp_path)
    root = obj["layers"][0][0]
    res = runner.invoke(main, ["bbp", "--wheel", out, "--h", hf, "--x", xf, "--u", root])
    assert res.exit_code == 0, res.output
    verdict = json.loads(res.output)
    assert verdict["verdict"] == "path"
    assert verdict["hit_count"] <= 2
    assert set(verdict["hits"]) <= set(evens)


def test_bbp_overwide_pattern_exit_2(runner, tmp_path):
    wf = _gen(runner, tmp_path)
    hf = _triangle_file(tmp_path)
    xf = _write(tmp_path / "x.json", json.dumps([]))
    res = runner.invoke(main, ["bbp", "--wheel", wf, "--h", hf, "--x", xf, "--u", "0.0"])
    assert res.exit_code == 2
    assert "exceeds t+1" in res.output


def test_decompose_and_check_td(runner, tmp_path):
    wf = str(tmp_path / "w13.json")
    res = runner.invoke(main, ["gen", "--t", "1", "--depth", "3", "--out", wf])
    assert res.exit_code == 0
    obj = json.loads(open(wf).read())
    evens = obj["layers"][3][::2]
    xf = _write(tmp_path / "x.json", json.dumps(evens))
    pf = _p4_file(tmp_path)
    td_file = str(tmp_path / "td.json")
    trace_file = str(tmp_path / "trace.json")
    res = runner.invoke(
        main,
        ["decompose", "--wheel", wf, "--x", xf, "--h", pf, "--t", "1",
         "--out", td_file, "--trace", trace_file],
    )
    assert res.exit_code == 0, res.output
    trace = json.loads(open(trace_file).read())
    assert trace["width"] <= trace["bounds"]["constructive_width"]
    assert trace["root"]["part_size"] == len(evens)

    # the emitted decomposition must verify against the real induced graph
    from layerwheel.core import induced_subgraph
    from layerwheel.wheels import prefix_from_obj

    host = induced_subgraph(prefix_from_obj(obj).real(), evens)
    gf = _write(tmp_path / "host.json", formats.dumps(formats.graph_to_obj(host)))
    res = runner.invoke(main, ["oracle", "check-td", "--graph", gf, "--td", td_file])
    assert res.exit_code == 0, res.output
    assert json.loads(res.output)["holds"] is True


def test_decompose_pattern_in_subset_exit_2(runner, tmp_path):
    wf = _gen(runner, tmp_path)
    obj = json.loads(open(wf).read())
    xf = _write(tmp_path / "x.json", json.dumps(list(obj["layers"][2][:10])))
    pf = _p4_file(tmp_path)
    res = runner.invoke(
        main,
        ["decompose", "--wheel", wf, "--x", xf, "--h", pf, "--t", "1",
         "--out", str(tmp_path / "td.json")],
    )
    assert res.exit_code == 2
    assert "not pattern-free" in res.output


def test_twinwidth_json_and_csv(runner, tmp_path):
    wf = _gen(runner, tmp_path)
    csv_file = str(tmp_path / "steps.csv")
    res = runner.invoke(main, ["twinwidth", "--wheel", wf, "--per-step", csv_file])
    assert res.exit_code == 0, res.output
    stats = json.loads(res.output)
    assert stats["merges"] == stats["n"] - 1 == 16
    assert stats["oriented_width"] <= 1 + 3
    lines = open(csv_file).read().splitlines()
    assert lines[0] == "step,merged_a,merged_b,red_degree,outdegree"
    assert len(lines) == stats["merges"] + 1


def test_oracle_tw(runner, tmp_path):
    pf = _p4_file(tmp_path)
    out = str(tmp_path / "td.json")
    res = runner.invoke(main, ["oracle", "tw", "--in", pf, "--out", out])
    assert res.exit_code == 0, res.output
    assert json.loads(res.output) == {"treewidth": 1}
    td_obj = json.loads(open(out).read())
    assert "bags" in td_obj


def test_oracle_girth_infinity(runner, tmp_path):
    pf = _p4_file(tmp_path)
    res = runner.invoke(main, ["oracle", "girth", "--in", pf])
    assert res.exit_code == 0
    assert json.loads(res.output) == {"girth": "infinity"}


def test_oracle_omega(runner, tmp_path):
    k3 = Graph(range(3), [(0, 1), (1, 2), (0, 2)])
    gf = _write(tmp_path / "k3g.json", formats.dumps(formats.graph_to_obj(k3)))
    res = runner.invoke(main, ["oracle", "omega", "--in", gf])
    assert res.exit_code == 0
    assert json.loads(res.output) == {"clique_number": 3}


def test_oracle_check_td_corrupted_exit_1(runner, tmp_path):
    pf = _p4_file(tmp_path)
    td_file = str(tmp_path / "td.json")
    res = runner.invoke(main, ["oracle", "tw", "--in", pf, "--out", td_file])
    assert res.exit_code == 0
    td_obj = json.loads(open(td_file).read())
    td_obj["bags"] = {k: [v for v in bag if v != 3] for k, bag in td_obj["bags"].items()}
    bad = _write(tmp_path / "bad_td.json", formats.dumps(td_obj))
    res = runner.invoke(main, ["oracle", "check-td", "--graph", pf, "--td", bad])
    assert res.exit_code == 1
    verdict = json.loads(res.output)
    assert verdict["holds"] is False
    assert verdict["condition"] in ("vertex-coverage", "edge-coverage")


def test_oracle_bramble_order(runner, tmp_path):
    wf = _gen(runner, tmp_path)
    res = runner.invoke(main, ["oracle", "bramble", "--wheel", wf, "--i", "2"])
    assert res.exit_code == 0, res.output
    assert json.loads(res.output)["order"] == 3


def test_layers_select_fixture(runner, tmp_path):
    res = runner.invoke(main, ["layers-select", "--fixture", "--k", "3"])
    assert res.exit_code == 0, res.output
    assert json.loads(res.output) == {"layers": [0, 1, 2]}


def test_layers_select_low_girth_wheel_exit_2(runner, tmp_path):
    wf = _gen(runner, tmp_path)
    res = runner.invoke(main, ["layers-select", "--wheel", wf, "--k", "2"])
    assert res.exit_code == 2
    assert "girth" in res.output


def test_layers_select_source_flags_conflict(runner, tmp_path):
    wf = _gen(runner, tmp_path)
    res = runner.invoke(main, ["layers-select", "--wheel", wf, "--fixture", "--k", "2"])
    assert res.exit_code == 2
    res = runner.invoke(main, ["layers-select", "--k", "2"])
    assert res.exit_code == 2


def test_jobs_must_be_positive(runner, tmp_path):
    res = runner.invoke(main, ["--jobs", "0", "oracle", "girth", "--in", "nope.json"])
    assert res.exit_code == 2


def test_missing_file_exit_2(runner, tmp_path):
    res = runner.invoke(main, ["validate", str(tmp_path / "absent.json")])
    assert res.exit_code == 2


def test_garbage_json_exit_2(runner, tmp_path):
    bad = _write(tmp_path / "junk.json", "{not json")
    res = runner.invoke(main, ["oracle", "girth", "--in", bad])
    assert res.exit_code == 2
    assert "error:" in res.output
