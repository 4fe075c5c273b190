"""Command line entry points.

One process per invocation, no daemon mode.  Exit codes: 0 on success with
the declared artifacts written, 1 when a verification ran and failed (the
witness is printed as JSON), 2 on usage errors, bad inputs, and cap or
deadline breaches.  File artifacts are serialized with sorted keys, so a
fixed config always produces byte-identical output.
"""

from __future__ import annotations

import csv
import functools
import json
import sys

import click

from . import axioms, branchsearch, chordal, decomposer as dec, formats, oracles, twinwidth, wheels
from .core import (
    Graph,
    LayerwheelError,
    PreconditionError,
    Trigraph,
    label_key,
)

_CONDITION_ORDER = ["1", "2", "2prime", "3", "4", "5", "6", "7", "8", "9", "10"]


def _clean(x):
    """Recursively turn sets and tuples into sorted lists for JSON output."""
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in sorted(x.items(), key=lambda kv: str(kv[0]))}
    if isinstance(x, (set, frozenset)):
        return sorted((_clean(v) for v in x), key=repr)
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    return x


def _guard(fn):
    """Map expected failures to exit code 2; internal assertion failures
    still traceback."""

    @functools.wraps(fn)
    def inner(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except LayerwheelError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)

    return inner


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise PreconditionError(f"cannot read {path}: {exc}") from exc


def _write_text(path, text: str):
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise PreconditionError(f"cannot write {path}: {exc}") from exc


def _load_prefix(path) -> wheels.WheelPrefix:
    obj = _read_json(path)
    try:
        return wheels.prefix_from_obj(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise PreconditionError(f"{path} is not a wheel prefix: {exc}") from exc


def _load_graph(path) -> Graph:
    obj = _read_json(path)
    try:
        return formats.graph_from_obj(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise PreconditionError(f"{path} is not a graph object: {exc}") from exc


def _load_trigraph(path) -> Trigraph:
    obj = _read_json(path)
    try:
        return formats.trigraph_from_obj(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise PreconditionError(f"{path} is not a trigraph object: {exc}") from exc


def _load_subset(path) -> list:
    obj = _read_json(path)
    if isinstance(obj, dict):
        obj = obj.get("vertices")
    if not isinstance(obj, list):
        raise PreconditionError(f"{path} must hold a JSON list of labels")
    return obj


def _emit(text: str, out):
    if out is None:
        click.echo(text, nl=False)
    else:
        _write_text(out, text)


@click.group()
@click.option("--seed", type=int, default=0, show_default=True,
              help="Seed recorded for reproducibility; subcommands are deterministic.")
@click.option("--jobs", type=int, default=1, show_default=True,
              help="Worker budget; execution is sequential regardless.")
@click.option("--deadline", type=float, default=None,
              help="Soft time limit in seconds for the search oracles.")
@click.pass_context
def main(ctx, seed, jobs, deadline):
    """Layered wheel toolkit: generators, validators, and oracles."""
    if jobs < 1:
        raise click.UsageError("--jobs must be at least 1")
    ctx.obj = {"seed": seed, "jobs": jobs, "deadline": deadline}


@main.command("gen")
@click.option("--t", "t", type=int, required=True, help="Width parameter of the construction.")
@click.option("--depth", type=int, required=True, help="Deepest layer index to build.")
@click.option("--triangle-free", is_flag=True, default=False,
              help="Build the triangle-free variant.")
@click.option("--cap", type=int, default=10 ** 6, show_default=True, help="Vertex budget.")
@click.option("--out", "out", type=click.Path(dir_okay=False), required=True)
@click.option("--format", "fmt", type=click.Choice(["json", "graph6", "dimacs", "dot"]),
              default="json", show_default=True)
@click.option("--view", type=click.Choice(["real", "total"]), default="real",
              show_default=True, help="Edge set exported by the plain graph formats.")
@_guard
def gen_cmd(t, depth, triangle_free, cap, out, fmt, view):
    """Build a wheel prefix and write it to --out.

    Only the json format round-trips; graph6, dimacs, and dot are exports.
    """
    build = wheels.build_trianglefree_wheel if triangle_free else wheels.build_wheel
    w = build(t, depth, cap=cap)
    if fmt == "json":
        text = formats.dumps(wheels.prefix_to_obj(w))
    elif fmt == "dot":
        text = wheels.prefix_to_dot(w)
    else:
        g = w.real() if view == "real" else w.total()
        text = formats.graph_to_graph6(g) if fmt == "graph6" else formats.graph_to_dimacs(g)
    _write_text(out, text)
    click.echo(f"wrote {out}: {w.trigraph.n} vertices, depth {w.depth}")


@main.command("validate")
@click.argument("wheel_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--stroll-t", type=int, default=None,
              help="Width for the stroll-based wide-pair check (default: the prefix's own t).")
@click.option("--deg2-threshold", type=int, default=None,
              help="Longest allowed run of tree-degree-2 vertices.")
@click.option("--report", "report_fmt", type=click.Choice(["json", "text"]),
              default="text", show_default=True)
@_guard
def validate_cmd(wheel_file, stroll_t, deg2_threshold, report_fmt):
    """Check the layered-wheel conditions on a built prefix.

    Exits 1 when any condition verifiably fails; the witness is part of the
    report.  Prefix-limited verdicts do not fail the run.
    """
    w = _load_prefix(wheel_file)
    report = axioms.validate_axioms(w, stroll_t=stroll_t, degree2_threshold=deg2_threshold)
    if report_fmt == "json":
        click.echo(formats.dumps(report.to_obj()), nl=False)
    else:
        for key in _CONDITION_ORDER:
            if key not in report.conditions:
                continue
            v = report.conditions[key]
            line = f"condition {key}: {v.status}"
            if v.witness is not None:
                line += f"  witness={_clean(v.witness)!r}"
            click.echo(line)
    if report.failed:
        sys.exit(1)


@main.command("rep")
@click.option("--in", "in_path", type=click.Path(exists=True, dir_okay=False), required=True,
              help="Chordal trigraph JSON.")
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@_guard
def rep_cmd(in_path, out):
    """Compute the rooted tree representation of a chordal trigraph."""
    h = _load_trigraph(in_path)
    tree = chordal.tree_representation(h)
    obj = {
        "root": tree.root,
        "parent": {str(v): tree.parent_of(v) for v in tree.vertices},
        "children": {str(v): list(tree.children(v)) for v in tree.vertices},
    }
    _write_text(out, formats.dumps(obj))
    click.echo(f"wrote {out}: {len(tree.vertices)} vertices rooted at {tree.root}")


@main.command("complete")
@click.option("--in", "in_path", type=click.Path(exists=True, dir_okay=False), required=True,
              help="Plain graph JSON.")
@click.option("--t", "t", type=int, required=True, help="Treewidth bound to certify.")
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@_guard
def complete_cmd(in_path, t, out):
    """Chordally complete a graph of treewidth at most t; fill-in turns red."""
    g = _load_graph(in_path)
    tri = chordal.chordal_complete(g, t)
    red = len(tri.red_edges)
    _write_text(out, formats.dumps(formats.trigraph_to_obj(tri)))
    click.echo(f"wrote {out}: {tri.n} vertices, {red} red fill edges")


@main.command("bbp")
@click.option("--wheel", "wheel_file", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--h", "h_file", type=click.Path(exists=True, dir_okay=False), required=True,
              help="Pattern trigraph JSON; its total graph must be chordal.")
@click.option("--x", "x_file", type=click.Path(exists=True, dir_okay=False), required=True,
              help="JSON list of wheel vertex labels.")
@click.option("--u", "u_label", required=True, help="Start vertex label.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@_guard
def bbp_cmd(wheel_file, h_file, x_file, u_label, out):
    """Search below u for the pattern along branches, or emit a sparse path.

    The verdict is part of the JSON result: embedding, path, or
    prefix-exhausted.  All three are successful determinations.
    """
    w = _load_prefix(wheel_file)
    h = _load_trigraph(h_file)
    x = _load_subset(x_file)
    hrep = chordal.tree_representation(h)
    res = branchsearch.bounded_branch_search(w, hrep, x, u_label)
    obj = {"verdict": res.verdict, "u": u_label}
    if res.embedding is not None:
        obj["embedding"] = {str(k): v for k, v in res.embedding.items()}
    if res.subtree is not None:
        obj["subtree"] = sorted(res.subtree, key=label_key)
    if res.path is not None:
        obj["path"] = list(res.path)
        obj["hits"] = list(res.hits)
        obj["hit_count"] = res.hit_count
    _emit(formats.dumps(obj), out)


@main.command("decompose")
@click.option("--wheel", "wheel_file", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--x", "x_file", type=click.Path(exists=True, dir_okay=False), required=True,
              help="JSON list of wheel vertex labels to decompose.")
@click.option("--h", "h_file", type=click.Path(exists=True, dir_okay=False), required=True,
              help="Excluded pattern, plain graph JSON.")
@click.option("--t", "t", type=int, required=True)
@click.option("--out", type=click.Path(dir_okay=False), required=True, help="Decomposition JSON.")
@click.option("--trace", "trace_file", type=click.Path(dir_okay=False), default=None,
              help="Also write the recursion trace with separator certificates.")
@click.option("--path-source", type=click.Choice([dec.MIN_HITS, dec.BBP]),
              default=dec.MIN_HITS, show_default=True,
              help="How wall paths are produced.")
@_guard
def decompose_cmd(wheel_file, x_file, h_file, t, out, trace_file, path_source):
    """Balanced-separator tree decomposition of the real graph on a subset."""
    w = _load_prefix(wheel_file)
    x = _load_subset(x_file)
    h = _load_graph(h_file)
    trace = dec.decompose(w, x, h, t, path_source=path_source)
    _write_text(out, formats.dumps(formats.td_to_obj(trace.decomposition)))
    if trace_file is not None:
        obj = {
            "width": trace.width,
            "bounds": _clean(trace.bounds),
            "certificates": len(trace.certificates),
            "root": _trace_node_obj(trace.root),
        }
        _write_text(trace_file, formats.dumps(obj))
    click.echo(
        f"wrote {out}: width {trace.width}, {len(trace.decomposition.bags)} bags, "
        f"{len(trace.certificates)} separator certificates"
    )


def _trace_node_obj(node) -> dict:
    obj = {"part_size": node.part_size, "bag": node.bag_name}
    if node.certificate is not None:
        cert = node.certificate
        obj["separator"] = sorted(cert.separator, key=label_key)
        obj["balance"] = cert.balance
        obj["provenance"] = _clean(cert.provenance)
    if node.children:
        obj["children"] = [_trace_node_obj(ch) for ch in node.children]
    return obj


@main.command("twinwidth")
@click.option("--wheel", "wheel_file", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--per-step", "per_step", type=click.Path(dir_okay=False), default=None,
              help="Write the merge log as CSV: step, merged_a, merged_b, red_degree, outdegree.")
@_guard
def twinwidth_cmd(wheel_file, per_step):
    """Contract a wheel prefix layer by layer and report the red widths."""
    w = _load_prefix(wheel_file)
    merges = twinwidth.wheel_contraction_sequence(w)
    stats = twinwidth.sequence_width(w.real(), merges, record_steps=True)
    obj = {
        "n": w.trigraph.n,
        "merges": len(merges),
        "width": stats.width,
        "oriented_width": stats.oriented_width,
    }
    if per_step is not None:
        try:
            with open(per_step, "w", encoding="utf-8", newline="") as fh:
                writer = csv.writer(fh)
                writer.writerow(["step", "merged_a", "merged_b", "red_degree", "outdegree"])
                for s in stats.steps:
                    writer.writerow([s.step, s.merged_a, s.merged_b, s.red_degree, s.outdegree])
        except OSError as exc:
            raise PreconditionError(f"cannot write {per_step}: {exc}") from exc
    click.echo(formats.dumps(obj), nl=False)


@main.group("oracle")
def oracle_group():
    """Exact reference computations and certificate checks."""


@oracle_group.command("tw")
@click.option("--in", "in_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--cap", type=int, default=18, show_default=True, help="Largest allowed host.")
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Write the witness decomposition here.")
@click.pass_obj
@_guard
def oracle_tw(obj, in_path, cap, out):
    """Exact treewidth by branch and bound."""
    g = _load_graph(in_path)
    width, td = oracles.exact_treewidth(g, cap=cap, deadline=obj["deadline"])
    if out is not None:
        _write_text(out, formats.dumps(formats.td_to_obj(td)))
    click.echo(formats.dumps({"treewidth": width}), nl=False)


@oracle_group.command("girth")
@click.option("--in", "in_path", type=click.Path(exists=True, dir_okay=False), required=True)
@_guard
def oracle_girth(in_path):
    """Length of a shortest cycle; "infinity" for forests."""
    g = _load_graph(in_path)
    value = oracles.girth(g)
    click.echo(formats.dumps({"girth": "infinity" if value == float("inf") else value}), nl=False)


@oracle_group.command("omega")
@click.option("--in", "in_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.pass_obj
@_guard
def oracle_omega(obj, in_path):
    """Clique number by branch and bound."""
    g = _load_graph(in_path)
    click.echo(
        formats.dumps({"clique_number": oracles.clique_number(g, deadline=obj["deadline"])}),
        nl=False,
    )


@oracle_group.command("check-td")
@click.option("--graph", "graph_file", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--td", "td_file", type=click.Path(exists=True, dir_okay=False), required=True)
@_guard
def oracle_check_td(graph_file, td_file):
    """Verify a tree decomposition against its host; exits 1 with a witness
    when a condition fails."""
    g = _load_graph(graph_file)
    obj = _read_json(td_file)
    try:
        td = formats.td_from_obj(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise PreconditionError(f"{td_file} is not a decomposition object: {exc}") from exc
    check = oracles.verify_tree_decomposition(g, td)
    if check.ok:
        click.echo(formats.dumps({"holds": True, "width": td.width}), nl=False)
        return
    click.echo(
        formats.dumps(
            {"holds": False, "condition": check.condition, "witness": _clean(check.witness)}
        ),
        nl=False,
    )
    sys.exit(1)


@oracle_group.command("bramble")
@click.option("--wheel", "wheel_file", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--i", "layer_i", type=int, required=True, help="Deepest layer of the bramble.")
@click.pass_obj
@_guard
def oracle_bramble(obj, wheel_file, layer_i):
    """Order of the layer bramble on layers 0..i."""
    w = _load_prefix(wheel_file)
    bramble = oracles.layer_bramble(w, layer_i)
    order = oracles.bramble_order(bramble, deadline=obj["deadline"])
    click.echo(formats.dumps({"sets": len(list(bramble)), "order": order}), nl=False)


@main.command("layers-select")
@click.option("--wheel", "wheel_file", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Host wheel JSON; mutually exclusive with --fixture.")
@click.option("--fixture", is_flag=True, default=False,
              help="Use the bundled high-girth layered host.")
@click.option("--h", "h_file", type=click.Path(exists=True, dir_okay=False), default=None,
              help="Pattern graph JSON (default: the bundled girth-5 4-regular pattern).")
@click.option("--k", "k", type=int, required=True, help="Number of layers to select.")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@click.pass_obj
@_guard
def layers_select_cmd(obj, wheel_file, fixture, h_file, k, out):
    """Greedily pick k layers whose union avoids an induced copy of the pattern."""
    if fixture == (wheel_file is not None):
        raise click.UsageError("exactly one of --wheel and --fixture is required")
    w = dec.high_girth_host() if fixture else _load_prefix(wheel_file)
    h = dec.doubled_petersen() if h_file is None else _load_graph(h_file)
    layers = dec.select_hfree_layers(w, h, k, deadline=obj["deadline"])
    _emit(formats.dumps({"layers": layers}), out)


if __name__ == "__main__":
    main()
