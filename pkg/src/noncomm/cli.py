"""Command-line front end.

Subcommands build groups from descriptors or matrix-family flags, compute
graph invariants, run the classification, and drive the two verification
pipelines.  Every numeric result is routed through one JSON report shape::

    {"tool", "version", "config", "verdict", "assertions": [...], "data"}

with sorted keys and no timestamps, so repeated runs with the same flags are
byte-identical.  Exit codes: 0 when the verdict passes, 1 when a computed
verdict fails, 2 on usage or domain errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass

from . import __version__
from .classify import (
    _jsonable,
    ac_nonsolvable_case,
    ac_solvable_case,
    is_ac_group,
    rival_scan,
    verify_theorem_gl,
    verify_theorem_sl,
)
from .constructions import build, order6_catalog, order24_catalog
from .ffield import make_field
from .groups import Group
from .matgroups import _prime_power, gl2, maximal_abelian_partition, pgl2, psl2, sl2
from .ncgraph import (
    ISO_VERTEX_LIMIT,
    CliqueBudgetError,
    build_graph,
    centralizer_profile,
    clique_number,
    fingerprint,
    graphs_isomorphic,
)

FIELD_CLI_CAP = 81

_FAMILIES = {"gl2": gl2, "sl2": sl2, "pgl2": pgl2, "psl2": psl2}


class UsageError(Exception):
    """Bad flags or an out-of-domain request; maps to exit code 2."""


@dataclass
class RunConfig:
    command: str
    group: str | None = None
    other: str | None = None
    q: int | None = None
    order: int | None = None
    budget: float | None = None
    format: str | None = None
    output: str | None = None

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "group": self.group,
            "other": self.other,
            "q": self.q,
            "order": self.order,
            "budget": self.budget,
            "format": self.format,
            "output": self.output,
        }


def resolve_group(text: str) -> Group:
    """Group from a spec string: family:q (e.g. sl2:5) or a descriptor."""
    t = text.strip()
    m = re.fullmatch(r"(gl2|sl2|pgl2|psl2):(\d+)", t)
    if m:
        return _FAMILIES[m.group(1)](int(m.group(2)))
    return build(t)


def _add_group_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--gl2", type=int, metavar="Q", help="GL(2,q)")
    p.add_argument("--sl2", type=int, metavar="Q", help="SL(2,q)")
    p.add_argument("--pgl2", type=int, metavar="Q", help="PGL(2,q)")
    p.add_argument("--psl2", type=int, metavar="Q", help="PSL(2,q)")
    p.add_argument(
        "--spec",
        metavar="DESC",
        help="descriptor or family:q, e.g. D24, semidirect(C5,C4,x^2), sl2:5",
    )


def _group_from_flags(args) -> tuple[str, Group]:
    picks = [
        (name, getattr(args, name))
        for name in ("gl2", "sl2", "pgl2", "psl2")
        if getattr(args, name) is not None
    ]
    if args.spec is not None:
        picks.append(("spec", args.spec))
    if len(picks) != 1:
        raise UsageError("pick exactly one of --gl2/--sl2/--pgl2/--psl2/--spec")
    kind, val = picks[0]
    if kind == "spec":
        return str(val), resolve_group(str(val))
    return f"{kind}:{val}", _FAMILIES[kind](int(val))


# -- subcommand handlers -------------------------------------------------------
# each returns (config, verdict, assertions, data); assertions are dicts with
# the keys name/expected/computed/pass


def _assert_entry(name: str, expected, computed) -> dict:
    return {
        "name": name,
        "expected": _jsonable(expected),
        "computed": _jsonable(computed),
        "pass": expected == computed,
    }


def _cmd_field(args):
    q = args.q
    if q > FIELD_CLI_CAP:
        raise UsageError(f"q above the CLI cap {FIELD_CLI_CAP}")
    p, n = _prime_power(q)
    f = make_field(p, n)
    mul = f.mul_table
    generator = None
    for i in range(1, q):
        count, acc = 1, i
        while acc != 1:
            acc = int(mul[acc, i])
            count += 1
        if count == q - 1:
            generator = i
            break
    assertions = [_assert_entry("nonzero_elements_cyclic", True, generator is not None)]
    data = {
        "q": q,
        "p": p,
        "n": n,
        "modulus": list(f.modulus),
        "generator_index": generator,
    }
    cfg = RunConfig(command="field", q=q)
    return cfg, all(a["pass"] for a in assertions), assertions, data


def _cmd_group_build(args):
    spec, g = _group_from_flags(args)
    orders = g.element_orders
    hist = {}
    for o in orders.tolist():
        hist[o] = hist.get(o, 0) + 1
    data = {
        "label": g.label,
        "order": g.order,
        "center_order": g.center().order,
        "abelian": g.is_abelian(),
        "element_order_histogram": {str(k): v for k, v in sorted(hist.items())},
        "meta": _jsonable(g.meta),
    }
    return RunConfig(command="group build", group=spec), True, [], data


def _cmd_group_partition(args):
    spec, g = _group_from_flags(args)
    report = maximal_abelian_partition(g)
    assertions = [
        _assert_entry("covers", True, report.covers),
        _assert_entry(
            "component_mass",
            g.order - g.center().order,
            sum((o - g.center().order) * c for o, c in report.order_histogram.items()),
        ),
    ]
    data = report.to_json()
    cfg = RunConfig(command="group partition", group=spec)
    return cfg, all(a["pass"] for a in assertions), assertions, data


def _cmd_graph_profile(args):
    spec, g = _group_from_flags(args)
    graph = build_graph(g)
    prof = centralizer_profile(g)
    assertions = [
        _assert_entry(
            "multiset_mass", g.order - g.center().order, sum(prof.W.values())
        ),
        _assert_entry("vertex_count", g.order - g.center().order, graph.n_vertices),
    ]
    data = {
        "label": graph.label,
        "n_vertices": graph.n_vertices,
        "n_edges": graph.n_edges,
        "degree_min": int(graph.degrees.min()),
        "degree_max": int(graph.degrees.max()),
        "profile": prof.to_json(),
        "fingerprint": fingerprint(graph).to_json(),
    }
    cfg = RunConfig(command="graph profile", group=spec)
    return cfg, all(a["pass"] for a in assertions), assertions, data


def _cmd_graph_clique(args):
    spec, g = _group_from_flags(args)
    graph = build_graph(g)
    cfg = RunConfig(command="graph clique", group=spec, budget=args.budget)
    try:
        omega, witness = clique_number(graph, time_budget=args.budget)
    except CliqueBudgetError as e:
        data = {
            "label": graph.label,
            "complete": False,
            "best_size": e.best_size,
            "best_witness": [graph.element_key(v) for v in e.best_witness],
        }
        return cfg, False, [_assert_entry("search_complete", True, False)], data
    cm = g.commute_matrix
    verts = [graph.vertices[v] for v in witness]
    pairwise = all(
        not cm[a, b] for i, a in enumerate(verts) for b in verts[i + 1 :]
    )
    assertions = [
        _assert_entry("search_complete", True, True),
        _assert_entry("witness_size", omega, len(witness)),
        _assert_entry("witness_pairwise_noncommuting", True, pairwise),
    ]
    data = {
        "label": graph.label,
        "omega": omega,
        "witness": [graph.element_key(v) for v in witness],
    }
    return cfg, all(a["pass"] for a in assertions), assertions, data


def _cmd_graph_export(args):
    spec, g = _group_from_flags(args)
    graph = build_graph(g)
    cfg = RunConfig(
        command="graph export", group=spec, format=args.format, output=args.output
    )
    if args.format == "dimacs":
        text = graph.to_dimacs()
        if args.output:
            with open(args.output, "w") as fh:
                fh.write(text)
        sys.stdout.write(text)
        return None
    data = graph.to_json()
    return cfg, True, [], data


def _cmd_graph_compare(args):
    ga = resolve_group(args.a)
    gb = resolve_group(args.b)
    graph_a, graph_b = build_graph(ga), build_graph(gb)
    fp_match = fingerprint(graph_a) == fingerprint(graph_b)
    iso_found: bool | None = None
    if fp_match:
        if max(graph_a.n_vertices, graph_b.n_vertices) <= ISO_VERTEX_LIMIT:
            iso_found = graphs_isomorphic(graph_a, graph_b) is not None
    else:
        iso_found = False
    assertions = [
        _assert_entry("fingerprints_match", True, fp_match),
        _assert_entry("isomorphic", True, iso_found),
    ]
    data = {
        "a": {"label": graph_a.label, "n_vertices": graph_a.n_vertices},
        "b": {"label": graph_b.label, "n_vertices": graph_b.n_vertices},
        "fingerprints_match": fp_match,
        "isomorphic": iso_found,
    }
    cfg = RunConfig(command="graph compare", group=args.a, other=args.b)
    return cfg, bool(fp_match and iso_found), assertions, data


def _cmd_classify(args):
    g = resolve_group(args.group)
    cfg = RunConfig(command="classify", group=args.group)
    ac = is_ac_group(g)
    if not ac:
        data = {"label": g.label, "ac": ac.to_json()}
        return cfg, False, [_assert_entry("is_ac", True, False)], data
    report = ac_solvable_case(g) if g.is_solvable() else ac_nonsolvable_case(g)
    assertions = [
        _assert_entry("is_ac", True, True),
        _assert_entry("case_found", True, report.failure is None),
    ]
    return cfg, all(a["pass"] for a in assertions), assertions, report.to_json()


def _cmd_verify(args):
    pipeline = verify_theorem_sl if args.family == "sl" else verify_theorem_gl
    report = pipeline(args.q)
    cfg = RunConfig(command=f"verify {args.family}", q=args.q)
    assertions = [a.to_json() for a in report.assertions]
    data = dict(report.data)
    data["subject"] = report.subject
    if report.notes:
        data["notes"] = list(report.notes)
    return cfg, report.verdict, assertions, data


def _cmd_rivals(args):
    catalogs = {6: order6_catalog, 24: order24_catalog}
    if args.order not in catalogs:
        raise UsageError(f"no catalog for order {args.order}; have {sorted(catalogs)}")
    target_group = resolve_group(args.target)
    if target_group.order != args.order:
        raise UsageError(
            f"target {target_group.label} has order {target_group.order}, not {args.order}"
        )
    graph = build_graph(target_group)
    scan = rival_scan(args.order, graph, catalogs[args.order]())
    undecided = [e.label for e in scan.entries if e.isomorphic is None]
    assertions = [
        _assert_entry("matches_found", True, len(scan.matches) > 0),
        _assert_entry("all_ties_decided", [], undecided),
    ]
    cfg = RunConfig(command="rivals", group=args.target, order=args.order)
    return cfg, all(a["pass"] for a in assertions), assertions, scan.to_json()


# -- parser and entry ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="noncomm",
        description="finite groups, non-commuting graphs, and their invariants",
    )
    top.add_argument("--format", choices=["json", "text"], default="json")
    top.add_argument("--output", metavar="PATH", help="also write the report to PATH")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field", help="finite field summary")
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(handler=_cmd_field)

    pg = sub.add_parser("group", help="build groups and partitions")
    gsub = pg.add_subparsers(dest="subcommand", required=True)
    p = gsub.add_parser("build", help="group summary")
    _add_group_flags(p)
    p.set_defaults(handler=_cmd_group_build)
    p = gsub.add_parser("partition", help="maximal abelian partition")
    _add_group_flags(p)
    p.set_defaults(handler=_cmd_group_partition)

    pr = sub.add_parser("graph", help="non-commuting graph operations")
    rsub = pr.add_subparsers(dest="subcommand", required=True)
    p = rsub.add_parser("profile", help="degrees and centralizer multisets")
    _add_group_flags(p)
    p.set_defaults(handler=_cmd_graph_profile)
    p = rsub.add_parser("clique", help="exact clique number with witness")
    _add_group_flags(p)
    p.add_argument("--budget", type=float, default=300.0, metavar="SECONDS")
    p.set_defaults(handler=_cmd_graph_clique)
    p = rsub.add_parser("export", help="write the graph out")
    _add_group_flags(p)
    p.add_argument("--format", choices=["dimacs", "json"], default="json")
    p.add_argument("--output", metavar="PATH")
    p.set_defaults(handler=_cmd_graph_export)
    p = rsub.add_parser("compare", help="fingerprint and isomorphism check")
    p.add_argument("a", help="group spec, e.g. sl2:3 or D24")
    p.add_argument("b")
    p.set_defaults(handler=_cmd_graph_compare)

    p = sub.add_parser("classify", help="AC check plus case classification")
    p.add_argument("--group", required=True, metavar="SPEC")
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("verify", help="run a verification pipeline")
    p.add_argument("family", choices=["sl", "gl"])
    p.add_argument("--q", type=int, required=True)
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("rivals", help="scan a catalog against a target graph")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--target", required=True, metavar="SPEC")
    p.set_defaults(handler=_cmd_rivals)

    return top


def _render_text(report: dict, lines=None, prefix="") -> list[str]:
    if lines is None:
        lines = []
    for key in sorted(report):
        val = report[key]
        path = f"{prefix}.{key}" if prefix else key
        if isinstance(val, dict):
            _render_text(val, lines, path)
        elif isinstance(val, list) and val and isinstance(val[0], dict):
            for i, item in enumerate(val):
                _render_text(item, lines, f"{path}[{i}]")
        else:
            lines.append(f"{path} = {json.dumps(val)}")
    return lines


def _emit(report: dict, fmt: str, output: str | None) -> None:
    if fmt == "text":
        text = "\n".join(_render_text(report)) + "\n"
    else:
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    sys.stdout.write(text)
    if output:
        with open(output, "w") as fh:
            fh.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code else 0
    try:
        result = args.handler(args)
    except UsageError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    except ValueError as e:
        sys.stderr.write(f"error: {e}\n")
        return 2
    if result is None:  # raw export already written
        return 0
    cfg, verdict, assertions, data = result
    report = {
        "tool": "noncomm",
        "version": __version__,
        "config": cfg.to_json(),
        "verdict": verdict,
        "assertions": assertions,
        "data": _jsonable(data),
    }
    _emit(report, args.format, args.output)
    return 0 if verdict else 1


if __name__ == "__main__":
    raise SystemExit(main())
