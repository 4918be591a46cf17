"""Batch command-line front end.  Every subcommand is a thin adapter over
the library; output is deterministic byte-for-byte for fixed inputs.

Exit codes: 0 = yes/success, 1 = decision no, 2 = usage or input error,
3 = budget exceeded.
"""

from __future__ import annotations

import argparse
import sys

from .dual_spqr import dualize_tree, normalize
from .hardness import (
    gen_self_dual_instance,
    mpd_answer,
    parse_instance,
    three_partition_graphs,
)
from .isomorphism import BudgetExceededError, canonical_form
from .multigraph import (
    InvalidGraphError,
    Multigraph,
    NotPlanarError,
    RotationSystem,
    adhesion,
    dual_graph,
    parse_graph,
    serialize_graph,
    trace_faces,
)
from .duality import NotBiconnectedError, graph_self_dual, mutual_duality, skeleton_graph
from .oracle import dual_set, enumerate_planar_rotations
from .planarity import planar_embed
from .spqr import build_spqr, dump_tree


def _read_graph(path, need_rotation=False):
    with open(path, "r", encoding="utf-8") as fh:
        graph, rho = parse_graph(fh.read())
    if rho is None and need_rotation:
        rho = planar_embed(graph)
        if rho is None:
            raise NotPlanarError(f"{path}: graph is not planar")
    return graph, rho


def _dot(graph: Multigraph) -> str:
    lines = ["graph G {"]
    names = {v: f"v{i}" for i, v in enumerate(graph.vertices)}
    for v in graph.vertices:
        lines.append(f'  {names[v]} [label="{v}"];')
    for eid, (u, v) in graph.edges:
        lines.append(f'  {names[u]} -- {names[v]} [label="{eid}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _emit_graph(graph, rho, fmt):
    if fmt == "dot":
        sys.stdout.write(_dot(graph))
    else:
        sys.stdout.write(serialize_graph(graph, rho))


def _decision(flag: bool) -> int:
    print("YES" if flag else "NO")
    return 0 if flag else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="dualis",
        description="planar duality toolkit: duals, SPQR-trees, duality decisions",
    )
    parser.add_argument("--budget", type=int, default=None, help="enumeration budget")
    parser.add_argument("--seed", type=int, default=0, help="seed for sampled corpora")
    parser.add_argument("--format", choices=("text", "dot"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dual", help="dual graph of an embedded graph")
    p.add_argument("graph")
    p = sub.add_parser("faces", help="faces of an embedded graph")
    p.add_argument("graph")
    p = sub.add_parser("embed", help="compute a planar embedding")
    p.add_argument("graph")
    p = sub.add_parser("spqr", help="SPQR-tree dump")
    p.add_argument("graph")
    p = sub.add_parser("dual-spqr", help="normalized dual SPQR-tree dump")
    p.add_argument("graph")
    p = sub.add_parser("skeleton-graph", help="skeleton graph of the SPQR-tree")
    p.add_argument("graph")
    p = sub.add_parser("test-duality", help="mutual planar duality decision")
    p.add_argument("graph1")
    p.add_argument("graph2")
    p = sub.add_parser("self-dual", help="graph self-duality decision")
    p.add_argument("graph")
    p = sub.add_parser("enumerate-duals", help="all duals over planar embeddings (oracle)")
    p.add_argument("graph")
    p = sub.add_parser("gen-3p", help="generate the 3-partition reduction pair")
    p.add_argument("instance")
    p.add_argument("--simple", action="store_true")
    p.add_argument("-o", "--out", nargs=2, metavar=("G1", "G2"), required=True)
    p = sub.add_parser("verify-3p", help="decide the generated duality instance")
    p.add_argument("instance")
    p = sub.add_parser("gen-selfdual", help="generate the self-duality instance")
    p.add_argument("instance")
    p = sub.add_parser("adhesion", help="identify a vertex with a dual face vertex")
    p.add_argument("graph")
    p.add_argument("vertex")
    p.add_argument("face", type=int)

    args = parser.parse_args(argv)
    try:
        return _run(args)
    except BudgetExceededError as exc:
        print(f"dualis: {exc}", file=sys.stderr)
        return 3
    except (InvalidGraphError, NotPlanarError, NotBiconnectedError, OSError, ValueError) as exc:
        print(f"dualis: {exc}", file=sys.stderr)
        return 2


def _run(args) -> int:
    cmd = args.command
    if cmd == "dual":
        graph, rho = _read_graph(args.graph, need_rotation=True)
        d, drho, _ = dual_graph(graph, rho)
        _emit_graph(d, drho, args.format)
        return 0
    if cmd == "faces":
        graph, rho = _read_graph(args.graph, need_rotation=True)
        fs = trace_faces(graph, rho)
        for i, cyc in enumerate(fs.faces):
            darts = " ".join(f"{d.edge}.{d.slot}" for d in cyc)
            print(f"face {i}: {darts}")
        return 0
    if cmd == "embed":
        graph, _ = _read_graph(args.graph)
        rho = planar_embed(graph)
        if rho is None:
            print("NONPLANAR")
            return 1
        _emit_graph(graph, rho, args.format)
        return 0
    if cmd == "spqr":
        graph, _ = _read_graph(args.graph)
        sys.stdout.write(dump_tree(build_spqr(graph)))
        return 0
    if cmd == "dual-spqr":
        graph, rho = _read_graph(args.graph, need_rotation=True)
        tree = build_spqr(graph)
        sys.stdout.write(dump_tree(normalize(dualize_tree(tree, rho))))
        return 0
    if cmd == "skeleton-graph":
        graph, _ = _read_graph(args.graph)
        sk = skeleton_graph(build_spqr(graph))
        _emit_graph(sk.graph, None, args.format)
        return 0
    if cmd == "test-duality":
        g1, _ = _read_graph(args.graph1)
        g2, _ = _read_graph(args.graph2)
        return _decision(mutual_duality(g1, g2))
    if cmd == "self-dual":
        graph, _ = _read_graph(args.graph)
        return _decision(graph_self_dual(graph))
    if cmd == "enumerate-duals":
        graph, _ = _read_graph(args.graph)
        reps = {}
        for rho in enumerate_planar_rotations(graph, budget=args.budget):
            d, _, _ = dual_graph(graph, rho)
            reps.setdefault(canonical_form(d), d)
        print(f"{len(reps)} dual graphs")
        for key in sorted(reps, key=lambda b: b.hex()):
            sys.stdout.write(serialize_graph(reps[key]))
            print("---")
        return 0
    if cmd == "gen-3p":
        with open(args.instance, "r", encoding="utf-8") as fh:
            inst = parse_instance(fh.read())
        g1, g2 = three_partition_graphs(inst, simple=args.simple)
        with open(args.out[0], "w", encoding="utf-8") as fh:
            fh.write(serialize_graph(g1))
        with open(args.out[1], "w", encoding="utf-8") as fh:
            fh.write(serialize_graph(g2))
        return 0
    if cmd == "verify-3p":
        with open(args.instance, "r", encoding="utf-8") as fh:
            inst = parse_instance(fh.read())
        return _decision(mpd_answer(inst, budget=args.budget))
    if cmd == "gen-selfdual":
        with open(args.instance, "r", encoding="utf-8") as fh:
            inst = parse_instance(fh.read())
        _emit_graph(gen_self_dual_instance(inst), None, args.format)
        return 0
    if cmd == "adhesion":
        graph, rho = _read_graph(args.graph, need_rotation=True)
        from .multigraph import _parse_id

        v = _parse_id(args.vertex)
        _emit_graph(adhesion(graph, rho, v, args.face), None, args.format)
        return 0
    raise InvalidGraphError(f"unknown command {cmd!r}")


if __name__ == "__main__":
    sys.exit(main())
