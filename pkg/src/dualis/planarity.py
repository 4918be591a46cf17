"""Planarity testing with embedding extraction, and connectivity
classification (connected / biconnected / triconnected, split pairs).

The planarity test collapses loops and parallel edges (they never affect
planarity), runs a standard planarity algorithm on the simple residue and
reinserts the collapsed edges next to their anchor in the returned
rotation.  Connectivity is classified by brute-force vertex deletion;
quadratic time is fine here, correctness is what is gated on.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import networkx as nx

from .multigraph import Dart, InvalidGraphError, Multigraph, RotationSystem


@dataclass(frozen=True)
class ConnectivityReport:
    is_connected: bool
    is_biconnected: bool
    is_triconnected: bool
    cutvertices: tuple
    separation_pairs: tuple  # of 2-tuples


def _components_without(graph: Multigraph, removed: set) -> int:
    verts = [v for v in graph.vertices if v not in removed]
    if not verts:
        return 0
    adj = {v: set() for v in verts}
    for _, (u, v) in graph.edges:
        if u in removed or v in removed or u == v:
            continue
        adj[u].add(v)
        adj[v].add(u)
    seen: set = set()
    count = 0
    for s in verts:
        if s in seen:
            continue
        count += 1
        stack = [s]
        seen.add(s)
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    return count


def classify_connectivity(graph: Multigraph) -> ConnectivityReport:
    """Classify a multigraph.

    Biconnected means connected, at least 2 vertices, loop-free and without
    cutvertices (so K2 and dipoles qualify; a lone loop does not).
    Triconnected additionally requires a simple graph on >= 4 vertices with
    no separation pair.
    """
    connected = graph.is_connected()
    has_loops = any(graph.is_loop(e) for e in graph.edge_ids)
    n = graph.num_vertices()

    cutvertices = []
    if connected and n >= 3:
        for v in graph.vertices:
            if _components_without(graph, {v}) > 1:
                cutvertices.append(v)
    cutvertices.sort(key=repr)

    separation_pairs = []
    if connected and n >= 4:
        verts = sorted(graph.vertices, key=repr)
        for i in range(len(verts)):
            for j in range(i + 1, len(verts)):
                if _components_without(graph, {verts[i], verts[j]}) > 1:
                    separation_pairs.append((verts[i], verts[j]))

    biconnected = (
        connected and n >= 2 and not has_loops and not cutvertices and graph.num_edges() >= 1
    )
    triconnected = biconnected and n >= 4 and graph.is_simple() and not separation_pairs
    return ConnectivityReport(
        connected, biconnected, triconnected, tuple(cutvertices), tuple(separation_pairs)
    )


def split_pairs(graph: Multigraph) -> tuple:
    """Split pairs of a biconnected graph: separation pairs plus adjacent pairs."""
    report = classify_connectivity(graph)
    pairs = set(report.separation_pairs)
    for _, (u, v) in graph.edges:
        if u != v:
            pairs.add(tuple(sorted((u, v), key=repr)))
    return tuple(sorted(pairs, key=repr))


# ---------------------------------------------------------------------------
# Planar embedding
# ---------------------------------------------------------------------------


def planar_embed(graph: Multigraph) -> Optional[RotationSystem]:
    """Return a genus-0 rotation system of a connected multigraph, or None.

    Loops and parallels are stripped before the planarity test and
    reinserted deterministically: an extra parallel edge goes directly next
    to its retained partner (creating a digon face), a loop's two darts go
    consecutively at the end of its vertex's rotation.
    """
    if not graph.is_connected():
        raise InvalidGraphError("planar_embed requires a connected graph")

    loops = []
    parallels = []  # (extra_edge, anchor_edge)
    anchor_for_pair: dict = {}
    simple_edges = []
    for eid, (u, v) in graph.edges:
        if u == v:
            loops.append(eid)
            continue
        key = frozenset((u, v))
        if key in anchor_for_pair:
            parallels.append((eid, anchor_for_pair[key]))
        else:
            anchor_for_pair[key] = eid
            simple_edges.append((eid, (u, v)))

    nxg = nx.Graph()
    nxg.add_nodes_from(sorted(graph.vertices, key=repr))
    edge_of_pair = {}
    for eid, (u, v) in simple_edges:
        nxg.add_edge(u, v)
        edge_of_pair[frozenset((u, v))] = eid
    ok, embedding = nx.check_planarity(nxg, counterexample=False)
    if not ok:
        return None

    rot: dict = {v: [] for v in graph.vertices}
    data = embedding.get_data()
    for v in graph.vertices:
        for w in data.get(v, []):
            eid = edge_of_pair[frozenset((v, w))]
            ends = graph.endpoints(eid)
            slot = 1 if ends[0] == v else 2
            rot[v].append(Dart(eid, slot))

    # reinsert parallels: dart at u right after the anchor's, dart at v
    # right before the anchor's (this closes a digon face with the anchor)
    for eid, anchor in parallels:
        au, av = graph.endpoints(anchor)
        anchor_du = Dart(anchor, 1)
        anchor_dv = Dart(anchor, 2)
        ends = graph.endpoints(eid)
        new_du = Dart(eid, 1 if ends[0] == au else 2)
        new_dv = new_du.twin
        iu = rot[au].index(anchor_du)
        rot[au].insert(iu + 1, new_du)
        iv = rot[av].index(anchor_dv)
        rot[av].insert(iv, new_dv)

    for eid in loops:
        v = graph.endpoints(eid)[0]
        rot[v].append(Dart(eid, 1))
        rot[v].append(Dart(eid, 2))

    return RotationSystem(tuple((v, tuple(rot[v])) for v in graph.vertices))
