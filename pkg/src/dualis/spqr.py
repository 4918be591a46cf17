"""Decomposition trees and SPQR-trees of biconnected planar multigraphs:
construction, contraction, validation, represented graph and embedding
enumeration.

Construction decomposes recursively at split pairs, then merges adjacent
same-type S/P nodes, which yields the canonical tree: inner skeletons are
all-virtual cycles (S), parallel bunches (P) or triconnected simple graphs
(R); every real edge sits in a Q-leaf.  Virtual edges are oriented; twin
edges across a tree edge are glued source-to-source in a standard tree and
source-to-target in a reversed tree.  Trees are immutable; every
transformation returns a new tree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .multigraph import Dart, InvalidGraphError, Multigraph, RotationSystem
from .planarity import classify_connectivity, planar_embed


class NotDecomposableError(ValueError):
    """Raised when SPQR construction preconditions fail."""


@dataclass(frozen=True)
class SkeletonEdge:
    """Oriented skeleton edge; real edges carry the represented edge id."""

    id: int
    source: object
    target: object
    kind: str  # "virtual" | "real"
    real_id: object = None

    def reversed_copy(self) -> "SkeletonEdge":
        return SkeletonEdge(self.id, self.target, self.source, self.kind, self.real_id)

    def dart_at(self, v) -> Dart:
        if self.source == v:
            return Dart(self.id, 1)
        if self.target == v:
            return Dart(self.id, 2)
        raise KeyError(f"{v!r} is not an endpoint of skeleton edge {self.id}")


@dataclass(frozen=True)
class Skeleton:
    vertices: tuple
    edges: tuple  # of SkeletonEdge

    def __post_init__(self):
        object.__setattr__(self, "_by_id", {e.id: e for e in self.edges})

    def edge(self, eid: int) -> SkeletonEdge:
        return self._by_id[eid]

    def has_edge(self, eid: int) -> bool:
        return eid in self._by_id

    def edge_ids(self) -> tuple:
        return tuple(e.id for e in self.edges)

    def virtual_edges(self) -> tuple:
        return tuple(e for e in self.edges if e.kind == "virtual")

    def real_edges(self) -> tuple:
        return tuple(e for e in self.edges if e.kind == "real")

    def degree(self, v) -> int:
        return sum((e.source == v) + (e.target == v) for e in self.edges)

    def as_multigraph(self) -> Multigraph:
        return Multigraph(
            tuple(self.vertices), tuple((e.id, (e.source, e.target)) for e in self.edges)
        )


@dataclass(frozen=True)
class TreeNode:
    id: int
    type: Optional[str]  # "S" | "P" | "Q" | "R" | None (untyped / trivial)
    skeleton: Skeleton


@dataclass(frozen=True)
class DecompositionTree:
    """Nodes plus a twin pairing between virtual edges across tree edges."""

    nodes: tuple  # of TreeNode
    twins: tuple  # of (edge_id, edge_id), each pair sorted
    reversed_semantics: bool = False
    _node_map: dict = field(init=False, repr=False, compare=False)
    _twin_map: dict = field(init=False, repr=False, compare=False)
    _owner: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_node_map", {n.id: n for n in self.nodes})
        tm = {}
        for a, b in self.twins:
            tm[a] = b
            tm[b] = a
        object.__setattr__(self, "_twin_map", tm)
        owner = {}
        for n in self.nodes:
            for e in n.skeleton.edges:
                if e.id in owner:
                    raise InvalidGraphError(f"skeleton edge id {e.id} appears twice")
                owner[e.id] = n.id
        object.__setattr__(self, "_owner", owner)

    # -- accessors --------------------------------------------------------

    def node(self, node_id) -> TreeNode:
        return self._node_map[node_id]

    def node_ids(self) -> tuple:
        return tuple(n.id for n in self.nodes)

    def twin(self, eid: int) -> int:
        return self._twin_map[eid]

    def owner_of(self, eid: int):
        return self._owner[eid]

    def corr(self, eid: int):
        """The neighbor node a virtual edge corresponds to."""
        return self._owner[self._twin_map[eid]]

    def tree_edges(self) -> list:
        """(node_a, node_b, eid_a, eid_b) per twin pair, deterministic order."""
        out = []
        for a, b in sorted(self.twins):
            out.append((self._owner[a], self._owner[b], a, b))
        return out

    def neighbors(self, node_id) -> list:
        out = []
        for e in self.node(node_id).skeleton.edges:
            if e.kind == "virtual" and e.id in self._twin_map:
                out.append(self._owner[self._twin_map[e.id]])
        return out

    def replace_node(self, new_node: TreeNode) -> "DecompositionTree":
        nodes = tuple(new_node if n.id == new_node.id else n for n in self.nodes)
        return DecompositionTree(nodes, self.twins, self.reversed_semantics)


# ---------------------------------------------------------------------------
# Gluing / contraction
# ---------------------------------------------------------------------------


def _glue_rename(skel_a: Skeleton, skel_b: Skeleton, eps_a: SkeletonEdge,
                 eps_b: SkeletonEdge, node_b_id, reversed_semantics: bool) -> dict:
    """Vertex renaming applied to skel_b when gluing at the twin pair.

    Standard semantics identifies source with source and target with
    target; reversed semantics identifies them crosswise.  Other vertices
    of skel_b keep their ids unless they collide with skel_a's.
    """
    if reversed_semantics:
        ident = {eps_b.target: eps_a.source, eps_b.source: eps_a.target}
    else:
        ident = {eps_b.source: eps_a.source, eps_b.target: eps_a.target}
    taken = set(skel_a.vertices)
    rename = {}
    for v in skel_b.vertices:
        if v in ident:
            rename[v] = ident[v]
        elif v in taken:
            rename[v] = ("g", node_b_id, v)
        else:
            rename[v] = v
    return rename


def _glue_skeletons(skel_a: Skeleton, skel_b: Skeleton, eid_a: int, eid_b: int,
                    node_b_id, reversed_semantics: bool):
    """Glue two skeletons at a twin pair and drop the merged virtual edge.

    Returns ``(skeleton, rename_b)``.
    """
    eps_a = skel_a.edge(eid_a)
    eps_b = skel_b.edge(eid_b)
    rename = _glue_rename(skel_a, skel_b, eps_a, eps_b, node_b_id, reversed_semantics)
    vertices = list(skel_a.vertices)
    for v in skel_b.vertices:
        rv = rename[v]
        if rv not in set(vertices):
            vertices.append(rv)
    edges = [e for e in skel_a.edges if e.id != eid_a]
    for e in skel_b.edges:
        if e.id == eid_b:
            continue
        edges.append(SkeletonEdge(e.id, rename[e.source], rename[e.target], e.kind, e.real_id))
    return Skeleton(tuple(vertices), tuple(edges)), rename


def contract_edge(tree: DecompositionTree, tree_edge) -> DecompositionTree:
    """Contract one tree edge, gluing the two skeletons at their twins.

    ``tree_edge`` is a pair of node ids.  The merged node gets a fresh id
    and no type; the represented graph is unchanged.
    """
    na, nb = tree_edge
    pair = None
    for a_id, b_id, ea, eb in tree.tree_edges():
        if {a_id, b_id} == {na, nb}:
            pair = (a_id, b_id, ea, eb)
            break
    if pair is None:
        raise InvalidGraphError(f"no tree edge between {na!r} and {nb!r}")
    a_id, b_id, ea, eb = pair
    node_a, node_b = tree.node(a_id), tree.node(b_id)
    merged_skel, _ = _glue_skeletons(
        node_a.skeleton, node_b.skeleton, ea, eb, b_id, tree.reversed_semantics
    )
    fresh = max(int(n) if isinstance(n, int) else 0 for n in tree.node_ids()) + 1
    merged = TreeNode(fresh, None, merged_skel)
    nodes = tuple(n for n in tree.nodes if n.id not in (a_id, b_id)) + (merged,)
    twins = tuple(p for p in tree.twins if p != tuple(sorted((ea, eb))))
    return DecompositionTree(nodes, twins, tree.reversed_semantics)


def represented_graph(tree: DecompositionTree) -> Multigraph:
    """Contract every tree edge; the final single skeleton is the result.

    Vertex ids are kept where the gluing process leaves them unambiguous
    (for freshly built trees these are the original graph's ids).
    """
    t = tree
    while t.twins:
        a, b = sorted(t.twins)[0]
        t = contract_edge(t, (t.owner_of(a), t.owner_of(b)))
    if len(t.nodes) != 1:
        raise InvalidGraphError("tree is not connected")
    skel = t.nodes[0].skeleton
    for e in skel.edges:
        if e.kind != "real":
            raise InvalidGraphError("unpaired virtual edge left after contraction")
    ids = [e.real_id for e in skel.edges]
    if len(set(ids)) != len(ids):
        raise InvalidGraphError("represented edge ids are not unique")
    return Multigraph(
        tuple(skel.vertices), tuple((e.real_id, (e.source, e.target)) for e in skel.edges)
    )


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------


class _Builder:
    """Mutable scratch state for buildSPQR; frozen into a tree at the end."""

    def __init__(self):
        self.next_edge = 0
        self.next_node = 0
        self.skeletons = {}  # node id -> (type, list of SkeletonEdge, set of vertices)
        self.twins = []

    def new_edge_id(self) -> int:
        self.next_edge += 1
        return self.next_edge - 1

    def new_node(self, type_, vertices, edges) -> int:
        nid = self.next_node
        self.next_node += 1
        self.skeletons[nid] = (type_, list(edges), list(vertices))
        return nid

    def freeze(self) -> DecompositionTree:
        nodes = []
        for nid in sorted(self.skeletons):
            type_, edges, vertices = self.skeletons[nid]
            nodes.append(TreeNode(nid, type_, Skeleton(tuple(vertices), tuple(edges))))
        twins = tuple(sorted(tuple(sorted(p)) for p in self.twins))
        return DecompositionTree(tuple(nodes), twins, False)


def _vertex_key(v):
    return repr(v)


def _is_cycle(vertices, edges) -> bool:
    if len(edges) < 3 or len(edges) != len(vertices):
        return False
    deg = {v: 0 for v in vertices}
    seen_pairs = set()
    for e in edges:
        if e.source == e.target:
            return False
        key = frozenset((e.source, e.target))
        if key in seen_pairs:
            return False
        seen_pairs.add(key)
        deg[e.source] += 1
        deg[e.target] += 1
    if any(d != 2 for d in deg.values()):
        return False
    return Multigraph(tuple(vertices), tuple((e.id, (e.source, e.target)) for e in edges)).is_connected()


def _split_components(vertices, edges, u, v):
    """Split members of {u, v}: each (u,v) edge alone, plus each component
    of the skeleton minus {u, v} together with its edges into the pair."""
    direct = [e for e in edges if {e.source, e.target} == {u, v}]
    rest = [e for e in edges if {e.source, e.target} != {u, v}]
    adj = {w: set() for w in vertices if w not in (u, v)}
    for e in rest:
        a, b = e.source, e.target
        if a in adj and b in adj:
            adj[a].add(b)
            adj[b].add(a)
    comp_of = {}
    comps = []
    for s in sorted(adj, key=_vertex_key):
        if s in comp_of:
            continue
        comp = [s]
        comp_of[s] = len(comps)
        stack = [s]
        while stack:
            for w in adj[stack.pop()]:
                if w not in comp_of:
                    comp_of[w] = len(comps)
                    comp.append(w)
                    stack.append(w)
        comps.append(comp)
    members = [[e] for e in direct]
    comp_edges = [[] for _ in comps]
    for e in rest:
        a, b = e.source, e.target
        idx = comp_of[a] if a in comp_of else comp_of[b]
        comp_edges[idx].append(e)
    members.extend(m for m in comp_edges if m)
    return members


def build_spqr(graph: Multigraph) -> DecompositionTree:
    """SPQR-tree of a biconnected planar multigraph.

    Graphs with one or two edges (a single edge or a digon) have no valid
    S/P/R skeleton; they come back as a trivial single-node tree whose
    skeleton holds the real edges directly.
    """
    report = classify_connectivity(graph)
    if not report.is_biconnected:
        raise NotDecomposableError("graph is not biconnected")
    if planar_embed(graph) is None:
        raise NotDecomposableError("graph is not planar")
    if graph.num_edges() == 0:
        raise NotDecomposableError("graph has no edges")

    b = _Builder()
    if graph.num_edges() <= 2:
        edges = [
            SkeletonEdge(b.new_edge_id(), u, v, "real", eid) for eid, (u, v) in graph.edges
        ]
        b.new_node(None, list(graph.vertices), edges)
        return b.freeze()

    # virtualize every real edge into a Q-leaf
    top_edges = []
    for eid, (u, v) in graph.edges:
        virt = SkeletonEdge(b.new_edge_id(), u, v, "virtual")
        q_virt = SkeletonEdge(b.new_edge_id(), u, v, "virtual")
        q_real = SkeletonEdge(b.new_edge_id(), u, v, "real", eid)
        b.new_node("Q", [u, v], [q_real, q_virt])
        b.twins.append((virt.id, q_virt.id))
        top_edges.append(virt)
    top = b.new_node(None, list(graph.vertices), top_edges)

    _refine_all(b, top)
    tree = b.freeze()
    tree = _merge_same_type(tree)
    return _normalize_orientations(tree)


def _refine_all(b: _Builder, start_node: int) -> None:
    stack = [start_node]
    while stack:
        nid = stack.pop()
        _, edges, vertices = b.skeletons[nid]
        if len(vertices) == 2:
            assert len(edges) >= 3
            b.skeletons[nid] = ("P", edges, vertices)
            continue
        if _is_cycle(vertices, edges):
            b.skeletons[nid] = ("S", edges, vertices)
            continue
        mg = Multigraph(tuple(vertices), tuple((e.id, (e.source, e.target)) for e in edges))
        if mg.is_simple() and classify_connectivity(mg).is_triconnected:
            b.skeletons[nid] = ("R", edges, vertices)
            continue
        stack.extend(_split_once(b, nid))


def _split_once(b: _Builder, nid: int) -> list:
    """Split a non-final skeleton at one split pair; returns new node ids."""
    _, edges, vertices = b.skeletons[nid]

    # parallel pair first: bundle every (u,v) edge into a bond
    pair_count: dict = {}
    for e in edges:
        key = tuple(sorted((e.source, e.target), key=_vertex_key))
        pair_count.setdefault(key, []).append(e)
    par = None
    for key in sorted(pair_count, key=repr):
        if len(pair_count[key]) >= 2:
            par = key
            break
    if par is not None:
        u, v = par
        bundle = pair_count[par]
        rest = [e for e in edges if e not in bundle]
        eps_bond = SkeletonEdge(b.new_edge_id(), u, v, "virtual")
        eps_rest = SkeletonEdge(b.new_edge_id(), u, v, "virtual")
        b.twins.append((eps_bond.id, eps_rest.id))
        b.new_node("P", [u, v], bundle + [eps_bond])
        rest_vertices = list(vertices)
        b.skeletons[nid] = (None, rest + [eps_rest], rest_vertices)
        return [nid]

    # otherwise a separation pair must exist
    mg = Multigraph(tuple(vertices), tuple((e.id, (e.source, e.target)) for e in edges))
    report = classify_connectivity(mg)
    if not report.separation_pairs:
        raise InvalidGraphError("skeleton admits no further split")
    u, v = report.separation_pairs[0]
    members = _split_components(vertices, edges, u, v)
    # split off the first component member; lone (u,v) edges stay in the rest
    comp_members = [
        m for m in members if not (len(m) == 1 and {m[0].source, m[0].target} == {u, v})
    ]
    first = comp_members[0]
    rest = [e for e in edges if e not in first]
    eps_first = SkeletonEdge(b.new_edge_id(), u, v, "virtual")
    eps_rest = SkeletonEdge(b.new_edge_id(), u, v, "virtual")
    b.twins.append((eps_first.id, eps_rest.id))
    first_vertices = sorted({w for e in first for w in (e.source, e.target)} | {u, v}, key=_vertex_key)
    child = b.new_node(None, first_vertices, first + [eps_first])
    rest_vertices = sorted({w for e in rest for w in (e.source, e.target)} | {u, v}, key=_vertex_key)
    b.skeletons[nid] = (None, rest + [eps_rest], rest_vertices)
    return [child, nid]


def _merge_same_type(tree: DecompositionTree) -> DecompositionTree:
    """Contract S-S and P-P tree edges until none remain."""
    while True:
        target = None
        for a, bnode, ea, eb in tree.tree_edges():
            ta, tb = tree.node(a).type, tree.node(bnode).type
            if ta == tb and ta in ("S", "P"):
                target = (a, bnode, ta)
                break
        if target is None:
            return tree
        a, bnode, type_ = target
        node_a, node_b = tree.node(a), tree.node(bnode)
        pair = next(p for p in tree.tree_edges() if {p[0], p[1]} == {a, bnode})
        merged_skel, _ = _glue_skeletons(
            node_a.skeleton, node_b.skeleton, pair[2], pair[3], bnode, tree.reversed_semantics
        )
        fresh = max(int(n) for n in tree.node_ids()) + 1
        merged = TreeNode(fresh, type_, merged_skel)
        nodes = tuple(n for n in tree.nodes if n.id not in (a, bnode)) + (merged,)
        twins = tuple(p for p in tree.twins if p != tuple(sorted((pair[2], pair[3]))))
        tree = DecompositionTree(nodes, twins, tree.reversed_semantics)


# ---------------------------------------------------------------------------
# Orientation normalization
# ---------------------------------------------------------------------------


def _cycle_orientation(skel: Skeleton, anchor: Optional[SkeletonEdge]):
    """Orientations making an S-skeleton a directed cycle.  If ``anchor`` is
    given, the cycle direction follows the anchor's current orientation."""
    adj: dict = {v: [] for v in skel.vertices}
    for e in skel.edges:
        adj[e.source].append(e)
        adj[e.target].append(e)
    start = anchor if anchor is not None else skel.edges[0]
    orient = {start.id: (start.source, start.target)}
    cur_vertex = start.target
    cur_edge = start
    while cur_vertex != start.source:
        nxt = next(e for e in adj[cur_vertex] if e.id != cur_edge.id)
        other = nxt.target if nxt.source == cur_vertex else nxt.source
        orient[nxt.id] = (cur_vertex, other)
        cur_vertex, cur_edge = other, nxt
    if len(orient) != len(skel.edges):
        raise InvalidGraphError("S-skeleton is not a single cycle")
    return orient


def _normalize_orientations(tree: DecompositionTree) -> DecompositionTree:
    """Flip twin pairs so P-skeletons are co-oriented and S-skeletons are
    directed cycles.  R and Q skeletons keep their stored orientations
    unless a neighboring S/P node pins their shared pair."""
    orient: dict = {}  # edge id -> (source, target)
    for node in tree.nodes:
        for e in node.skeleton.edges:
            orient[e.id] = (e.source, e.target)

    root = min(tree.node_ids())
    seen = {root}
    order = [root]
    queue = [root]
    parent_pin: dict = {root: None}  # node id -> edge id pinned by parent (in this node)
    while queue:
        cur = queue.pop(0)
        for e in tree.node(cur).skeleton.edges:
            if e.kind != "virtual":
                continue
            nb = tree.corr(e.id)
            if nb not in seen:
                seen.add(nb)
                parent_pin[nb] = tree.twin(e.id)
                order.append(nb)
                queue.append(nb)

    for nid in order:
        node = tree.node(nid)
        skel = node.skeleton
        pin_eid = parent_pin[nid]
        if node.type == "P":
            if pin_eid is not None:
                ref = orient[pin_eid]
            else:
                ref = orient[skel.edges[0].id]
            for e in skel.edges:
                if orient[e.id] != ref:
                    orient[e.id] = ref
                    t = tree._twin_map.get(e.id)
                    if t is not None:
                        orient[t] = (orient[t][1], orient[t][0])
        elif node.type == "S":
            anchor = None
            if pin_eid is not None:
                pe = skel.edge(pin_eid)
                anchor = SkeletonEdge(pe.id, *orient[pin_eid], pe.kind, pe.real_id)
            want = _cycle_orientation(skel, anchor)
            for e in skel.edges:
                if orient[e.id] != want[e.id]:
                    orient[e.id] = want[e.id]
                    t = tree._twin_map.get(e.id)
                    if t is not None:
                        orient[t] = (orient[t][1], orient[t][0])

    new_nodes = []
    for node in tree.nodes:
        edges = tuple(
            SkeletonEdge(e.id, orient[e.id][0], orient[e.id][1], e.kind, e.real_id)
            for e in node.skeleton.edges
        )
        new_nodes.append(TreeNode(node.id, node.type, Skeleton(node.skeleton.vertices, edges)))
    return DecompositionTree(tuple(new_nodes), tree.twins, tree.reversed_semantics)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def validate_spqr(tree: DecompositionTree) -> list:
    """All violations of the SPQR invariants; empty means valid.

    A single-node tree is a trivial decomposition tree: it is accepted iff
    its skeleton carries no virtual edge.
    """
    out = []
    if len(tree.nodes) == 1:
        if tree.nodes[0].skeleton.virtual_edges():
            out.append("single-node tree with virtual edges")
        return out

    # twin pairing covers every virtual edge exactly once
    paired = set()
    for a, b in tree.twins:
        if tree.owner_of(a) == tree.owner_of(b):
            out.append(f"twin pair ({a},{b}) inside one node")
        paired.add(a)
        paired.add(b)
    for node in tree.nodes:
        for e in node.skeleton.edges:
            if e.kind == "virtual" and e.id not in paired:
                out.append(f"unpaired virtual edge {e.id} in node {node.id}")
            if e.kind == "real" and e.id in paired:
                out.append(f"real edge {e.id} in twin pairing")

    # node-graph must be a tree
    n_nodes = len(tree.nodes)
    if len(tree.twins) != n_nodes - 1:
        out.append("node graph is not a tree (wrong edge count)")
    else:
        adj: dict = {n.id: set() for n in tree.nodes}
        for a, b, ea, eb in tree.tree_edges():
            adj[a].add(b)
            adj[b].add(a)
        seen = set()
        stack = [tree.nodes[0].id]
        seen.add(tree.nodes[0].id)
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != n_nodes:
            out.append("node graph is not connected")

    for node in tree.nodes:
        skel = node.skeleton
        if node.type == "Q":
            if (
                len(skel.vertices) != 2
                or len(skel.edges) != 2
                or len(skel.real_edges()) != 1
                or len(skel.virtual_edges()) != 1
            ):
                out.append(f"Q-node {node.id} skeleton is not one real plus one virtual edge")
        elif node.type == "S":
            if skel.real_edges():
                out.append(f"S-node {node.id} has real edges")
            if not _is_cycle(skel.vertices, skel.edges):
                out.append(f"S-node {node.id} skeleton is not a cycle of >= 3 edges")
            else:
                nxt = {e.source: e.target for e in skel.edges}
                if len(nxt) != len(skel.vertices):
                    out.append(f"S-node {node.id} skeleton is not a directed cycle")
        elif node.type == "P":
            if skel.real_edges():
                out.append(f"P-node {node.id} has real edges")
            if len(skel.vertices) != 2 or len(skel.edges) < 3:
                out.append(f"P-node {node.id} is not a bunch of >= 3 parallel edges")
            else:
                dirs = {(e.source, e.target) for e in skel.edges}
                if len(dirs) != 1:
                    out.append(f"P-node {node.id} edges are not co-oriented")
        elif node.type == "R":
            if skel.real_edges():
                out.append(f"R-node {node.id} has real edges")
            mg = skel.as_multigraph()
            if not mg.is_simple() or not classify_connectivity(mg).is_triconnected:
                out.append(f"R-node {node.id} skeleton is not simple triconnected")
            elif planar_embed(mg) is None:
                out.append(f"R-node {node.id} skeleton is not planar")
        else:
            out.append(f"node {node.id} has no S/P/Q/R type")

    for a, b, _, _ in tree.tree_edges():
        ta, tb = tree.node(a).type, tree.node(b).type
        if ta == tb == "S":
            out.append(f"adjacent S-nodes {a},{b}")
        if ta == tb == "P":
            out.append(f"adjacent P-nodes {a},{b}")

    for node in tree.nodes:
        degree = len(tree.neighbors(node.id))
        if degree <= 1 and node.type != "Q":
            out.append(f"leaf node {node.id} is not a Q-node")
        if degree > 1 and node.type == "Q":
            out.append(f"inner node {node.id} is a Q-node")
    return out


# ---------------------------------------------------------------------------
# Embedding enumeration
# ---------------------------------------------------------------------------


def _p_source(skel: Skeleton):
    dirs = {(e.source, e.target) for e in skel.edges}
    if len(dirs) != 1:
        raise InvalidGraphError("P-skeleton is not co-oriented")
    return next(iter(dirs))[0]


def _skeleton_rotation(node: TreeNode, p_order=None, r_flip=False) -> RotationSystem:
    """Reference embedding of one skeleton.

    S and Q skeletons have a unique rotation.  A P-skeleton takes the
    parallel order ``p_order`` at its common source pole (reversed at the
    other pole).  An R-skeleton takes its deterministic base embedding,
    mirrored when ``r_flip`` is set.
    """
    skel = node.skeleton
    mg = skel.as_multigraph()
    if node.type == "P":
        u = _p_source(skel)
        order = list(p_order) if p_order is not None else [e.id for e in skel.edges]
        v = next(e.target for e in skel.edges if e.source == u)
        up = tuple(skel.edge(eid).dart_at(u) for eid in order)
        down = tuple(skel.edge(eid).dart_at(v) for eid in reversed(order))
        return RotationSystem(((u, up), (v, down)))
    if node.type == "R":
        rho = planar_embed(mg)
        if rho is None:
            raise InvalidGraphError("R-skeleton is not planar")
        return rho.mirrored() if r_flip else rho
    rho = planar_embed(mg)
    if rho is None:
        raise InvalidGraphError("skeleton is not planar")
    return rho


def _splice(rot_a: dict, rot_b: dict, skel_a: Skeleton, skel_b: Skeleton,
            eid_a: int, eid_b: int, rename: dict) -> dict:
    """Compose two skeleton rotations glued (standard semantics) at a twin
    pair: at each pole, the merged virtual edge's dart is replaced by the
    other skeleton's rotation read from just after its own twin dart."""
    eps_a, eps_b = skel_a.edge(eid_a), skel_b.edge(eid_b)
    out = {}
    for v, seq in rot_a.items():
        out[v] = list(seq)
    for v, seq in rot_b.items():
        rv = rename[v]
        if rv not in out:
            out[rv] = list(seq)
    for pole_a, pole_b, slot in ((eps_a.source, eps_b.source, 1), (eps_a.target, eps_b.target, 2)):
        da = Dart(eid_a, slot)
        db = Dart(eid_b, slot)
        seq_b = list(rot_b[pole_b])
        i = seq_b.index(db)
        insertion = seq_b[i + 1:] + seq_b[:i]
        seq_a = out[pole_a]
        j = seq_a.index(da)
        out[pole_a] = seq_a[:j] + insertion + seq_a[j + 1:]
    return out


def _compose_embedding(tree: DecompositionTree, rotations: dict):
    """Contract the whole tree, splicing rotations; returns the represented
    multigraph and its rotation system."""
    if tree.reversed_semantics:
        raise InvalidGraphError("embedding composition requires a standard tree")
    skels = {n.id: n.skeleton for n in tree.nodes}
    rots = {nid: dict(rotations[nid].as_dict()) for nid in skels}
    twins = sorted(tree.twins)
    owner = dict(tree._owner)
    for a, b in twins:
        na, nb = owner[a], owner[b]
        skel_a, skel_b = skels[na], skels[nb]
        merged, rename = _glue_skeletons(skel_a, skel_b, a, b, nb, False)
        merged_rot = _splice(rots[na], rots[nb], skel_a, skel_b, a, b, rename)
        del skels[nb], rots[nb]
        skels[na] = merged
        rots[na] = merged_rot
        for eid, nid in list(owner.items()):
            if nid == nb:
                owner[eid] = na
    (nid,) = skels
    skel = skels[nid]
    graph = Multigraph(
        tuple(skel.vertices), tuple((e.real_id, (e.source, e.target)) for e in skel.edges)
    )
    dart_map = {e.id: e.real_id for e in skel.edges}
    orders = tuple(
        (v, tuple(Dart(dart_map[d.edge], d.slot) for d in seq)) for v, seq in rots[nid].items()
    )
    return graph, RotationSystem(orders)


def embedding_choices(tree: DecompositionTree):
    """The (P-node order, R-node flip) combination space of a tree."""
    p_nodes = sorted(n.id for n in tree.nodes if n.type == "P")
    r_nodes = sorted(n.id for n in tree.nodes if n.type == "R")
    p_orders = []
    for nid in p_nodes:
        eids = [e.id for e in tree.node(nid).skeleton.edges]
        head, rest = eids[0], eids[1:]
        p_orders.append([(head,) + perm for perm in itertools.permutations(rest)])
    return p_nodes, r_nodes, p_orders


def count_embeddings(tree: DecompositionTree) -> int:
    _, r_nodes, p_orders = embedding_choices(tree)
    total = 2 ** len(r_nodes)
    for orders in p_orders:
        total *= len(orders)
    return total


def embedding_for_choices(tree: DecompositionTree, p_assignment: dict, r_flips: dict):
    """Rotation system of the represented graph for one choice combination.

    ``p_assignment`` maps P-node id to an edge-id order, ``r_flips`` maps
    R-node id to a bool.  Returns ``(graph, rotation)``.
    """
    rotations = {}
    for node in tree.nodes:
        rotations[node.id] = _skeleton_rotation(
            node, p_order=p_assignment.get(node.id), r_flip=r_flips.get(node.id, False)
        )
    return _compose_embedding(tree, rotations)


def enumerate_embeddings(tree: DecompositionTree) -> Iterator[RotationSystem]:
    """One planar rotation system per combination of P-node parallel orders
    and R-node flips, in deterministic order.  The reflection class of each
    combination is fixed by the skeleton reference embeddings; callers that
    need the mirror image mirror the result themselves."""
    p_nodes, r_nodes, p_orders = embedding_choices(tree)
    for combo in itertools.product(*p_orders):
        p_assignment = dict(zip(p_nodes, combo))
        for flips in itertools.product((False, True), repeat=len(r_nodes)):
            r_flips = dict(zip(r_nodes, flips))
            _, rho = embedding_for_choices(tree, p_assignment, r_flips)
            yield rho


# ---------------------------------------------------------------------------
# Dump format
# ---------------------------------------------------------------------------


def dump_tree(tree: DecompositionTree) -> str:
    """Deterministic text dump: nodes with skeleton edges, then twins."""
    lines = []
    if tree.reversed_semantics:
        lines.append("# reversed semantics")
    for node in sorted(tree.nodes, key=lambda n: repr(n.id)):
        lines.append(f"node {node.id} {node.type or '-'}")
        for e in sorted(node.skeleton.edges, key=lambda e: e.id):
            kind = "virtual" if e.kind == "virtual" else f"real:{e.real_id}"
            lines.append(f"sk {e.id} {e.source} {e.target} {kind}")
    for a, b in sorted(tree.twins):
        lines.append(f"twin {tree.owner_of(a)}.{a} {tree.owner_of(b)}.{b}")
    return "\n".join(lines) + "\n"
