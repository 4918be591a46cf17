"""Dual decomposition trees: dualize every skeleton under its induced
embedding, keep twin and orientation bookkeeping, and the reversal /
restacking / single-edge-reversal operations that navigate the set of dual
graphs.

A dual tree comes back in reversed semantics (twins glue source-to-target);
:func:`normalize` converts it to a standard tree representing the same
graph.  The dual of a virtual edge is oriented from its right face to its
left face, where the right face of an oriented skeleton edge is the face
holding the dart at its source (the package-wide orientation convention;
the mirror choice would produce mirror duals, which are isomorphic).
"""

from __future__ import annotations

from typing import Optional

from .multigraph import Dart, InvalidGraphError, Multigraph, RotationSystem, dual_graph, is_planar_embedding
from .spqr import (
    DecompositionTree,
    Skeleton,
    SkeletonEdge,
    TreeNode,
    _normalize_orientations,
)


class NotRepresentableError(ValueError):
    """The supplied rotation system is not an embedding this tree represents."""


_DUAL_TYPE = {"S": "P", "P": "S", "Q": "Q", "R": "R", None: None}


# ---------------------------------------------------------------------------
# Induced skeleton embeddings
# ---------------------------------------------------------------------------


def _real_edge_owners(tree: DecompositionTree) -> dict:
    owners = {}
    for node in tree.nodes:
        for e in node.skeleton.edges:
            if e.kind == "real":
                owners[e.real_id] = node.id
    return owners


def _edge_labels(tree: DecompositionTree) -> dict:
    """For each node: represented edge id -> the skeleton edge covering it.

    A real edge of the node maps to itself; any other represented edge maps
    to the virtual edge pointing into the subtree that holds it.
    """
    owners = _real_edge_owners(tree)
    all_reals = set(owners)
    node_ids = tree.node_ids()

    # reals below each directed tree edge (toward the twin's node)
    root = node_ids[0]
    order = [root]
    parent = {root: None}
    seen = {root}
    i = 0
    while i < len(order):
        cur = order[i]
        i += 1
        for e in tree.node(cur).skeleton.edges:
            if e.kind != "virtual":
                continue
            nb = tree.corr(e.id)
            if nb not in seen:
                seen.add(nb)
                parent[nb] = cur
                order.append(nb)
    down: dict = {nid: set() for nid in node_ids}
    for nid in reversed(order):
        down[nid] |= {r for r, o in owners.items() if o == nid}
        p = parent[nid]
        if p is not None:
            down[p] |= down[nid]

    labels = {}
    for node in tree.nodes:
        lab = {}
        for e in node.skeleton.edges:
            if e.kind == "real":
                lab[e.real_id] = e.id
            else:
                nb = tree.corr(e.id)
                behind = down[nb] if parent.get(nb) == node.id else all_reals - down[node.id]
                for r in behind:
                    lab[r] = e.id
        labels[node.id] = lab
    return labels


def induced_skeleton_rotations(tree: DecompositionTree, rho: RotationSystem) -> dict:
    """Extract each skeleton's rotation from an embedding of the represented
    graph.

    The rotation of a skeleton vertex is the vertex's rotation in ``rho``
    with each dart replaced by the skeleton edge covering it, consecutive
    repeats collapsed cyclically.  Raises :class:`NotRepresentableError`
    when that collapse does not produce a rotation of the skeleton, or when
    some induced skeleton embedding is not planar.
    """
    labels = _edge_labels(tree)
    rho_map = rho.as_dict()
    out = {}
    for node in tree.nodes:
        skel = node.skeleton
        lab = labels[node.id]
        orders = []
        for v in skel.vertices:
            if v not in rho_map:
                raise NotRepresentableError(f"vertex {v!r} missing from the embedding")
            seq = []
            for d in rho_map[v]:
                if d.edge not in lab:
                    raise NotRepresentableError(f"edge {d.edge!r} unknown to the tree")
                sk_eid = lab[d.edge]
                sk_dart = skel.edge(sk_eid).dart_at(v)
                if not seq or seq[-1] != sk_dart:
                    seq.append(sk_dart)
            if len(seq) > 1 and seq[0] == seq[-1]:
                seq.pop()
            expected = {skel.edge(eid).dart_at(v) for eid in skel.edge_ids()
                        if v in (skel.edge(eid).source, skel.edge(eid).target)}
            if len(seq) != len(expected) or set(seq) != expected:
                raise NotRepresentableError(
                    f"embedding does not induce a rotation of node {node.id} at {v!r}"
                )
            orders.append((v, tuple(seq)))
        skel_rho = RotationSystem(tuple(orders))
        if not is_planar_embedding(skel.as_multigraph(), skel_rho):
            raise NotRepresentableError(f"induced embedding of node {node.id} is not planar")
        out[node.id] = skel_rho
    return out


# ---------------------------------------------------------------------------
# Dualization
# ---------------------------------------------------------------------------


def dualize_tree(tree: DecompositionTree, rho: RotationSystem) -> DecompositionTree:
    """Dual decomposition tree with respect to an embedding of the
    represented graph.

    Every skeleton is replaced by its directed dual under the induced
    embedding; twin pairs and node ids carry over; node types swap S and P.
    The result uses reversed semantics and represents the dual graph.
    """
    if tree.reversed_semantics:
        raise InvalidGraphError("dualize_tree expects a standard tree")
    rotations = induced_skeleton_rotations(tree, rho)
    new_nodes = []
    for node in tree.nodes:
        skel = node.skeleton
        mg = skel.as_multigraph()
        dual, _, _ = dual_graph(mg, rotations[node.id])
        dual_edges = []
        for eid, (fu, fv) in dual.edges:
            prim = skel.edge(eid)
            dual_edges.append(SkeletonEdge(eid, fu, fv, prim.kind, prim.real_id))
        new_skel = Skeleton(tuple(dual.vertices), tuple(dual_edges))
        new_nodes.append(TreeNode(node.id, _DUAL_TYPE[node.type], new_skel))
    return DecompositionTree(tuple(new_nodes), tree.twins, reversed_semantics=True)


def to_reversed(tree: DecompositionTree) -> DecompositionTree:
    """Rewrite a standard tree in reversed semantics (same represented graph)."""
    if tree.reversed_semantics:
        return tree
    return _flip_one_per_pair(tree, reversed_semantics=True)


def normalize(tree: DecompositionTree) -> DecompositionTree:
    """Standard-semantics tree representing the same graph.

    Reversing one virtual edge of every twin pair turns a reversed tree
    into a standard one; afterwards the S/P orientation conventions are
    re-established by joint twin-pair flips.  Standard trees pass through
    unchanged.
    """
    if not tree.reversed_semantics:
        return tree
    flipped = _flip_one_per_pair(tree, reversed_semantics=False)
    return _normalize_orientations(flipped)


def _flip_one_per_pair(tree: DecompositionTree, reversed_semantics: bool) -> DecompositionTree:
    # flip the pair member living in the larger node id (deterministic)
    flip = set()
    for a, b in tree.twins:
        na, nb = tree.owner_of(a), tree.owner_of(b)
        flip.add(a if repr(na) > repr(nb) else b)
    new_nodes = []
    for node in tree.nodes:
        edges = tuple(
            e.reversed_copy() if e.id in flip else e for e in node.skeleton.edges
        )
        new_nodes.append(TreeNode(node.id, node.type, Skeleton(node.skeleton.vertices, edges)))
    return DecompositionTree(tuple(new_nodes), tree.twins, reversed_semantics)


# ---------------------------------------------------------------------------
# Reversal and restacking
# ---------------------------------------------------------------------------


def reverse_node(tree: DecompositionTree, node_id) -> DecompositionTree:
    """Reverse the direction of every virtual edge in one skeleton."""
    node = tree.node(node_id)
    edges = tuple(
        e.reversed_copy() if e.kind == "virtual" else e for e in node.skeleton.edges
    )
    return tree.replace_node(TreeNode(node.id, node.type, Skeleton(node.skeleton.vertices, edges)))


def reverse_virtual_edge(tree: DecompositionTree, eid: int) -> DecompositionTree:
    """Reverse the orientation of one virtual edge (its twin is untouched)."""
    nid = tree.owner_of(eid)
    node = tree.node(nid)
    target = node.skeleton.edge(eid)
    if target.kind != "virtual":
        raise InvalidGraphError(f"edge {eid} is not virtual")
    edges = tuple(e.reversed_copy() if e.id == eid else e for e in node.skeleton.edges)
    return tree.replace_node(TreeNode(node.id, node.type, Skeleton(node.skeleton.vertices, edges)))


def restack_s_node(tree: DecompositionTree, node_id, order) -> DecompositionTree:
    """Replace an S-skeleton by the directed cycle of its edges in ``order``.

    Consecutive edges that already share a suitable endpoint keep it as
    their junction, so restacking with the current cycle order returns the
    tree unchanged.
    """
    node = tree.node(node_id)
    if node.type != "S":
        raise InvalidGraphError(f"node {node_id!r} is not an S-node")
    skel = node.skeleton
    order = list(order)
    if sorted(order) != sorted(skel.edge_ids()):
        raise InvalidGraphError("order must be a permutation of the skeleton's edges")
    k = len(order)
    old = {e.id: e for e in skel.edges}

    junctions = []
    fresh = 0
    for i in range(k):
        a = old[order[i]]
        bnext = old[order[(i + 1) % k]]
        shared = ({a.source, a.target} & {bnext.source, bnext.target})
        if a.target in shared and a.target != bnext.target:
            junctions.append(a.target)
        elif len(shared) == 1:
            junctions.append(next(iter(shared)))
        else:
            junctions.append(("j", node_id, fresh))
            fresh += 1
    if len(set(junctions)) != k:
        junctions = [("j", node_id, i) for i in range(k)]

    edges = []
    for i in range(k):
        e = old[order[i]]
        src = junctions[i - 1]
        tgt = junctions[i]
        edges.append(SkeletonEdge(e.id, src, tgt, e.kind, e.real_id))
    new_skel = Skeleton(tuple(junctions), tuple(edges))
    return tree.replace_node(TreeNode(node.id, node.type, new_skel))
