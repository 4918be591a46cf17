"""The decision procedures: skeleton graphs, dual-SPQR-isomorphism via
plain graph isomorphism, Mutual Planar Duality and Graph Self-Duality for
biconnected planar multigraphs.

Two SPQR-trees represent the same set of dual graphs exactly when their
skeleton graphs are isomorphic, so the whole pipeline is: build the
SPQR-tree of the first graph, dualize it under any representable embedding,
normalize, and compare skeleton graphs with the second graph's tree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .dual_spqr import dualize_tree, normalize
from .isomorphism import BudgetExceededError, canonical_form, is_isomorphic
from .multigraph import InvalidGraphError, Multigraph, RotationSystem, dual_graph
from .planarity import classify_connectivity, planar_embed
from .spqr import (
    DecompositionTree,
    build_spqr,
    count_embeddings,
    enumerate_embeddings,
    represented_graph,
)


class NotBiconnectedError(ValueError):
    """Input outside the biconnected planar domain of these procedures."""


@dataclass(frozen=True)
class SkeletonGraph:
    """The tagged planar graph encoding an SPQR-tree.

    ``labels`` records where every vertex came from; it is diagnostic only,
    the isomorphism test runs on the unlabeled graph.
    """

    graph: Multigraph
    labels: tuple  # of (vertex, label tuple)

    def label_dict(self) -> dict:
        return dict(self.labels)


# S- and P-tags: small mutually non-isomorphic biconnected blocks hung at
# the attachment vertex.  A 3-cycle and a 4-cycle can never coincide with a
# subdivided triconnected skeleton (the smallest is subdivided K4), so the
# attachment-degree arguments behind the reduction stay intact.
_S_TAG_CYCLE = 3
_P_TAG_CYCLE = 4


def skeleton_graph(tree: DecompositionTree) -> SkeletonGraph:
    """Encode an SPQR-tree as a planar graph for isomorphism testing.

    S- and P-nodes contribute one attachment vertex carrying a tag cycle;
    Q-nodes contribute a leaf; an R-node contributes its skeleton with
    every virtual edge subdivided by an attachment vertex.  Each tree edge
    becomes one edge between the two corresponding attachment vertices.
    """
    vertices = []
    edges = []
    labels = []
    attach_node = {}  # node id -> attachment vertex (S/P/Q nodes)
    attach_edge = {}  # skeleton edge id -> subdivision vertex (R nodes)

    for node in tree.nodes:
        if node.type in ("S", "P"):
            v = ("att", node.id)
            vertices.append(v)
            labels.append((v, ("attachment", node.id)))
            attach_node[node.id] = v
            cycle_len = _S_TAG_CYCLE if node.type == "S" else _P_TAG_CYCLE
            prev = v
            for i in range(cycle_len - 1):
                t = ("tag", node.id, i)
                vertices.append(t)
                labels.append((t, ("tag", node.id)))
                edges.append(((("tag", node.id, i, "e"), (prev, t))))
                prev = t
            edges.append((("tag", node.id, "close"), (prev, v)))
        elif node.type == "Q":
            v = ("leaf", node.id)
            vertices.append(v)
            labels.append((v, ("leaf", node.id)))
            attach_node[node.id] = v
        elif node.type == "R":
            for w in node.skeleton.vertices:
                sv = ("skel", node.id, w)
                vertices.append(sv)
                labels.append((sv, ("skeleton", node.id, w)))
            for e in node.skeleton.edges:
                if e.kind != "virtual":
                    raise InvalidGraphError("R-skeleton with real edges cannot be encoded")
                sub = ("att", node.id, e.id)
                vertices.append(sub)
                labels.append((sub, ("attachment", node.id, e.id)))
                attach_edge[e.id] = sub
                edges.append((("sub", e.id, 1), (("skel", node.id, e.source), sub)))
                edges.append((("sub", e.id, 2), (sub, ("skel", node.id, e.target))))
        else:
            raise InvalidGraphError(f"node {node.id} has no S/P/Q/R type")

    for a, b, ea, eb in tree.tree_edges():
        va = attach_edge[ea] if tree.node(a).type == "R" else attach_node[a]
        vb = attach_edge[eb] if tree.node(b).type == "R" else attach_node[b]
        edges.append((("tree", ea, eb), (va, vb)))

    return SkeletonGraph(Multigraph(tuple(vertices), tuple(edges)), tuple(labels))


def same_dual_set(t1: DecompositionTree, t2: DecompositionTree) -> bool:
    """Do two SPQR-trees represent the same set of dual graphs?

    Equivalent to their skeleton graphs being isomorphic.
    """
    g1 = skeleton_graph(t1).graph
    g2 = skeleton_graph(t2).graph
    return is_isomorphic(g1, g2) is not None


def _require_biconnected_planar(graph: Multigraph, name: str) -> None:
    if not classify_connectivity(graph).is_biconnected:
        raise NotBiconnectedError(f"{name} is not biconnected")
    if planar_embed(graph) is None:
        raise NotBiconnectedError(f"{name} is not planar")


def _tiny_dual(graph: Multigraph) -> Multigraph:
    # graphs with <= 2 edges have a unique embedding class
    rho = planar_embed(graph)
    return dual_graph(graph, rho)[0]


def mutual_duality(g1: Multigraph, g2: Multigraph) -> bool:
    """Can ``g1`` be embedded so that its dual is isomorphic to ``g2``?

    Both graphs must be biconnected and planar.  Symmetric in its
    arguments.
    """
    _require_biconnected_planar(g1, "g1")
    _require_biconnected_planar(g2, "g2")
    if g1.num_edges() != g2.num_edges():
        return False
    if g1.num_edges() <= 2:
        # single edge or digon: unique dual, compare directly
        return is_isomorphic(_tiny_dual(g1), g2) is not None
    t1 = build_spqr(g1)
    rho1 = planar_embed(g1)
    t1_dual = normalize(dualize_tree(t1, rho1))
    t2 = build_spqr(g2)
    return same_dual_set(t1_dual, t2)


def graph_self_dual(graph: Multigraph) -> bool:
    """Does some embedding of ``graph`` have a dual isomorphic to it?"""
    return mutual_duality(graph, graph)


def witness_embedding(
    g1: Multigraph, g2: Multigraph, budget: Optional[int] = None
) -> Optional[RotationSystem]:
    """A planar rotation of ``g1`` whose dual is isomorphic to ``g2``, if any.

    Searches the embeddings represented by the SPQR-tree (each reflection
    class once; mirror duals are isomorphic, so nothing is missed).
    ``budget`` caps the number of embeddings examined.
    """
    _require_biconnected_planar(g1, "g1")
    _require_biconnected_planar(g2, "g2")
    if g1.num_edges() != g2.num_edges():
        return None
    if g1.num_edges() <= 2:
        rho = planar_embed(g1)
        if is_isomorphic(dual_graph(g1, rho)[0], g2) is not None:
            return rho
        return None
    tree = build_spqr(g1)
    total = count_embeddings(tree)
    if budget is not None and total > budget:
        raise BudgetExceededError(f"embedding count {total} exceeds budget {budget}")
    for rho in enumerate_embeddings(tree):
        d, _, _ = dual_graph(g1, rho)
        if is_isomorphic(d, g2) is not None:
            return rho
    return None
