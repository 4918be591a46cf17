"""Ground-truth brute force: enumerate all genus-0 rotation systems of
small connected multigraphs, compute dual sets up to isomorphism, and check
the representation theorems empirically.

Nothing here touches the SPQR machinery; rotation systems are enumerated
raw (one cyclic order per vertex) and filtered by the Euler criterion, so
this module can serve as an independent oracle for everything else.
Budgets are explicit and fail hard; results are never silently partial.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Optional

from .isomorphism import BudgetExceededError, canonical_form
from .multigraph import Dart, InvalidGraphError, Multigraph, RotationSystem, dual_graph
from .planarity import classify_connectivity
from .spqr import build_spqr, enumerate_embeddings
from .dual_spqr import dualize_tree, normalize
from . import spqr as _spqr


def rotation_count(graph: Multigraph) -> int:
    """Number of raw rotation systems: product of (deg(v) - 1)! over vertices."""
    total = 1
    for v in graph.vertices:
        d = graph.degree(v)
        for k in range(2, max(d, 1)):
            total *= k
    return total


def enumerate_planar_rotations(
    graph: Multigraph, budget: Optional[int] = None
) -> Iterator[RotationSystem]:
    """Yield exactly the genus-0 rotation systems of a connected multigraph,
    in deterministic order.

    ``budget`` caps the raw candidate count Prod (deg(v)-1)!; exceeding it
    raises :class:`BudgetExceededError` before any work is done.
    """
    if not graph.is_connected():
        raise InvalidGraphError("oracle enumeration requires a connected graph")
    raw = rotation_count(graph)
    if budget is not None and raw > budget:
        raise BudgetExceededError(f"rotation count {raw} exceeds budget {budget}")

    # integer darts: edge k -> darts 2k, 2k+1; twin is xor 1
    eids = list(graph.edge_ids)
    epos = {e: i for i, e in enumerate(eids)}
    m = len(eids)
    n_darts = 2 * m
    verts = list(graph.vertices)
    darts_at = []
    for v in verts:
        darts_at.append([2 * epos[d.edge] + (d.slot - 1) for d in graph.darts_at(v)])

    per_vertex = []
    for ds in darts_at:
        if not ds:
            per_vertex.append([()])
            continue
        head, rest = ds[0], ds[1:]
        per_vertex.append([(head,) + p for p in itertools.permutations(rest)])
    # successor-pair form so a vertex's slot of succ is refilled only when
    # its own cyclic order changes during the nested scan
    pair_lists = [
        [tuple((cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))) for cyc in lst]
        for lst in per_vertex
    ]

    target = 2 - len(verts) + m
    succ = [0] * n_darts
    stamp = [0] * n_darts
    state = [None] * len(verts)
    tick = 0
    int_dart_to_dart = [Dart(eids[i // 2], i % 2 + 1) for i in range(n_darts)]
    nv = len(verts)

    def scan(vi):
        nonlocal tick
        if vi < nv - 1:
            for j, pairs in enumerate(pair_lists[vi]):
                for d, s in pairs:
                    succ[d] = s
                state[vi] = j
                yield from scan(vi + 1)
            return
        rng = range(n_darts)
        for j, pairs in enumerate(pair_lists[vi]):
            for d, s in pairs:
                succ[d] = s
            tick += 1
            t = tick
            faces = 0
            for d0 in rng:
                if stamp[d0] == t:
                    continue
                faces += 1
                d = d0
                while stamp[d] != t:
                    stamp[d] = t
                    d = succ[d ^ 1]
            if faces == target:
                state[vi] = j
                yield tuple(state)

    for state_combo in scan(0):
        orders = tuple(
            (v, tuple(int_dart_to_dart[i] for i in per_vertex[vi][state_combo[vi]]))
            for vi, v in enumerate(verts)
        )
        yield RotationSystem(orders)


# ---------------------------------------------------------------------------
# Dual sets
# ---------------------------------------------------------------------------


class DualSetCache:
    """On-disk memo: canonical form of G -> set of canonical dual forms.

    File format: one line per graph, ``<canon hex><TAB><dual hex>,...``.
    """

    def __init__(self, path=None):
        self.path = path
        self.data: dict = {}
        if path is not None:
            try:
                with open(path, "r", encoding="ascii") as fh:
                    for line in fh:
                        line = line.strip()
                        if not line:
                            continue
                        key, _, rest = line.partition("\t")
                        duals = frozenset(
                            bytes.fromhex(tok) for tok in rest.split(",") if tok
                        )
                        self.data[bytes.fromhex(key)] = duals
            except FileNotFoundError:
                pass

    def get(self, key: bytes):
        return self.data.get(key)

    def put(self, key: bytes, duals: frozenset) -> None:
        self.data[key] = duals

    def save(self) -> None:
        if self.path is None:
            return
        lines = []
        for key in sorted(self.data, key=lambda b: b.hex()):
            duals = ",".join(sorted(d.hex() for d in self.data[key]))
            lines.append(f"{key.hex()}\t{duals}")
        with open(self.path, "w", encoding="ascii") as fh:
            fh.write("\n".join(lines) + ("\n" if lines else ""))


def dual_set(
    graph: Multigraph, budget: Optional[int] = None, cache: Optional[DualSetCache] = None
) -> frozenset:
    """Canonical forms of the duals of G over all its planar embeddings."""
    key = None
    if cache is not None:
        key = canonical_form(graph)
        hit = cache.get(key)
        if hit is not None:
            return hit
    out = set()
    for rho in enumerate_planar_rotations(graph, budget=budget):
        d, _, _ = dual_graph(graph, rho)
        out.add(canonical_form(d))
    result = frozenset(out)
    if cache is not None:
        cache.put(key, result)
    return result


def have_common_dual(
    g1: Multigraph,
    g2: Multigraph,
    budget: Optional[int] = None,
    cache: Optional[DualSetCache] = None,
) -> bool:
    """G1 ~ G2: the graphs share at least one dual."""
    return bool(dual_set(g1, budget, cache) & dual_set(g2, budget, cache))


def check_representation(
    graph: Multigraph, budget: Optional[int] = None, cache: Optional[DualSetCache] = None
) -> bool:
    """Does the dual SPQR-tree route reproduce the oracle dual set exactly?

    Compares { dual(G, rho) : rho planar } computed by raw enumeration with
    the duals of the represented graphs of the dualized tree over all
    tree-represented embeddings.
    """
    oracle = dual_set(graph, budget, cache)
    tree = build_spqr(graph)
    via_tree = set()
    for rho in enumerate_embeddings(tree):
        dual_tree = normalize(dualize_tree(tree, rho))
        via_tree.add(canonical_form(_spqr.represented_graph(dual_tree)))
    return oracle == frozenset(via_tree)


# ---------------------------------------------------------------------------
# Corpus generation
# ---------------------------------------------------------------------------


def _fresh_vertex(g: Multigraph) -> int:
    ints = [v for v in g.vertices if isinstance(v, int)]
    return (max(ints) + 1) if ints else 0


def simple_connected_frames(max_edges: int) -> list:
    """All connected simple graphs with at most ``max_edges`` edges, one per
    isomorphism class, grown by edge addition with canonical dedup."""
    k1 = Multigraph((0,), ())
    levels = [[k1]]
    seen = {canonical_form(k1)}
    out = [k1]
    for m in range(1, max_edges + 1):
        nxt = []
        for g in levels[m - 1]:
            candidates = []
            verts = list(g.vertices)
            present = {frozenset(e) for _, e in g.edges if e[0] != e[1]}
            for i in range(len(verts)):
                for j in range(i + 1, len(verts)):
                    if frozenset((verts[i], verts[j])) not in present:
                        candidates.append((verts[i], verts[j]))
            w = _fresh_vertex(g)
            for v in verts:
                candidates.append((v, w))
            for (a, bv) in candidates:
                vertices = tuple(g.vertices) + ((bv,) if bv not in g.vertex_set else ())
                edges = tuple(g.edges) + ((("e", m, len(vertices), repr((a, bv))), (a, bv)),)
                edges = tuple((i, e) for i, (_, e) in enumerate(edges))
                cand = Multigraph(vertices, edges)
                key = canonical_form(cand)
                if key not in seen:
                    seen.add(key)
                    nxt.append(cand)
                    out.append(cand)
        levels.append(nxt)
    return out


def simple_biconnected_frames(max_edges: int) -> list:
    """All biconnected simple graphs (including K2) with at most
    ``max_edges`` edges, one per isomorphism class, grown by ear addition."""
    def norm(vertices, edge_pairs):
        return Multigraph(tuple(vertices), tuple((i, e) for i, e in enumerate(edge_pairs)))

    out = []
    seen = set()
    k2 = norm((0, 1), [(0, 1)])
    out.append(k2)
    seen.add(canonical_form(k2))
    frontier = []
    for k in range(3, max_edges + 1):
        cyc = norm(tuple(range(k)), [(i, (i + 1) % k) for i in range(k)])
        key = canonical_form(cyc)
        if key not in seen:
            seen.add(key)
            out.append(cyc)
            frontier.append(cyc)
    while frontier:
        g = frontier.pop()
        verts = list(g.vertices)
        m = g.num_edges()
        present = {frozenset(e) for _, e in g.edges}
        for i in range(len(verts)):
            for j in range(i + 1, len(verts)):
                u, v = verts[i], verts[j]
                for length in range(1, max_edges - m + 1):
                    if length == 1 and frozenset((u, v)) in present:
                        continue
                    base = max(w for w in verts if isinstance(w, int)) + 1
                    inner = list(range(base, base + length - 1))
                    path = [u] + inner + [v]
                    pairs = [tuple(e) for _, e in g.edges]
                    pairs += [(path[t], path[t + 1]) for t in range(len(path) - 1)]
                    cand = norm(tuple(verts) + tuple(inner), pairs)
                    key = canonical_form(cand)
                    if key not in seen:
                        seen.add(key)
                        out.append(cand)
                        frontier.append(cand)
    return out


def _multiplicity_assignments(num_slots: int, total_max: int):
    """All tuples of multiplicities >= 1 with bounded total."""
    def rec(i, remaining):
        if i == num_slots:
            yield ()
            return
        min_rest = num_slots - i - 1
        for c in range(1, remaining - min_rest + 1):
            for rest in rec(i + 1, remaining - c):
                yield (c,) + rest
    yield from rec(0, total_max)


def _loop_distributions(num_vertices: int, total_max: int):
    def rec(i, remaining):
        if i == num_vertices:
            yield ()
            return
        for c in range(0, remaining + 1):
            for rest in rec(i + 1, remaining - c):
                yield (c,) + rest
    yield from rec(0, total_max)


def connected_multigraph_corpus(max_edges: int, loops: bool = True) -> list:
    """Exhaustive canonical corpus of connected multigraphs.

    Every connected multigraph is a connected simple frame with edge
    multiplicities >= 1 plus optional loops; assignments are generated over
    the frames and deduplicated by canonical form.
    """
    corpus = []
    seen = set()
    for frame in simple_connected_frames(max_edges):
        f = frame.num_edges()
        nv = frame.num_vertices()
        if f == 0:
            assignments = [()]
        else:
            assignments = list(_multiplicity_assignments(f, max_edges))
        for mult in assignments:
            used = sum(mult)
            loop_budget = max_edges - used
            loop_opts = (
                _loop_distributions(nv, loop_budget) if loops else [(0,) * nv]
            )
            for loop_counts in loop_opts:
                if not loops and f == 0 and nv == 1:
                    pass
                edges = []
                eid = 0
                for (orig, (u, v)), c in zip(frame.edges, mult):
                    for _ in range(c):
                        edges.append((eid, (u, v)))
                        eid += 1
                for v, c in zip(frame.vertices, loop_counts):
                    for _ in range(c):
                        edges.append((eid, (v, v)))
                        eid += 1
                cand = Multigraph(tuple(frame.vertices), tuple(edges))
                key = canonical_form(cand)
                if key not in seen:
                    seen.add(key)
                    corpus.append(cand)
    return corpus


def biconnected_planar_corpus(max_edges: int) -> list:
    """Exhaustive canonical corpus of biconnected planar multigraphs.

    A loop-free multigraph is biconnected iff its underlying simple graph
    is (with K2 counted as biconnected), so the corpus is the biconnected
    simple frames with all bounded multiplicity assignments, planar ones
    only, deduplicated canonically.
    """
    from .planarity import planar_embed

    corpus = []
    seen = set()
    for frame in simple_biconnected_frames(max_edges):
        f = frame.num_edges()
        for mult in _multiplicity_assignments(f, max_edges):
            edges = []
            eid = 0
            for (orig, (u, v)), c in zip(frame.edges, mult):
                for _ in range(c):
                    edges.append((eid, (u, v)))
                    eid += 1
            cand = Multigraph(tuple(frame.vertices), tuple(edges))
            key = canonical_form(cand)
            if key in seen:
                continue
            seen.add(key)
            if not classify_connectivity(cand).is_biconnected:
                continue
            if planar_embed(cand) is None:
                continue
            corpus.append(cand)
    return corpus
