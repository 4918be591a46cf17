"""Generators and verifiers for the NP-hardness constructions: the
3-Partition reduction to Mutual Planar Duality, its simple-graph variant,
and the vertex-identification instance for Graph/Map Self-Duality.

The reduction builds G1 as an m-wheel with 3m pendant stars hanging off the
hub (star j has ``a_j - 1`` leaves) and G2 as an m-wheel with B loops on
every rim vertex.  Embedding star j into a face incident to the hub puts
``a_j`` loops on the corresponding dual vertex, so the instance is a
yes-instance of the duality problem iff the numbers admit a 3-partition.

For the simple variant every bridge of G1 and every loop of G2 becomes a
4-wheel gadget (bridge: the wheel in series with the endpoints on opposite
rim vertices; loop: the wheel glued at its hub).  A wheel of size 2 has a
doubled rim edge, so for m = 2 one rim edge of each graph additionally
becomes the series wheel and the other its dual gadget, a 4-cycle with two
extra vertices hooked to opposite cycle edges; that keeps both outputs
simple and dual to each other.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .isomorphism import BudgetExceededError
from .multigraph import Dart, InvalidGraphError, Multigraph, RotationSystem


@dataclass(frozen=True)
class ThreePartitionInstance:
    """Numbers (B, A) with |A| = 3m, sum(A) = m*B and B/4 < a < B/2."""

    B: int
    A: tuple

    def __post_init__(self):
        object.__setattr__(self, "A", tuple(self.A))
        if self.B <= 0 or any(a <= 0 for a in self.A):
            raise InvalidGraphError("B and all elements of A must be positive")
        if len(self.A) % 3 != 0 or not self.A:
            raise InvalidGraphError("A must contain 3m elements")
        m = len(self.A) // 3
        if sum(self.A) != m * self.B:
            raise InvalidGraphError("sum(A) must equal m*B")
        for a in self.A:
            if not (4 * a > self.B and 2 * a < self.B):
                raise InvalidGraphError(f"element {a} violates B/4 < a < B/2")

    @property
    def m(self) -> int:
        return len(self.A) // 3


def parse_instance(text: str) -> ThreePartitionInstance:
    """Instance file: a ``B <int>`` line and an ``A <int> <int> ...`` line."""
    b = None
    a = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "B" and len(parts) == 2:
            b = int(parts[1])
        elif parts[0] == "A" and len(parts) >= 2:
            a = tuple(int(tok) for tok in parts[1:])
        else:
            raise InvalidGraphError(f"line {lineno}: unrecognized line {line!r}")
    if b is None or a is None:
        raise InvalidGraphError("instance file needs both a B line and an A line")
    return ThreePartitionInstance(b, a)


def serialize_instance(inst: ThreePartitionInstance) -> str:
    return f"B {inst.B}\nA {' '.join(str(a) for a in inst.A)}\n"


# ---------------------------------------------------------------------------
# Graph construction
# ---------------------------------------------------------------------------


def _wheel_rotation(m: int, rim, spoke, rim_vertex, hub):
    """Embedding of an m-wheel with exactly m faces incident to the hub:
    spokes in rim order at the hub, (spoke, previous rim end, next rim
    start) at each rim vertex."""
    rot = {hub: [Dart(spoke(i), 1) for i in range(m)]}
    for i in range(m):
        rot[rim_vertex(i)] = [
            Dart(spoke(i), 2),
            Dart(rim((i - 1) % m), 2),
            Dart(rim(i), 1),
        ]
    return rot


def _g1_parts(inst: ThreePartitionInstance):
    m = inst.m
    hub = "u"
    rim_v = [("v", i) for i in range(m)]
    vertices = [hub] + rim_v
    edges = []
    for i in range(m):
        edges.append((("rim", i), (rim_v[i], rim_v[(i + 1) % m])))
    for i in range(m):
        edges.append((("spoke", i), (hub, rim_v[i])))
    for j, a in enumerate(inst.A):
        c = ("c", j)
        vertices.append(c)
        edges.append((("conn", j), (hub, c)))
        for t in range(a - 1):
            leaf = ("leaf", j, t)
            vertices.append(leaf)
            edges.append((("tleaf", j, t), (c, leaf)))
    return vertices, edges


def three_partition_graphs(inst: ThreePartitionInstance, simple: bool = False):
    """The reduction's graph pair ``(G1, G2)``.

    With ``simple=True`` both graphs come back loop- and parallel-free via
    the 4-wheel gadgets.
    """
    m = inst.m
    vertices1, edges1 = _g1_parts(inst)
    g1 = Multigraph(tuple(vertices1), tuple(edges1))

    hub2 = "w"
    rim2 = [("z", i) for i in range(m)]
    vertices2 = [hub2] + rim2
    edges2 = []
    for i in range(m):
        edges2.append((("rim", i), (rim2[i], rim2[(i + 1) % m])))
    for i in range(m):
        edges2.append((("spoke", i), (hub2, rim2[i])))
    for i in range(m):
        for t in range(inst.B):
            edges2.append((("loop", i, t), (rim2[i], rim2[i])))
    g2 = Multigraph(tuple(vertices2), tuple(edges2))

    if not simple:
        return g1, g2
    g1s, _ = _simplify_g1(inst, g1, None)
    g2s = _simplify_g2(inst, g2)
    return g1s, g2s


def partition_embedding(inst: ThreePartitionInstance, partition, simple: bool = False):
    """G1 together with the planar embedding dictated by a 3-partition.

    ``partition`` is a list of m index triples covering 0..3m-1; the stars
    of each triple are embedded into one hub face.  Returns ``(g1, rho)``
    matching :func:`three_partition_graphs` structurally.
    """
    m = inst.m
    triples = [tuple(t) for t in partition]
    if sorted(j for t in triples for j in t) != list(range(3 * m)) or any(
        len(t) != 3 for t in triples
    ):
        raise InvalidGraphError("partition must split 0..3m-1 into triples")
    vertices, edges = _g1_parts(inst)
    g1 = Multigraph(tuple(vertices), tuple(edges))

    rot = _wheel_rotation(m, lambda i: ("rim", i), lambda i: ("spoke", i), lambda i: ("v", i), "u")
    # trees of triple i go into the hub corner right after spoke i, which is
    # the face bounded by spoke i, rim i and spoke i+1
    hub_rot = []
    for i in range(m):
        hub_rot.append(Dart(("spoke", i), 1))
        for j in triples[i]:
            hub_rot.append(Dart(("conn", j), 1))
    rot["u"] = hub_rot
    for j, a in enumerate(inst.A):
        rot[("c", j)] = [Dart(("conn", j), 2)] + [Dart(("tleaf", j, t), 1) for t in range(a - 1)]
        for t in range(a - 1):
            rot[("leaf", j, t)] = [Dart(("tleaf", j, t), 2)]
    rho = RotationSystem(tuple((v, tuple(rot[v])) for v in g1.vertices))
    if not simple:
        return g1, rho
    return _simplify_g1(inst, g1, rho)


# ---------------------------------------------------------------------------
# 4-wheel gadget surgeries
# ---------------------------------------------------------------------------


def _bridges(g: Multigraph) -> list:
    out = []
    for eid in g.edge_ids:
        u, v = g.endpoints(eid)
        if u == v:
            continue
        rest = Multigraph(g.vertices, tuple((e, p) for e, p in g.edges if e != eid))
        if not rest.is_connected():
            out.append(eid)
    return out


def replace_edge_with_series_wheel(vertices, edges, rot, eid):
    """Replace edge ``eid`` = (x, y) by a 4-wheel whose rim runs
    x, r2, y, r4 with hub h.  ``rot`` (dart lists, mutated) may be None."""
    pairs = dict(edges)
    x, y = pairs.pop(eid)
    r2, r4, h = ("w", eid, "r2"), ("w", eid, "r4"), ("w", eid, "h")
    w = lambda k: ("w", eid, k)
    new_edges = [
        (w(1), (x, r2)),
        (w(2), (r2, y)),
        (w(3), (y, r4)),
        (w(4), (r4, x)),
        (w(5), (x, h)),
        (w(6), (r2, h)),
        (w(7), (y, h)),
        (w(8), (r4, h)),
    ]
    vertices.extend([r2, r4, h])
    idx = next(i for i, (e, _) in enumerate(edges) if e == eid)
    edges[idx:idx + 1] = new_edges
    if rot is None:
        return
    # rim rotations follow the wheel template; at the host vertices the old
    # dart is replaced by the fan from one rim edge to the other
    ix = rot[x].index(Dart(eid, 1))
    rot[x][ix:ix + 1] = [Dart(w(1), 1), Dart(w(5), 1), Dart(w(4), 2)]
    iy = rot[y].index(Dart(eid, 2))
    rot[y][iy:iy + 1] = [Dart(w(3), 1), Dart(w(7), 1), Dart(w(2), 2)]
    rot[r2] = [Dart(w(6), 1), Dart(w(1), 2), Dart(w(2), 1)]
    rot[r4] = [Dart(w(8), 1), Dart(w(3), 2), Dart(w(4), 1)]
    rot[h] = [Dart(w(5), 2), Dart(w(6), 2), Dart(w(7), 2), Dart(w(8), 2)]


def replace_edge_with_chorded_cycle(vertices, edges, rot, eid):
    """Replace edge ``eid`` = (x, y) by the dual gadget of the series wheel:
    a 4-cycle p, q, r, s with x hooked to p and q and y hooked to r and s."""
    pairs = dict(edges)
    x, y = pairs.pop(eid)
    p, q, r, s = (("x", eid, t) for t in ("p", "q", "r", "s"))
    c = lambda k: ("x", eid, k)
    new_edges = [
        (c(1), (p, q)),
        (c(2), (q, r)),
        (c(3), (r, s)),
        (c(4), (s, p)),
        (c(5), (x, p)),
        (c(6), (x, q)),
        (c(7), (y, r)),
        (c(8), (y, s)),
    ]
    vertices.extend([p, q, r, s])
    idx = next(i for i, (e, _) in enumerate(edges) if e == eid)
    edges[idx:idx + 1] = new_edges
    if rot is None:
        return
    ix = rot[x].index(Dart(eid, 1))
    rot[x][ix:ix + 1] = [Dart(c(6), 1), Dart(c(5), 1)]
    iy = rot[y].index(Dart(eid, 2))
    rot[y][iy:iy + 1] = [Dart(c(8), 1), Dart(c(7), 1)]
    rot[p] = [Dart(c(5), 2), Dart(c(1), 1), Dart(c(4), 2)]
    rot[q] = [Dart(c(6), 2), Dart(c(2), 1), Dart(c(1), 2)]
    rot[r] = [Dart(c(7), 2), Dart(c(3), 1), Dart(c(2), 2)]
    rot[s] = [Dart(c(8), 2), Dart(c(4), 1), Dart(c(3), 2)]


def replace_loop_with_hub_wheel(vertices, edges, eid):
    """Replace loop ``eid`` at z by a 4-wheel glued at its hub z."""
    pairs = dict(edges)
    z, z2 = pairs.pop(eid)
    assert z == z2
    ws = [("wl", eid, i) for i in range(4)]
    wl = lambda k: ("wl", eid, k)
    new_edges = [(wl("r%d" % i), (ws[i], ws[(i + 1) % 4])) for i in range(4)]
    new_edges += [(wl("s%d" % i), (z, ws[i])) for i in range(4)]
    vertices.extend(ws)
    idx = next(i for i, (e, _) in enumerate(edges) if e == eid)
    edges[idx:idx + 1] = new_edges


def _simplify_g1(inst: ThreePartitionInstance, g1: Multigraph, rho):
    vertices = list(g1.vertices)
    edges = [(e, p) for e, p in g1.edges]
    rot = {v: list(seq) for v, seq in rho.orders} if rho is not None else None
    for eid in _bridges(g1):
        replace_edge_with_series_wheel(vertices, edges, rot, eid)
    if inst.m == 2:
        # the 2-wheel's rim pair is parallel and its spokes dualize to the
        # dual wheel's parallel rim pair, so all four wheel edges become
        # series wheels here (and chorded cycles on the G2 side)
        for i in range(2):
            replace_edge_with_series_wheel(vertices, edges, rot, ("rim", i))
            replace_edge_with_series_wheel(vertices, edges, rot, ("spoke", i))
    out = Multigraph(tuple(vertices), tuple(edges))
    if rot is None:
        return out, None
    rho_out = RotationSystem(tuple((v, tuple(rot[v])) for v in out.vertices))
    return out, rho_out


def _simplify_g2(inst: ThreePartitionInstance, g2: Multigraph) -> Multigraph:
    vertices = list(g2.vertices)
    edges = [(e, p) for e, p in g2.edges]
    for eid, (u, v) in g2.edges:
        if u == v:
            replace_loop_with_hub_wheel(vertices, edges, eid)
    if inst.m == 2:
        # duals of the series wheels placed on G1's wheel edges
        for i in range(2):
            replace_edge_with_chorded_cycle(vertices, edges, None, ("rim", i))
            replace_edge_with_chorded_cycle(vertices, edges, None, ("spoke", i))
    return Multigraph(tuple(vertices), tuple(edges))


def gen_self_dual_instance(inst: ThreePartitionInstance) -> Multigraph:
    """The self-duality instance: G1 and G2 glued by identifying a rim
    vertex of G2's wheel (never its center) with the hub u of G1."""
    g1, g2 = three_partition_graphs(inst, simple=False)
    glue_at = ("z", 0)
    vmap = {}
    for v in g2.vertices:
        vmap[v] = "u" if v == glue_at else ("g2", v)
    vertices = tuple(g1.vertices) + tuple(
        ("g2", v) for v in g2.vertices if v != glue_at
    )
    edges = list(g1.edges)
    for eid, (a, b) in g2.edges:
        edges.append((("g2", eid), (vmap[a], vmap[b])))
    return Multigraph(vertices, tuple(edges))


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------


def mpd_answer(inst: ThreePartitionInstance, budget: Optional[int] = None) -> bool:
    """Decide the generated duality instance by enumerating assignments of
    the 3m stars to the m hub faces; yes iff some assignment puts exactly B
    loop-producing bridges into every face.

    Only the star-to-face assignment can change the dual's isomorphism
    type, so full rotation enumeration is never needed.
    """
    m = inst.m
    total = m ** (3 * m)
    if budget is not None and total > budget:
        raise BudgetExceededError(f"assignment count {total} exceeds budget {budget}")
    for assignment in itertools.product(range(m), repeat=3 * m):
        totals = [0] * m
        for j, face in enumerate(assignment):
            totals[face] += inst.A[j]
        if all(t == inst.B for t in totals):
            return True
    return False


def verify_3partition_mpd(
    inst: ThreePartitionInstance, decision: bool, budget: Optional[int] = None
) -> bool:
    """True iff the assignment enumeration agrees with ``decision``."""
    return mpd_answer(inst, budget) == decision


def find_partition(inst: ThreePartitionInstance, budget: Optional[int] = None):
    """An explicit partition into triples summing to B, or None."""
    m = inst.m
    total = m ** (3 * m)
    if budget is not None and total > budget:
        raise BudgetExceededError(f"assignment count {total} exceeds budget {budget}")
    for assignment in itertools.product(range(m), repeat=3 * m):
        totals = [0] * m
        for j, face in enumerate(assignment):
            totals[face] += inst.A[j]
        if all(t == inst.B for t in totals):
            triples = [[] for _ in range(m)]
            for j, face in enumerate(assignment):
                triples[face].append(j)
            if all(len(t) == 3 for t in triples):
                return [tuple(t) for t in triples]
    return None
