"""Exact isomorphism and canonical forms for multigraphs.

Multigraphs are handled natively through edge-multiplicity matrices with
loop counts; no gadget subdivision.  The isomorphism test combines
iterative color refinement with backtracking.  The canonical form is the
minimum adjacency encoding over the orderings explored by
individualization-refinement; exponential in the worst case, which is fine
for the desk-scale, highly structured inputs this package works on.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Optional

from .multigraph import Multigraph


class BudgetExceededError(RuntimeError):
    """Raised when an explicit search or enumeration budget is exhausted."""


@dataclass(frozen=True)
class IsoMapping:
    """A vertex bijection together with the induced edge bijection."""

    vertex_map: tuple  # of (v1, v2)
    edge_map: tuple  # of (e1, e2)

    def vertex_dict(self) -> dict:
        return dict(self.vertex_map)

    def edge_dict(self) -> dict:
        return dict(self.edge_map)


# ---------------------------------------------------------------------------
# Indexed view
# ---------------------------------------------------------------------------


class _Indexed:
    __slots__ = ("verts", "vidx", "n", "loops", "mult", "adj", "deg")

    def __init__(self, g: Multigraph):
        self.verts = list(g.vertices)
        self.vidx = {v: i for i, v in enumerate(self.verts)}
        n = len(self.verts)
        self.n = n
        self.loops = [0] * n
        self.mult: dict = {}
        for _, (u, v) in g.edges:
            iu, iv = self.vidx[u], self.vidx[v]
            if iu == iv:
                self.loops[iu] += 1
            else:
                key = (iu, iv) if iu < iv else (iv, iu)
                self.mult[key] = self.mult.get(key, 0) + 1
        self.adj = [[] for _ in range(n)]
        for (i, j), c in self.mult.items():
            self.adj[i].append((j, c))
            self.adj[j].append((i, c))
        self.deg = [2 * self.loops[i] + sum(c for _, c in self.adj[i]) for i in range(n)]

    def mult_between(self, i: int, j: int) -> int:
        if i == j:
            return self.loops[i]
        key = (i, j) if i < j else (j, i)
        return self.mult.get(key, 0)


def _refine_joint(idxs, colors_list):
    """Refine colorings of several graphs jointly until stable.

    Colors are shared integer ranks, so equal colors across graphs mean
    equal refinement history.
    """
    while True:
        sigs_per = []
        for idx, colors in zip(idxs, colors_list):
            sigs = []
            for v in range(idx.n):
                prof = sorted((c, colors[u]) for (u, c) in idx.adj[v])
                sigs.append((colors[v], idx.loops[v], tuple(prof)))
            sigs_per.append(sigs)
        universe = sorted({s for sigs in sigs_per for s in sigs})
        rank = {s: i for i, s in enumerate(universe)}
        new_list = [[rank[s] for s in sigs] for sigs in sigs_per]
        old_count = len({c for colors in colors_list for c in colors})
        if len(universe) == old_count:
            return new_list
        colors_list = new_list


def _initial_colors(idxs, color_maps):
    sigs_per = []
    for idx, cmap in zip(idxs, color_maps):
        sigs = []
        for v in range(idx.n):
            user = repr(cmap.get(idx.verts[v])) if cmap else ""
            sigs.append((user, idx.loops[v], idx.deg[v]))
        sigs_per.append(sigs)
    universe = sorted({s for sigs in sigs_per for s in sigs})
    rank = {s: i for i, s in enumerate(universe)}
    return [[rank[s] for s in sigs] for sigs in sigs_per]


# ---------------------------------------------------------------------------
# Isomorphism search
# ---------------------------------------------------------------------------


def is_isomorphic(
    g1: Multigraph,
    g2: Multigraph,
    colors: Optional[tuple] = None,
    step_budget: Optional[int] = None,
) -> Optional[IsoMapping]:
    """Return an adjacency- and multiplicity-preserving bijection, or None.

    ``colors`` is an optional pair of per-vertex label mappings that the
    bijection must respect.  ``step_budget`` caps the number of candidate
    assignments tried before :class:`BudgetExceededError` is raised.
    """
    if g1.num_vertices() != g2.num_vertices() or g1.num_edges() != g2.num_edges():
        return None
    i1, i2 = _Indexed(g1), _Indexed(g2)
    c1map = dict(colors[0]) if colors else {}
    c2map = dict(colors[1]) if colors else {}
    cols = _initial_colors([i1, i2], [c1map, c2map])
    cols = _refine_joint([i1, i2], cols)
    col1, col2 = cols
    if sorted(col1) != sorted(col2):
        return None

    n = i1.n
    by_color2: dict = {}
    for v in range(n):
        by_color2.setdefault(col2[v], []).append(v)

    mapping = [-1] * n
    used = [False] * n
    steps = 0

    def candidates(u):
        return by_color2.get(col1[u], ())

    def pick_next(done):
        # prefer vertices adjacent to already-mapped ones, then rare colors
        best, best_key = -1, None
        counts: dict = {}
        for c in col1:
            counts[c] = counts.get(c, 0) + 1
        for u in range(n):
            if mapping[u] >= 0:
                continue
            anchored = sum(1 for (w, _) in i1.adj[u] if mapping[w] >= 0)
            key = (-anchored, counts[col1[u]], u)
            if best_key is None or key < best_key:
                best, best_key = u, key
        return best

    def consistent(u, v):
        if i1.loops[u] != i2.loops[v]:
            return False
        for (w, c) in i1.adj[u]:
            mv = mapping[w]
            if mv >= 0 and i2.mult_between(v, mv) != c:
                return False
        neigh = sum(1 for (w, _) in i1.adj[u] if mapping[w] >= 0)
        neigh2 = sum(1 for (w, _) in i2.adj[v] if used[w] and w != v)
        return neigh == neigh2

    def search(depth):
        nonlocal steps
        if depth == n:
            return True
        u = pick_next(depth)
        for v in candidates(u):
            if used[v]:
                continue
            steps += 1
            if step_budget is not None and steps > step_budget:
                raise BudgetExceededError("isomorphism step budget exceeded")
            if consistent(u, v):
                mapping[u] = v
                used[v] = True
                if search(depth + 1):
                    return True
                mapping[u] = -1
                used[v] = False
        return False

    if not search(0):
        return None

    vmap = {i1.verts[u]: i2.verts[mapping[u]] for u in range(n)}
    emap = _edge_bijection(g1, g2, vmap)
    return IsoMapping(tuple(sorted(vmap.items(), key=repr)), tuple(sorted(emap.items(), key=repr)))


def _edge_bijection(g1: Multigraph, g2: Multigraph, vmap: Mapping) -> dict:
    """Pair up parallel classes deterministically under a vertex bijection."""
    buckets2: dict = {}
    for eid, (u, v) in g2.edges:
        key = frozenset((u, v)) if u != v else frozenset((u,))
        buckets2.setdefault(key, []).append(eid)
    for key in buckets2:
        buckets2[key].sort(key=repr)
    emap = {}
    buckets1: dict = {}
    for eid, (u, v) in g1.edges:
        mu, mv = vmap[u], vmap[v]
        key = frozenset((mu, mv)) if mu != mv else frozenset((mu,))
        buckets1.setdefault(key, []).append(eid)
    for key, eids in buckets1.items():
        eids.sort(key=repr)
        for a, b in zip(eids, buckets2[key]):
            emap[a] = b
    return emap


# ---------------------------------------------------------------------------
# Canonical form
# ---------------------------------------------------------------------------


def _refine_single(idx, colors):
    return _refine_joint([idx], [colors])[0]


def _transposition_classes(idx, cell):
    """Split a cell into classes whose members are pairwise swappable by an
    automorphism that only exchanges the two vertices."""
    classes = []
    for v in cell:
        placed = False
        for cls in classes:
            u = cls[0]
            if idx.loops[u] == idx.loops[v] and all(
                idx.mult_between(u, x) == idx.mult_between(v, x)
                for x in range(idx.n)
                if x != u and x != v
            ):
                cls.append(v)
                placed = True
                break
        if not placed:
            classes.append([v])
    return classes


def canonical_form(g: Multigraph) -> bytes:
    """Label-invariant canonical encoding.

    ``canonical_form(a) == canonical_form(b)`` iff the graphs are
    isomorphic.
    """
    return _canonical_cached(_hashable(g))


def _hashable(g: Multigraph):
    return (tuple(g.vertices), tuple((eid, (u, v)) for eid, (u, v) in g.edges))


@lru_cache(maxsize=200000)
def _canonical_cached(key) -> bytes:
    vertices, edges = key
    g = Multigraph(vertices, edges)
    idx = _Indexed(g)
    n = idx.n
    if n == 0:
        return b"(0)"
    best = [None]

    def encode(order):
        pos = sorted(range(n), key=lambda v: order[v])
        loops = tuple(idx.loops[v] for v in pos)
        tri = []
        for i in range(n):
            for j in range(i + 1, n):
                tri.append(idx.mult_between(pos[i], pos[j]))
        return (n, loops, tuple(tri))

    def rec(colors):
        colors = _refine_single(idx, colors)
        cells: dict = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = cells[c]
                break
        if target is None:
            enc = encode(colors)
            if best[0] is None or enc < best[0]:
                best[0] = enc
            return
        for cls in _transposition_classes(idx, target):
            v = min(cls)
            nxt = [c * 2 for c in colors]
            nxt[v] -= 1
            rec(nxt)

    init = _initial_colors([idx], [{}])[0]
    rec(init)
    return repr(best[0]).encode()
