"""Undirected multigraphs with identity-carrying edges, plus combinatorial
embeddings (rotation systems), face tracing, planar duals and the adhesion
operation.

Edges may be loops or parallels.  Every edge yields exactly two darts
(edge-ends); the dart ``(e, 1)`` sits at the first stored endpoint of ``e``
and ``(e, 2)`` at the second.  A rotation system assigns to each vertex the
cyclic order of the darts ending there.  All values are immutable after
construction and all operations are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

VertexId = Hashable
EdgeId = Hashable


class InvalidGraphError(ValueError):
    """Raised for malformed graphs, rotations or format violations."""


class NotPlanarError(ValueError):
    """Raised when an operation requires a genus-0 rotation system."""


@dataclass(frozen=True, order=True)
class Dart:
    """One end of an edge: ``slot`` selects the first or second endpoint."""

    edge: EdgeId
    slot: int  # 1 or 2

    @property
    def twin(self) -> "Dart":
        return Dart(self.edge, 3 - self.slot)

    def __repr__(self) -> str:
        return f"{self.edge}.{self.slot}"


@dataclass(frozen=True)
class Multigraph:
    """An undirected multigraph: vertex ids plus edge id -> endpoint pair.

    Loops (equal endpoints) and parallel edges are permitted.  A loop
    contributes 2 to the degree of its vertex.  Endpoint pairs keep their
    stored order only to anchor darts; the graph itself is undirected.
    """

    vertices: tuple
    edges: tuple  # of (edge_id, (u, v))
    _edge_map: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        vset = set()
        for v in self.vertices:
            if v in vset:
                raise InvalidGraphError(f"duplicate vertex id {v!r}")
            vset.add(v)
        emap = {}
        for eid, ends in self.edges:
            if eid in emap:
                raise InvalidGraphError(f"duplicate edge id {eid!r}")
            u, v = ends
            if u not in vset or v not in vset:
                raise InvalidGraphError(f"edge {eid!r} has dangling endpoint")
            emap[eid] = (u, v)
        object.__setattr__(self, "_edge_map", emap)

    # -- basic accessors -------------------------------------------------

    @property
    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    @property
    def edge_ids(self) -> tuple:
        return tuple(eid for eid, _ in self.edges)

    def endpoints(self, eid: EdgeId) -> tuple:
        return self._edge_map[eid]

    def has_edge(self, eid: EdgeId) -> bool:
        return eid in self._edge_map

    def is_loop(self, eid: EdgeId) -> bool:
        u, v = self._edge_map[eid]
        return u == v

    def num_vertices(self) -> int:
        return len(self.vertices)

    def num_edges(self) -> int:
        return len(self.edges)

    def head(self, d: Dart) -> VertexId:
        return self._edge_map[d.edge][d.slot - 1]

    def darts(self) -> Iterator[Dart]:
        for eid, _ in self.edges:
            yield Dart(eid, 1)
            yield Dart(eid, 2)

    def darts_at(self, v: VertexId) -> list:
        out = []
        for eid, (a, b) in self.edges:
            if a == v:
                out.append(Dart(eid, 1))
            if b == v:
                out.append(Dart(eid, 2))
        return out

    def degree(self, v: VertexId) -> int:
        return len(self.darts_at(v))

    def incident_edges(self, v: VertexId) -> list:
        return sorted({d.edge for d in self.darts_at(v)}, key=repr)

    def neighbors(self, v: VertexId) -> set:
        out = set()
        for eid, (a, b) in self.edges:
            if a == v:
                out.add(b)
            if b == v:
                out.add(a)
        out.discard(v)
        return out

    def is_simple(self) -> bool:
        seen = set()
        for eid, (u, v) in self.edges:
            if u == v:
                return False
            key = frozenset((u, v))
            if key in seen:
                return False
            seen.add(key)
        return True

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        adj: dict = {v: set() for v in self.vertices}
        for _, (u, v) in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    # -- derived graphs ---------------------------------------------------

    def relabeled(self, vertex_map: Mapping, edge_map: Mapping | None = None) -> "Multigraph":
        emap = edge_map or {}
        return Multigraph(
            tuple(vertex_map.get(v, v) for v in self.vertices),
            tuple(
                (emap.get(eid, eid), (vertex_map.get(u, u), vertex_map.get(v, v)))
                for eid, (u, v) in self.edges
            ),
        )


def build_graph(vertices: Iterable, edges) -> Multigraph:
    """Build a multigraph from a vertex list and an edge specification.

    ``edges`` is either a mapping ``edge_id -> (u, v)`` or an iterable of
    ``(edge_id, (u, v))`` pairs.  Raises :class:`InvalidGraphError` on
    duplicate ids or endpoints outside of the vertex list.
    """
    if isinstance(edges, Mapping):
        edge_items = tuple((eid, (u, v)) for eid, (u, v) in edges.items())
    else:
        edge_items = tuple((eid, (u, v)) for eid, (u, v) in edges)
    return Multigraph(tuple(vertices), edge_items)


# ---------------------------------------------------------------------------
# Rotation systems and faces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RotationSystem:
    """Per-vertex cyclic order of the darts whose head is that vertex."""

    orders: tuple  # of (vertex, tuple of darts)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_map", dict(self.orders))

    @staticmethod
    def from_dict(d: Mapping) -> "RotationSystem":
        return RotationSystem(tuple((v, tuple(seq)) for v, seq in d.items()))

    def rotation(self, v: VertexId) -> tuple:
        return self._map[v]

    def as_dict(self) -> dict:
        return dict(self.orders)

    def vertices(self) -> tuple:
        return tuple(v for v, _ in self.orders)

    def successor(self, v: VertexId, d: Dart) -> Dart:
        seq = self._map[v]
        i = seq.index(d)
        return seq[(i + 1) % len(seq)]

    def mirrored(self) -> "RotationSystem":
        return RotationSystem(tuple((v, tuple(reversed(seq))) for v, seq in self.orders))


def validate_rotation(graph: Multigraph, rho: RotationSystem) -> None:
    """Check that ``rho`` is a rotation system on ``graph``; raise otherwise."""
    seen: set = set()
    rot_vertices = set(rho.vertices())
    if rot_vertices != set(graph.vertices):
        raise InvalidGraphError("rotation vertex set differs from graph vertex set")
    for v, seq in rho.orders:
        expected = set(graph.darts_at(v))
        got = set(seq)
        if len(seq) != len(got):
            raise InvalidGraphError(f"repeated dart in rotation at {v!r}")
        if got != expected:
            raise InvalidGraphError(f"rotation at {v!r} does not match incident darts")
        seen |= got
    all_darts = set(graph.darts())
    if seen != all_darts:
        raise InvalidGraphError("rotation does not cover the dart set")


@dataclass(frozen=True)
class FaceSet:
    """Faces of an embedded graph: face id -> cyclic dart sequence."""

    faces: tuple  # of tuple of darts

    def __post_init__(self) -> None:
        where = {}
        for i, cyc in enumerate(self.faces):
            for d in cyc:
                where[d] = i
        object.__setattr__(self, "_face_of", where)

    def num_faces(self) -> int:
        return len(self.faces)

    def face_of(self, d: Dart) -> int:
        return self._face_of[d]

    def degree(self, face_id: int) -> int:
        return len(self.faces[face_id])

    def vertices_on(self, graph: Multigraph, face_id: int) -> set:
        return {graph.head(d) for d in self.faces[face_id]}


def trace_faces(graph: Multigraph, rho: RotationSystem) -> FaceSet:
    """Trace the faces induced by ``rho``.

    The dart following ``d`` on its face is the rotation successor of
    ``twin(d)`` at the head of ``twin(d)``.  Every dart lies on exactly one
    face.  Requires a connected graph.
    """
    if not graph.is_connected():
        raise InvalidGraphError("face tracing requires a connected graph")
    validate_rotation(graph, rho)
    remaining = set(graph.darts())
    faces = []
    # deterministic start darts: follow edge insertion order
    order = list(graph.darts())
    for start in order:
        if start not in remaining:
            continue
        cyc = []
        d = start
        while True:
            cyc.append(d)
            remaining.discard(d)
            t = d.twin
            d = rho.successor(graph.head(t), t)
            if d == start:
                break
        faces.append(tuple(cyc))
    return FaceSet(tuple(faces))


def is_planar_embedding(graph: Multigraph, rho: RotationSystem) -> bool:
    """Euler check: a rotation system of a connected graph has genus 0 iff
    |V| - |E| + |F| = 2."""
    fs = trace_faces(graph, rho)
    return graph.num_vertices() - graph.num_edges() + fs.num_faces() == 2


# ---------------------------------------------------------------------------
# Dual graph
# ---------------------------------------------------------------------------


def dual_graph(graph: Multigraph, rho: RotationSystem):
    """Dual of a connected plane graph.

    Returns ``(dual, dual_rho, edge_bijection)`` where the dual's vertices
    are the face ids of ``trace_faces(graph, rho)``, each primal edge ``e``
    becomes the dual edge with the same id joining the faces of its two
    darts, and ``dual_rho`` is the embedding induced by the face orders
    (the dual dart of a primal dart ``(e, s)`` is ``(e, s)`` again).
    """
    fs = trace_faces(graph, rho)
    if graph.num_vertices() - graph.num_edges() + fs.num_faces() != 2:
        raise NotPlanarError("rotation system is not a planar embedding")
    edge_items = []
    for eid, _ in graph.edges:
        f1 = fs.face_of(Dart(eid, 1))
        f2 = fs.face_of(Dart(eid, 2))
        edge_items.append((eid, (f1, f2)))
    dual = Multigraph(tuple(range(fs.num_faces())), tuple(edge_items))
    orders = []
    for i, cyc in enumerate(fs.faces):
        orders.append((i, tuple(Dart(d.edge, d.slot) for d in cyc)))
    dual_rho = RotationSystem(tuple(orders))
    bijection = {eid: eid for eid, _ in graph.edges}
    return dual, dual_rho, bijection


def adhesion(graph: Multigraph, rho: RotationSystem, v: VertexId, face_id: int) -> Multigraph:
    """Identify ``v`` with the dual vertex of ``face_id`` in G + G*.

    The dual is taken with respect to ``rho``; ``v`` must lie on the face.
    Dual vertices other than the glued one become ``("f", i)`` and dual
    edges become ``("star", e)`` to keep ids disjoint from the primal ones.
    """
    fs = trace_faces(graph, rho)
    if face_id < 0 or face_id >= fs.num_faces():
        raise InvalidGraphError(f"no face {face_id}")
    if v not in fs.vertices_on(graph, face_id):
        raise InvalidGraphError(f"vertex {v!r} is not incident to face {face_id}")
    dual, _, _ = dual_graph(graph, rho)

    def dual_vertex(i):
        return v if i == face_id else ("f", i)

    vertices = tuple(graph.vertices) + tuple(
        ("f", i) for i in range(fs.num_faces()) if i != face_id
    )
    edge_items = list(graph.edges)
    for eid, (a, b) in dual.edges:
        edge_items.append((("star", eid), (dual_vertex(a), dual_vertex(b))))
    return Multigraph(vertices, tuple(edge_items))


# ---------------------------------------------------------------------------
# Text format
# ---------------------------------------------------------------------------
#
# One item per line:
#   v <id>
#   e <id> <u> <v>
#   rot <v>: <dart> ...        (dart = <edgeid>.<1|2>)
#   # comment
#
# Ids are stored as ints when they parse as ints, otherwise as strings.
# Serialization preserves insertion order, so parse -> serialize -> parse is
# the identity on structures.


def _parse_id(token: str):
    try:
        return int(token)
    except ValueError:
        return token


def _id_str(x) -> str:
    s = str(x)
    if any(c.isspace() for c in s) or ":" in s or "." in s:
        raise InvalidGraphError(f"id {x!r} is not representable in the text format")
    return s


def parse_graph(text: str):
    """Parse the text graph format; returns ``(Multigraph, RotationSystem | None)``."""
    vertices: list = []
    edges: list = []
    rot_lines: list = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("rot "):
            body = line[4:]
            if ":" not in body:
                raise InvalidGraphError(f"line {lineno}: malformed rot line")
            vtok, dpart = body.split(":", 1)
            darts = []
            for tok in dpart.split():
                if "." not in tok:
                    raise InvalidGraphError(f"line {lineno}: malformed dart {tok!r}")
                eid_tok, slot_tok = tok.rsplit(".", 1)
                if slot_tok not in ("1", "2"):
                    raise InvalidGraphError(f"line {lineno}: dart slot must be 1 or 2")
                darts.append(Dart(_parse_id(eid_tok), int(slot_tok)))
            rot_lines.append((_parse_id(vtok.strip()), tuple(darts)))
            continue
        parts = line.split()
        if parts[0] == "v" and len(parts) == 2:
            vertices.append(_parse_id(parts[1]))
        elif parts[0] == "e" and len(parts) == 4:
            edges.append((_parse_id(parts[1]), (_parse_id(parts[2]), _parse_id(parts[3]))))
        else:
            raise InvalidGraphError(f"line {lineno}: unrecognized line {line!r}")
    graph = Multigraph(tuple(vertices), tuple(edges))
    rho = None
    if rot_lines:
        rho = RotationSystem(tuple(rot_lines))
        validate_rotation(graph, rho)
    return graph, rho


def serialize_graph(graph: Multigraph, rho: RotationSystem | None = None) -> str:
    lines = []
    for v in graph.vertices:
        lines.append(f"v {_id_str(v)}")
    for eid, (u, v) in graph.edges:
        lines.append(f"e {_id_str(eid)} {_id_str(u)} {_id_str(v)}")
    if rho is not None:
        for v, seq in rho.orders:
            darts = " ".join(f"{_id_str(d.edge)}.{d.slot}" for d in seq)
            lines.append(f"rot {_id_str(v)}: {darts}".rstrip())
    return "\n".join(lines) + "\n"
