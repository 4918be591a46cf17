"""Mutual planar duality and graph self-duality for biconnected planar
multigraphs, decided through SPQR-trees, dual SPQR-trees and a reduction to
graph isomorphism, with a brute-force embedding-enumeration oracle."""

from .multigraph import (
    Dart,
    FaceSet,
    InvalidGraphError,
    Multigraph,
    NotPlanarError,
    RotationSystem,
    adhesion,
    build_graph,
    dual_graph,
    is_planar_embedding,
    parse_graph,
    serialize_graph,
    trace_faces,
    validate_rotation,
)
from .isomorphism import BudgetExceededError, IsoMapping, canonical_form, is_isomorphic
from .planarity import ConnectivityReport, classify_connectivity, planar_embed, split_pairs

__all__ = [
    "Dart",
    "FaceSet",
    "InvalidGraphError",
    "Multigraph",
    "NotPlanarError",
    "RotationSystem",
    "adhesion",
    "build_graph",
    "dual_graph",
    "is_planar_embedding",
    "parse_graph",
    "serialize_graph",
    "trace_faces",
    "validate_rotation",
    "BudgetExceededError",
    "IsoMapping",
    "canonical_form",
    "is_isomorphic",
    "ConnectivityReport",
    "classify_connectivity",
    "planar_embed",
    "split_pairs",
]
