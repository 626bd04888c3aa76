"""Geometric representations of hypergraphs by points and shapes.

Exact rational tools around the reduction from pseudoline stretchability
to hypergraph recognition: arrangements and their doubled cells, the
reduction hypergraph, halfplane and unit-disk builders, separator
extraction, an exact verifier, and recognizers for several shape families.
"""
from .arrangement import (
    CellComplex,
    DoubledArrangement,
    HyperplaneArrangement,
    VertexData,
    WiringDiagram,
    canvas_lift,
    cells,
    check_stretching,
    insert_twins,
    wiring_from_lines,
)
from .fixtures import fixture
from .geometry import (
    DiskTranslate,
    EllipseTranslate,
    Halfspace,
    Hyperplane,
    PolygonTranslate,
    contains,
    separator_congruent,
    side_of_hyperplane,
    triangulate_hull,
)
from .hypergraph import Hypergraph, incidence_profile, parse_hypergraph, recognize_intervals, serialize_hypergraph
from .reduction import (
    DiskBuilderParams,
    ReductionOutput,
    build_hypergraph,
    disk_representation_from_stretching,
    extract_separators,
    halfspace_representation_from_stretching,
)
from .verify import Representation, VerifyReport, verify_representation

__version__ = "0.1.0"

__all__ = [
    "build_hypergraph", "canvas_lift", "CellComplex", "cells", "check_stretching", "contains",
    "disk_representation_from_stretching", "DiskBuilderParams", "DiskTranslate", "DoubledArrangement",
    "EllipseTranslate", "extract_separators", "fixture", "Halfspace",
    "halfspace_representation_from_stretching", "Hypergraph", "Hyperplane", "HyperplaneArrangement",
    "incidence_profile", "insert_twins", "parse_hypergraph", "PolygonTranslate", "recognize_intervals",
    "ReductionOutput", "Representation", "separator_congruent", "serialize_hypergraph", "side_of_hyperplane",
    "triangulate_hull", "verify_representation", "VerifyReport", "VertexData", "wiring_from_lines",
    "WiringDiagram",
]
