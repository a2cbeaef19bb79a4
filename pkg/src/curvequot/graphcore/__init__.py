"""Finite graphs, electrification along subset families, and metric diagnostics."""
from .core import (
    CAP_EXCEEDED,
    UNREACHABLE,
    Cone,
    ElectrifiedGraph,
    Graph,
    HalfDistance,
    SubsetFamily,
    distance,
    electrify,
)
from .diagnostics import (
    VertexMap,
    WpdCensus,
    count_parallel_translates,
    delta_four_point,
    nearest_point_projection,
    projection_diameter,
    quasiconvexity_constant,
    translation_growth,
    wpd_census,
)
from .io import dump_graph, load_graph, parse_graph
from .kernels import BACKEND

__all__ = [
    "BACKEND",
    "CAP_EXCEEDED",
    "UNREACHABLE",
    "Cone",
    "ElectrifiedGraph",
    "Graph",
    "HalfDistance",
    "SubsetFamily",
    "VertexMap",
    "WpdCensus",
    "count_parallel_translates",
    "delta_four_point",
    "distance",
    "dump_graph",
    "electrify",
    "load_graph",
    "nearest_point_projection",
    "parse_graph",
    "projection_diameter",
    "quasiconvexity_constant",
    "translation_growth",
    "wpd_census",
]
