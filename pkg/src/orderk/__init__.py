"""Order-k Voronoi diagrams, natural-neighbour coordinates and interpolation."""

from .coordinates import (
    CellIdentityReport,
    WeightVector,
    aurenhammer_identity,
    generalized_weights,
    quad_area_ratio,
    quad_identity,
    sibson_weights,
)
from .errors import DegenerateInput, OrderkError, UnboundedCell, UnboundedRegion
from .geom_core import ConvexPolygon, HalfPlane, PointSet, bounding_box, validate_general_position
from .interp1d import Samples1D, g1, g2, g3, property_line
from .interp2d import ScatterData, interpolate, interpolate_multi
from .voronoi import CellCache, OrderKCell, OrderKDiagram, Region, build_diagram, cell, region

__version__ = "0.1.0"

__all__ = [
    "CellCache",
    "CellIdentityReport",
    "ConvexPolygon",
    "DegenerateInput",
    "HalfPlane",
    "OrderKCell",
    "OrderKDiagram",
    "OrderkError",
    "PointSet",
    "Region",
    "Samples1D",
    "ScatterData",
    "UnboundedCell",
    "UnboundedRegion",
    "WeightVector",
    "aurenhammer_identity",
    "bounding_box",
    "build_diagram",
    "cell",
    "g1",
    "g2",
    "g3",
    "generalized_weights",
    "interpolate",
    "interpolate_multi",
    "property_line",
    "quad_area_ratio",
    "quad_identity",
    "region",
    "sibson_weights",
    "validate_general_position",
]
