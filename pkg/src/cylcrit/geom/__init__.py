"""Geometry of lines tangent to the unit sphere."""

from .distance import (
    config_norm_distance,
    line_distance,
    line_distance_sq,
    pair_distance_sq,
    pairwise_distance_sq,
    rotate_line,
    transform_line,
)
from .models import GeometryError, OrientedLine, Rotation, TangentLine, rotation_matrices, skew_matrix

__all__ = [
    "GeometryError",
    "OrientedLine",
    "Rotation",
    "TangentLine",
    "config_norm_distance",
    "line_distance",
    "line_distance_sq",
    "pair_distance_sq",
    "pairwise_distance_sq",
    "rotate_line",
    "rotation_matrices",
    "skew_matrix",
    "transform_line",
]
