"""Triangulations of polygonal domains."""

from .mesh import (
    RegionFunction,
    build_mesh,
    mesh_info,
    mesh_quality,
    refine,
    refine_uniform,
    structured_square_mesh,
)

__all__ = [
    "RegionFunction",
    "build_mesh",
    "mesh_info",
    "mesh_quality",
    "refine",
    "refine_uniform",
    "structured_square_mesh",
]
