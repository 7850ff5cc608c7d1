"""File loaders for meshes, materials and run configurations."""

from .config_loader import ConfigLoader, validate_config
from .gmsh_loader import GmshLoader, read_gmsh_v2, write_gmsh_v2
from .material_loader import MaterialLoader, read_bh_curve
from .native_loader import NativeLoader, read_native, write_native

__all__ = [
    "ConfigLoader",
    "GmshLoader",
    "MaterialLoader",
    "NativeLoader",
    "read_bh_curve",
    "read_gmsh_v2",
    "read_native",
    "validate_config",
    "write_gmsh_v2",
    "write_native",
]
