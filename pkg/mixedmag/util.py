"""Small helpers shared by the facade and the command line."""

from __future__ import annotations

from dataclasses import replace
from pathlib import Path

from mixedmag.loader import GmshLoader, NativeLoader
from mixedmag.models import Mesh, RunConfig
from mixedmag.solver import NewtonOptions

GMSH_SUFFIXES = (".msh",)


def load_mesh(path: str | Path) -> Mesh:
    """Read a mesh file, choosing the reader by suffix (.msh is Gmsh, anything else native)."""
    path = Path(path)
    if path.suffix.lower() in GMSH_SUFFIXES:
        return GmshLoader.load(path)
    return NativeLoader.load(path)


def newton_options(config: RunConfig, base: NewtonOptions | None = None) -> NewtonOptions:
    """Apply tolerance and iteration overrides of a run configuration."""
    options = base or NewtonOptions()
    if config.tol is not None:
        options = replace(options, rel_residual_tol=config.tol)
    if config.max_iterations is not None:
        options = replace(options, max_iterations=config.max_iterations)
    return options
