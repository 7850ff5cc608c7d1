"""Tests for mixedmag."""

from pathlib import Path

RESOURCES_PATH = Path(__file__).parent / "resources"
MESHES_PATH = RESOURCES_PATH / "meshes"
MATERIALS_PATH = RESOURCES_PATH / "materials"
