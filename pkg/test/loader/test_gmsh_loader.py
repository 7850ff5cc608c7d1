"""Test the Gmsh 2.2 reader and writer."""

import logging

import numpy as np
import pytest

from mixedmag.exceptions import (
    MalformedSectionError,
    NonConformingError,
    NonPlanarError,
    UnsupportedVersionError,
)
from mixedmag.loader import GmshLoader, NativeLoader, read_gmsh_v2, read_native, write_gmsh_v2, write_native
from mixedmag.mesh import structured_square_mesh

from .. import MESHES_PATH


def test_minimal_file():
    """Test one triangle with physical tag 7."""
    data = GmshLoader.load_data(MESHES_PATH / "minimal_tag7.msh")
    assert data.triangles.tolist() == [[0, 1, 2]]
    assert data.region_tags.tolist() == [7]
    assert data.boundary_markers == {}


def test_physical_names_and_markers():
    """Test line elements become boundary markers and point elements are skipped."""
    data = GmshLoader.load_data(MESHES_PATH / "square.msh")
    assert data.physical_names == {(1, 11): "outer", (2, 3): "iron"}
    assert data.region_tags.tolist() == [3, 3]
    assert set(data.boundary_markers.values()) == {11}
    assert len(data.boundary_markers) == 4
    mesh = GmshLoader.load(MESHES_PATH / "square.msh")
    assert (mesh.num_nodes, mesh.num_edges, mesh.num_triangles) == (4, 5, 2)


def test_unreferenced_nodes_are_dropped(caplog):
    """Test nodes outside every triangle are removed with a warning."""
    with caplog.at_level(logging.WARNING, logger="mixedmag.log"):
        data = GmshLoader.load_data(MESHES_PATH / "unreferenced_node.msh")
    assert data.nodes.tolist() == [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]
    assert data.triangles.tolist() == [[0, 1, 2]]
    assert "Dropping 1 Gmsh nodes" in caplog.text


@pytest.mark.parametrize(
    ("filename", "error", "line_number"),
    [
        ("quad_element.msh", MalformedSectionError, 13),
        ("truncated.msh", MalformedSectionError, 8),
        ("nonplanar.msh", NonPlanarError, None),
        ("version4.msh", UnsupportedVersionError, None),
    ],
)
def test_invalid_files(filename, error, line_number):
    """Test rejected inputs report where they failed."""
    with pytest.raises(error) as excinfo:
        GmshLoader.load_data(MESHES_PATH / filename)
    if line_number is not None:
        assert excinfo.value.line_number == line_number
        assert str(excinfo.value).startswith(f"line {line_number}:")


@pytest.mark.parametrize(
    ("text", "message"),
    [
        ("$Nodes\n0\n$EndNodes\n", "before $MeshFormat"),
        ("$MeshFormat\n2.2 0 8\n$EndMeshFormat\n", "missing $Nodes"),
        ("$MeshFormat\n2.2 1 8\n$EndMeshFormat\n", "binary"),
        ("$MeshFormat\n2.2 0 8\n$EndMeshFormat\n$Nodes\n1\n1 0 0 0\n1 1 0 0\n$EndNodes\n", "expected"),
    ],
)
def test_structural_errors(text, message):
    """Test section order and layout errors."""
    with pytest.raises((MalformedSectionError, UnsupportedVersionError), match=message):
        read_gmsh_v2(text)


def test_unknown_sections_are_skipped():
    """Test sections other than the mesh sections are ignored."""
    text = (MESHES_PATH / "minimal_tag7.msh").read_text(encoding="utf-8")
    text += "$NodeData\n1\n\"a\"\n$EndNodeData\n"
    assert read_gmsh_v2(text).region_tags.tolist() == [7]


def test_writer_roundtrip():
    """Test the reader accepts the writer's output unchanged."""
    mesh = structured_square_mesh(3, lambda x, y: int(x > 0.5))
    data = read_gmsh_v2(write_gmsh_v2(mesh, {(2, 1): "iron"}))
    assert np.array_equal(data.nodes, mesh.nodes)
    assert np.array_equal(data.triangles, mesh.triangles)
    assert np.array_equal(data.region_tags, mesh.region_tags)
    assert data.physical_names == {(2, 1): "iron"}


def test_gmsh_to_native_roundtrip(tmp_path):
    """Test a Gmsh mesh written natively parses back to the same connectivity and tags."""
    mesh = GmshLoader.load(MESHES_PATH / "square.msh")
    NativeLoader.save(mesh, tmp_path / "square.mesh")
    again = NativeLoader.load(tmp_path / "square.mesh")
    assert np.array_equal(again.nodes, mesh.nodes)
    assert np.array_equal(again.triangles, mesh.triangles)
    assert np.array_equal(again.region_tags, mesh.region_tags)
    assert again.boundary_markers == mesh.boundary_markers
    assert read_native(write_native(mesh)).triangles.tolist() == mesh.triangles.tolist()


def test_line_element_inside_domain(tmp_path):
    """Test a line element along an interior edge is rejected when building the mesh."""
    text = (MESHES_PATH / "square.msh").read_text(encoding="utf-8")
    text = text.replace("$Elements\n7\n", "$Elements\n8\n").replace(
        "$EndElements", "8 1 2 11 1 1 3\n$EndElements"
    )
    path = tmp_path / "diagonal.msh"
    path.write_text(text, encoding="utf-8")
    assert (0, 2) in GmshLoader.load_data(path).boundary_markers
    with pytest.raises(NonConformingError, match="interior edge"):
        GmshLoader.load(path)


def test_invalid_utf8(tmp_path):
    """Test undecodable bytes report the line they occur on."""
    path = tmp_path / "binary.msh"
    path.write_bytes(b"$MeshFormat\n2.2 0 8\n$EndMeshFormat\n$Nodes\n\xc3\x28\n")
    with pytest.raises(MalformedSectionError) as excinfo:
        GmshLoader.load_data(path)
    assert excinfo.value.line_number == 5
