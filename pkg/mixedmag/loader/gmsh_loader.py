"""Gmsh 2.2 ASCII mesh loader."""

from __future__ import annotations

from collections.abc import Iterator
import logging
from pathlib import Path

import numpy as np

from mixedmag.const import GMSH_LINE, GMSH_POINT, GMSH_SUPPORTED_VERSION, GMSH_TRIANGLE
from mixedmag.exceptions import MalformedSectionError, NonPlanarError, UnsupportedVersionError
from mixedmag.mesh import build_mesh
from mixedmag.models import FloatArray, Mesh, MeshData

from .native_loader import read_mesh_text

_LOGGER = logging.getLogger("mixedmag.log")

_PLANAR_TOL = 1e-12
_NODES_PER_ELEMENT = {GMSH_LINE: 2, GMSH_TRIANGLE: 3, GMSH_POINT: 1}


class _SectionReader:
    """Iterate over non-empty lines while tracking 1-based line numbers."""

    def __init__(self, text: str) -> None:
        self._lines: Iterator[tuple[int, str]] = (
            (number, line.strip())
            for number, line in enumerate(text.splitlines(), start=1)
            if line.strip()
        )
        self.line_number = 0

    def next_line(self, expected: str) -> str:
        """Return the next line or fail at end of input."""
        try:
            self.line_number, line = next(self._lines)
        except StopIteration:
            raise MalformedSectionError(
                f"unexpected end of file, expected {expected}", self.line_number + 1
            ) from None
        return line

    def next_tokens(self, expected: str) -> list[str]:
        """Return the whitespace separated tokens of the next line."""
        return self.next_line(expected).split()

    def next_count(self, section: str) -> int:
        """Parse an entry count line."""
        tokens = self.next_tokens(f"entry count of {section}")
        try:
            return int(tokens[0])
        except ValueError:
            raise MalformedSectionError(
                f"invalid entry count {tokens[0]!r} in {section}", self.line_number
            ) from None

    def expect(self, marker: str) -> None:
        """Consume a section end marker."""
        line = self.next_line(marker)
        if line != marker:
            raise MalformedSectionError(f"expected {marker}, got {line!r}", self.line_number)

    def sections(self) -> Iterator[str]:
        """Yield the name of each section start marker."""
        for number, line in self._lines:
            self.line_number = number
            if not line.startswith("$") or line.startswith("$End"):
                raise MalformedSectionError(
                    f"expected a section start, got {line!r}", self.line_number
                )
            yield line[1:]


def read_gmsh_v2(text: str) -> MeshData:
    """Parse the text of a Gmsh 2.2 ASCII mesh file.

    Line elements become boundary markers, triangles become elements tagged with
    their physical group (0 without tags) and point elements are ignored. Nodes
    not referenced by any triangle are dropped and the remaining ones renumbered
    from zero.
    """
    reader = _SectionReader(text)
    node_ids: dict[int, int] = {}
    coordinates: list[tuple[float, float]] = []
    triangles: list[tuple[int, int, int]] = []
    tags: list[int] = []
    lines: list[tuple[int, int, int]] = []
    physical_names: dict[tuple[int, int], str] = {}
    seen: set[str] = set()

    for section in reader.sections():
        if section == "MeshFormat":
            _read_format(reader)
        elif "MeshFormat" not in seen:
            raise MalformedSectionError(
                f"${section} before $MeshFormat", reader.line_number
            )
        elif section == "PhysicalNames":
            physical_names = _read_physical_names(reader)
        elif section == "Nodes":
            node_ids, coordinates = _read_nodes(reader)
        elif section == "Elements":
            if "Nodes" not in seen:
                raise MalformedSectionError("$Elements before $Nodes", reader.line_number)
            triangles, tags, lines = _read_elements(reader, node_ids)
        else:
            _LOGGER.debug("Skipping Gmsh section $%s", section)
            _skip_section(reader, section)
        seen.add(section)

    for required in ("MeshFormat", "Nodes", "Elements"):
        if required not in seen:
            raise MalformedSectionError(f"missing ${required} section", reader.line_number)

    return _compact(np.array(coordinates).reshape(-1, 2), triangles, tags, lines, physical_names)


def _read_format(reader: _SectionReader) -> None:
    tokens = reader.next_tokens("version line")
    if len(tokens) != 3:
        raise MalformedSectionError(
            "$MeshFormat needs version, file-type and data-size", reader.line_number
        )
    version, file_type = tokens[0], tokens[1]
    if version.split(".")[0] != GMSH_SUPPORTED_VERSION.split(".")[0]:
        raise UnsupportedVersionError(
            f"Gmsh format {version} is not supported, expected {GMSH_SUPPORTED_VERSION}"
        )
    if file_type != "0":
        raise UnsupportedVersionError("binary Gmsh files are not supported")
    reader.expect("$EndMeshFormat")


def _read_physical_names(reader: _SectionReader) -> dict[tuple[int, int], str]:
    names: dict[tuple[int, int], str] = {}
    for _ in range(reader.next_count("$PhysicalNames")):
        tokens = reader.next_tokens("physical name")
        try:
            dimension, tag = int(tokens[0]), int(tokens[1])
        except (IndexError, ValueError):
            raise MalformedSectionError(
                "invalid physical name entry", reader.line_number
            ) from None
        names[(dimension, tag)] = " ".join(tokens[2:]).strip('"')
    reader.expect("$EndPhysicalNames")
    return names


def _read_nodes(reader: _SectionReader) -> tuple[dict[int, int], list[tuple[float, float]]]:
    node_ids: dict[int, int] = {}
    coordinates: list[tuple[float, float]] = []
    for index in range(reader.next_count("$Nodes")):
        tokens = reader.next_tokens("node")
        if len(tokens) != 4:
            raise MalformedSectionError(
                f"node entry needs 4 fields, got {len(tokens)}", reader.line_number
            )
        try:
            node_id = int(tokens[0])
            x, y, z = (float(value) for value in tokens[1:])
        except ValueError:
            raise MalformedSectionError("invalid node entry", reader.line_number) from None
        if abs(z) > _PLANAR_TOL:
            raise NonPlanarError(f"node {node_id} has z = {z:.6g} (line {reader.line_number})")
        if node_id in node_ids:
            raise MalformedSectionError(f"duplicate node id {node_id}", reader.line_number)
        node_ids[node_id] = index
        coordinates.append((x, y))
    reader.expect("$EndNodes")
    return node_ids, coordinates


def _read_elements(
    reader: _SectionReader, node_ids: dict[int, int]
) -> tuple[list[tuple[int, int, int]], list[int], list[tuple[int, int, int]]]:
    triangles: list[tuple[int, int, int]] = []
    tags: list[int] = []
    lines: list[tuple[int, int, int]] = []
    for _ in range(reader.next_count("$Elements")):
        tokens = reader.next_tokens("element")
        try:
            values = [int(token) for token in tokens]
            element_type, num_tags = values[1], values[2]
        except (IndexError, ValueError):
            raise MalformedSectionError("invalid element entry", reader.line_number) from None
        if element_type not in _NODES_PER_ELEMENT:
            raise MalformedSectionError(
                f"unsupported element type id {element_type}", reader.line_number
            )
        element_nodes = values[3 + num_tags :]
        if len(element_nodes) != _NODES_PER_ELEMENT[element_type]:
            raise MalformedSectionError(
                f"element type {element_type} needs {_NODES_PER_ELEMENT[element_type]} nodes, "
                f"got {len(element_nodes)}",
                reader.line_number,
            )
        try:
            indices = [node_ids[node] for node in element_nodes]
        except KeyError as err:
            raise MalformedSectionError(
                f"element references unknown node {err.args[0]}", reader.line_number
            ) from None
        physical = values[3] if num_tags > 0 else 0
        if element_type == GMSH_TRIANGLE:
            triangles.append((indices[0], indices[1], indices[2]))
            tags.append(physical)
        elif element_type == GMSH_LINE:
            lines.append((indices[0], indices[1], physical))
    reader.expect("$EndElements")
    return triangles, tags, lines


def _skip_section(reader: _SectionReader, section: str) -> None:
    end = f"$End{section}"
    while reader.next_line(end) != end:
        pass


def _compact(
    nodes: FloatArray,
    triangles: list[tuple[int, int, int]],
    tags: list[int],
    lines: list[tuple[int, int, int]],
    physical_names: dict[tuple[int, int], str],
) -> MeshData:
    """Drop nodes without a triangle and renumber the rest."""
    triangle_array = np.array(triangles, dtype=np.int64).reshape(-1, 3)
    used = np.zeros(nodes.shape[0], dtype=bool)
    used[triangle_array.ravel()] = True
    if not used.all():
        _LOGGER.warning(
            "Dropping %s Gmsh nodes not referenced by any triangle", int((~used).sum())
        )
    renumber = np.cumsum(used) - 1
    markers = {
        (int(renumber[i]), int(renumber[j])): tag
        for i, j, tag in lines
        if used[i] and used[j]
    }
    return MeshData(
        nodes=np.asarray(nodes[used], dtype=np.float64),
        triangles=renumber[triangle_array].astype(np.int64),
        region_tags=np.array(tags, dtype=np.int64),
        boundary_markers=markers,
        physical_names=physical_names,
    )


def write_gmsh_v2(mesh: Mesh, physical_names: dict[tuple[int, int], str] | None = None) -> str:
    """Render a mesh as Gmsh 2.2 ASCII text with boundary markers as line elements."""
    out = ["$MeshFormat", f"{GMSH_SUPPORTED_VERSION} 0 8", "$EndMeshFormat"]
    if physical_names:
        out += ["$PhysicalNames", str(len(physical_names))]
        out += [f'{dim} {tag} "{name}"' for (dim, tag), name in sorted(physical_names.items())]
        out.append("$EndPhysicalNames")
    out += ["$Nodes", str(mesh.num_nodes)]
    out += [f"{i + 1} {x!r} {y!r} 0" for i, (x, y) in enumerate(mesh.nodes.tolist())]
    out.append("$EndNodes")
    markers = sorted(mesh.boundary_markers.items())
    out += ["$Elements", str(len(markers) + mesh.num_triangles)]
    number = 0
    for number, ((i, j), tag) in enumerate(markers, start=1):
        out.append(f"{number} {GMSH_LINE} 2 {tag} {tag} {i + 1} {j + 1}")
    for offset, (triangle, tag) in enumerate(
        zip(mesh.triangles.tolist(), mesh.region_tags.tolist()), start=number + 1
    ):
        a, b, c = (node + 1 for node in triangle)
        out.append(f"{offset} {GMSH_TRIANGLE} 2 {tag} {tag} {a} {b} {c}")
    out.append("$EndElements")
    return "\n".join(out) + "\n"


class GmshLoader:
    """Load meshes from Gmsh 2.2 ASCII files."""

    @staticmethod
    def load(path: str | Path) -> Mesh:
        """Read a .msh file and build the mesh."""
        data = GmshLoader.load_data(path)
        return build_mesh(data.nodes, data.triangles, data.region_tags, data.boundary_markers)

    @staticmethod
    def load_data(path: str | Path) -> MeshData:
        """Read a .msh file without building the edge tables."""
        _LOGGER.debug('Reading Gmsh mesh "%s"', path)
        return read_gmsh_v2(read_mesh_text(path))
