"""Plain-text native mesh format.

Layout: a counts line "V E_marked T", then V lines "x y", then T lines
"i j k tag" with zero-based node indices, then E_marked lines "i j tag".
"""

from __future__ import annotations

import logging
from pathlib import Path

import numpy as np

from mixedmag.exceptions import ConfigError, MalformedSectionError
from mixedmag.mesh import build_mesh
from mixedmag.models import Mesh, MeshData

_LOGGER = logging.getLogger("mixedmag.log")


def read_mesh_text(path: str | Path) -> str:
    """Read a mesh file as UTF-8 text.

    Undecodable bytes are reported with the line they occur on.
    """
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as err:
        raise ConfigError(f"cannot read mesh file {path}: {err.strerror}") from None
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as err:
        raise MalformedSectionError(
            f"{path.name}: invalid UTF-8 byte 0x{raw[err.start]:02x}",
            raw.count(b"\n", 0, err.start) + 1,
        ) from None


def _parse_row(line: str, line_number: int, kinds: tuple[type, ...]) -> list[float | int]:
    tokens = line.split()
    if len(tokens) != len(kinds):
        raise MalformedSectionError(
            f"expected {len(kinds)} fields, got {len(tokens)}", line_number
        )
    try:
        return [kind(token) for kind, token in zip(kinds, tokens)]
    except ValueError:
        raise MalformedSectionError(f"cannot parse {line.strip()!r}", line_number) from None


def read_native(text: str) -> MeshData:
    """Parse native mesh text."""
    rows = [
        (number, line)
        for number, line in enumerate(text.splitlines(), start=1)
        if line.strip()
    ]
    if not rows:
        raise MalformedSectionError("empty mesh file", 1)
    number, header = rows[0]
    num_nodes, num_markers, num_triangles = (
        int(value) for value in _parse_row(header, number, (int, int, int))
    )
    expected = 1 + num_nodes + num_triangles + num_markers
    if len(rows) != expected:
        raise MalformedSectionError(
            f"counts line announces {expected - 1} entries, found {len(rows) - 1}",
            rows[expected][0] if len(rows) > expected else rows[-1][0] + 1,
        )

    node_rows = rows[1 : 1 + num_nodes]
    triangle_rows = rows[1 + num_nodes : 1 + num_nodes + num_triangles]
    marker_rows = rows[1 + num_nodes + num_triangles :]

    nodes = np.array(
        [_parse_row(line, n, (float, float)) for n, line in node_rows], dtype=np.float64
    ).reshape(-1, 2)
    elements = np.array(
        [_parse_row(line, n, (int, int, int, int)) for n, line in triangle_rows],
        dtype=np.int64,
    ).reshape(-1, 4)
    markers: dict[tuple[int, int], int] = {}
    for n, line in marker_rows:
        i, j, tag = (int(value) for value in _parse_row(line, n, (int, int, int)))
        markers[(i, j)] = tag
    return MeshData(
        nodes=nodes,
        triangles=elements[:, :3],
        region_tags=elements[:, 3],
        boundary_markers=markers,
        physical_names={},
    )


def write_native(mesh: Mesh) -> str:
    """Render a mesh in the native format with full float precision."""
    markers = sorted(mesh.boundary_markers.items())
    out = [f"{mesh.num_nodes} {len(markers)} {mesh.num_triangles}"]
    out += [f"{x!r} {y!r}" for x, y in mesh.nodes.tolist()]
    out += [
        f"{i} {j} {k} {tag}"
        for (i, j, k), tag in zip(mesh.triangles.tolist(), mesh.region_tags.tolist())
    ]
    out += [f"{i} {j} {tag}" for (i, j), tag in markers]
    return "\n".join(out) + "\n"


class NativeLoader:
    """Load meshes from native text files."""

    @staticmethod
    def load(path: str | Path) -> Mesh:
        """Read a native mesh file and build the mesh."""
        _LOGGER.debug('Reading native mesh "%s"', path)
        data = read_native(read_mesh_text(path))
        return build_mesh(data.nodes, data.triangles, data.region_tags, data.boundary_markers)

    @staticmethod
    def save(mesh: Mesh, path: str | Path) -> None:
        """Write a mesh in the native format."""
        Path(path).write_text(write_native(mesh), encoding="utf-8")
