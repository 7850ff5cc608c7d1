"""Test global dof numbering."""

import numpy as np
import pytest

from mixedmag.exceptions import UnsupportedSpaceError
from mixedmag.fe import build_dofmap
from mixedmag.models import SpaceFamily


@pytest.mark.parametrize(
    ("family", "order", "ndofs", "num_free"),
    [
        (SpaceFamily.LAGRANGE, 1, 25, 9),
        (SpaceFamily.LAGRANGE, 2, 81, 49),
        (SpaceFamily.NEDELEC, 0, 56, 56),
        (SpaceFamily.NEDELEC, 1, 176, 176),
        (SpaceFamily.DISCONTINUOUS_P, 0, 32, 32),
        (SpaceFamily.DISCONTINUOUS_P, 1, 96, 96),
        (SpaceFamily.EDGE_TRACE, 0, 56, 40),
        (SpaceFamily.EDGE_TRACE, 1, 112, 80),
    ],
)
def test_dof_counts(square_mesh, family, order, ndofs, num_free):
    """Test dof counts on the 4 x 4 square (V=25, E=56, T=32, 16 boundary edges)."""
    dofmap = build_dofmap(family, order, square_mesh)
    assert dofmap.ndofs == ndofs
    assert dofmap.num_free == num_free
    assert dofmap.cell_dofs.shape[0] == square_mesh.num_triangles
    assert set(np.unique(dofmap.cell_dofs).tolist()) == set(range(ndofs))


def test_free_index(square_mesh):
    """Test the free index inverts the free dof list."""
    dofmap = build_dofmap(SpaceFamily.LAGRANGE, 1, square_mesh)
    assert np.array_equal(dofmap.free_index[dofmap.free_dofs], np.arange(dofmap.num_free))
    assert np.all(dofmap.free_index[dofmap.constrained] == -1)


def test_unconstrained_lagrange(square_mesh):
    """Test boundary constraints can be switched off."""
    dofmap = build_dofmap(SpaceFamily.LAGRANGE, 1, square_mesh, constrain_boundary=False)
    assert dofmap.num_free == 25


@pytest.mark.parametrize("order", [0, 1])
def test_broken_nedelec(square_mesh, order):
    """Test broken Nedelec copies keep the signs of the conforming numbering."""
    conforming = build_dofmap(SpaceFamily.NEDELEC, order, square_mesh)
    broken = build_dofmap(SpaceFamily.NEDELEC, order, square_mesh, broken=True)
    assert broken.broken
    assert broken.ndofs == square_mesh.num_triangles * conforming.local_size
    assert np.array_equal(broken.cell_signs, conforming.cell_signs)


def test_nedelec_signs_on_shared_edges(square_mesh):
    """Test the two copies of an interior edge dof carry opposite signs."""
    dofmap = build_dofmap(SpaceFamily.NEDELEC, 0, square_mesh)
    for edge in square_mesh.interior_edges:
        signs = dofmap.cell_signs[dofmap.cell_dofs == edge]
        assert sorted(signs.tolist()) == [-1.0, 1.0]


def test_edge_trace_layout(square_mesh):
    """Test the edge table of the trace space and its constrained boundary dofs."""
    dofmap = build_dofmap(SpaceFamily.EDGE_TRACE, 1, square_mesh)
    assert dofmap.edge_dofs.shape == (square_mesh.num_edges, 2)
    assert np.array_equal(
        np.sort(dofmap.constrained), np.sort(dofmap.edge_dofs[square_mesh.boundary_edges].ravel())
    )


@pytest.mark.parametrize("family", [SpaceFamily.LAGRANGE, SpaceFamily.EDGE_TRACE])
def test_broken_variants_unavailable(square_mesh, family):
    """Test only Nedelec and DG spaces have broken variants."""
    with pytest.raises(UnsupportedSpaceError):
        build_dofmap(family, 1, square_mesh, broken=True)
