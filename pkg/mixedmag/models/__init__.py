"""mixedmag models."""

# flake8: noqa
from .models import (
    CondensedSystem,
    DofDescriptor,
    DofMap,
    FieldCoefficients,
    FloatArray,
    IntArray,
    LocalBlocks,
    LocalElimination,
    Mesh,
    MeshData,
    MeshQuality,
    PrimalSystem,
    QuadRule,
    RunConfig,
    SolveReport,
    SparseSymmetric,
)
from .report import (
    CertificationReport,
    ComparisonRow,
    IterationRecord,
    LinearSystemInfo,
    MeshInfo,
    StudyRow,
)
from .static import LOCAL_EDGES, DofEntity, Formulation, MaterialType, SpaceFamily
