"""Residuals and Newton systems of both formulations."""

from .hybrid import (
    MixedDiscretization,
    MixedState,
    MonolithicSystem,
    Recovery,
    assemble_local_blocks,
    assemble_monolithic,
    condense,
    conforming_average,
    eliminate,
    mixed_residual,
    recover,
    tangential_jump,
)
from .primal import PrimalDiscretization, assemble_primal, primal_residual, rotated_gradient

__all__ = [
    "MixedDiscretization",
    "MixedState",
    "MonolithicSystem",
    "PrimalDiscretization",
    "Recovery",
    "assemble_local_blocks",
    "assemble_monolithic",
    "assemble_primal",
    "condense",
    "conforming_average",
    "eliminate",
    "mixed_residual",
    "primal_residual",
    "recover",
    "rotated_gradient",
    "tangential_jump",
]
