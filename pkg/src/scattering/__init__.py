"""Scattering matrices of open quantum graphs from the path-family linear system."""

from .coefficients import VertexCoefficients, vertex_coefficients
from .path_system import PathSystem, PathTemplate, assemble_path_system, solve_path_families
from .smatrix import (
    ScatteringMatrix,
    ScatteringSolver,
    scattering_matrix,
    evaluate_scattering,
    unitarity_defect,
    unitarity_defects,
    max_deviation,
)
from .bond_oracle import bond_scattering_matrix

__all__ = [
    'VertexCoefficients',
    'vertex_coefficients',
    'PathSystem',
    'PathTemplate',
    'assemble_path_system',
    'solve_path_families',
    'ScatteringMatrix',
    'ScatteringSolver',
    'scattering_matrix',
    'evaluate_scattering',
    'unitarity_defect',
    'unitarity_defects',
    'max_deviation',
    'bond_scattering_matrix'
]
