"""Channel probabilities, Shannon entropy curves and the average scattering entropy."""

from .probabilities import ProbabilityVector, channel_probabilities, shannon_entropy, max_entropy
from .quadrature import QuadratureConfig, QuadratureResult, CompositeGaussLegendre
from .ase import (
    AseResult,
    CurvePoint,
    period,
    curve_span,
    uniform_grid,
    entropy_curve,
    average_scattering_entropy,
    ase_by_entrance,
)

__all__ = [
    'ProbabilityVector',
    'channel_probabilities',
    'shannon_entropy',
    'max_entropy',
    'QuadratureConfig',
    'QuadratureResult',
    'CompositeGaussLegendre',
    'AseResult',
    'CurvePoint',
    'period',
    'curve_span',
    'uniform_grid',
    'entropy_curve',
    'average_scattering_entropy',
    'ase_by_entrance'
]
