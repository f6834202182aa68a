"""Seeded random-word ensembles of the average scattering entropy."""

from .statistics import summary_stats
from .runner import EnsembleSpec, EnsembleStats, EnsembleRunner, run_ensemble, sample_stream

__all__ = [
    'summary_stats',
    'EnsembleSpec',
    'EnsembleStats',
    'EnsembleRunner',
    'run_ensemble',
    'sample_stream'
]
