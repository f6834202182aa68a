"""Shared utilities for qgase: errors, logging, configuration, worker pools."""

from .errors import QgaseError, ValidationError, NumericalError
from .config import load_user_config, resolve_workers
from .log import setup_logging
from .parallel import map_ordered

__all__ = [
    'QgaseError',
    'ValidationError',
    'NumericalError',
    'load_user_config',
    'resolve_workers',
    'setup_logging',
    'map_ordered'
]
