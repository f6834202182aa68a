"""Command-line front end."""

from .app import Command, build_parser, parse_invocation, execute, main
from .commands import run_sweep, run_fibonacci

__all__ = [
    'Command',
    'build_parser',
    'parse_invocation',
    'execute',
    'main',
    'run_sweep',
    'run_fibonacci'
]
