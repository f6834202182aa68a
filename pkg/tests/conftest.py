"""Shared fixtures; puts src/ on the import path like run.py does."""

import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

from graph import BoundaryKind, Edge, Lead, build_graph  # noqa: E402
from families import build_line, parse_word  # noqa: E402


@pytest.fixture
def alpha():
    """Center c=0 with both leads, dead end p=1."""
    return build_line(parse_word('a'))


@pytest.fixture
def beta():
    """Center c=0 with both leads, dead ends 1 and 2."""
    return build_line(parse_word('b'))


@pytest.fixture
def transparent_chain():
    """0 - 1 with a lead on each end; both vertices have degree 2."""
    return build_graph(2, [Edge(0, 1, 1.0)], [Lead(0, 0), Lead(1, 1)])


@pytest.fixture
def interior_lead_chain():
    """0 - 1 - 2 with leads at 0 (ch0), 2 (ch1) and the interior vertex 1 (ch2)."""
    return build_graph(
        3,
        [Edge(0, 1, 1.0), Edge(1, 2, 1.0)],
        [Lead(0, 0), Lead(2, 1), Lead(1, 2)]
    )


@pytest.fixture
def dirichlet_alpha():
    return build_line(parse_word('a'), BoundaryKind.DIRICHLET)
