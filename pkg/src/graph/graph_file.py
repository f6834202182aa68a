"""JSON graph file reading and writing."""

import json
from pathlib import Path

from utils.errors import GraphFileError
from .metric_graph import BoundaryKind, Edge, Lead, MetricGraph, build_graph

REQUIRED_FIELDS = {'num_vertices', 'edges', 'leads'}
OPTIONAL_FIELDS = {'dirichlet_vertices'}


def graph_from_dict(data: dict) -> MetricGraph:
    """
    Build a graph from the JSON document structure.

    Expected layout::

        {
            "num_vertices": 2,
            "edges": [[0, 1, 1.0]],
            "leads": [0, 1],
            "dirichlet_vertices": []
        }

    Lead array order is channel order.

    Raises:
        GraphFileError: Unknown, missing or malformed fields
        ValidationError: Structural problems found by build_graph
    """
    if not isinstance(data, dict):
        raise GraphFileError("Graph document must be a JSON object")

    unknown = sorted(set(data) - REQUIRED_FIELDS - OPTIONAL_FIELDS)
    if unknown:
        raise GraphFileError(f"Unknown field(s) in graph file: {', '.join(unknown)}")
    missing = sorted(REQUIRED_FIELDS - set(data))
    if missing:
        raise GraphFileError(f"Missing field(s) in graph file: {', '.join(missing)}")

    num_vertices = data['num_vertices']
    if not isinstance(num_vertices, int) or isinstance(num_vertices, bool):
        raise GraphFileError(f"Field 'num_vertices' must be an integer, got {num_vertices!r}")

    edges = []
    for s, item in enumerate(_as_list(data, 'edges')):
        if not (isinstance(item, list) and len(item) == 3):
            raise GraphFileError(f"Field 'edges'[{s}] must be [u, v, length], got {item!r}")
        u, v, length = item
        if not (_is_int(u) and _is_int(v)) or not isinstance(length, (int, float)) or isinstance(length, bool):
            raise GraphFileError(f"Field 'edges'[{s}] has invalid entries {item!r}")
        edges.append(Edge(u, v, float(length)))

    leads = []
    for channel, vertex in enumerate(_as_list(data, 'leads')):
        if not _is_int(vertex):
            raise GraphFileError(f"Field 'leads'[{channel}] must be a vertex index, got {vertex!r}")
        leads.append(Lead(vertex, channel))

    boundary = [BoundaryKind.NEUMANN] * max(num_vertices, 0)
    for vertex in _as_list(data, 'dirichlet_vertices', default=[]):
        if not _is_int(vertex) or not 0 <= vertex < num_vertices:
            raise GraphFileError(f"Field 'dirichlet_vertices' has invalid vertex {vertex!r}")
        boundary[vertex] = BoundaryKind.DIRICHLET

    return build_graph(num_vertices, edges, leads, boundary)


def graph_to_dict(graph: MetricGraph) -> dict:
    """Inverse of graph_from_dict."""
    leads = sorted(graph.leads, key=lambda lead: lead.channel)
    return {
        'num_vertices': graph.num_vertices,
        'edges': [[e.u, e.v, e.length] for e in graph.edges],
        'leads': [lead.vertex for lead in leads],
        'dirichlet_vertices': [
            v for v, kind in enumerate(graph.boundary) if kind is BoundaryKind.DIRICHLET
        ]
    }


def load_graph_file(filepath: str) -> MetricGraph:
    """
    Load a graph from a JSON file.

    Raises:
        FileNotFoundError: If the file doesn't exist
        GraphFileError: If the file is not valid JSON or has bad fields
    """
    filepath = Path(filepath)
    if not filepath.exists():
        raise FileNotFoundError(f"Graph file not found: {filepath}")

    try:
        with open(filepath, 'r') as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise GraphFileError(f"Graph file {filepath} is not valid JSON: {e}") from e

    return graph_from_dict(data)


def save_graph_file(graph: MetricGraph, filepath: str):
    with open(filepath, 'w') as f:
        json.dump(graph_to_dict(graph), f, indent=2)


def _is_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _as_list(data: dict, key: str, default=None) -> list:
    value = data.get(key, default)
    if not isinstance(value, list):
        raise GraphFileError(f"Field '{key}' must be an array, got {value!r}")
    return value
