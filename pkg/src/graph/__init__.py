"""Metric graph data model: vertices, edges with lengths, leads and boundary kinds."""

from .metric_graph import (
    BoundaryKind,
    Edge,
    Lead,
    Orientation,
    DirectedBond,
    MetricGraph,
    build_graph,
)
from .graph_file import load_graph_file, save_graph_file, graph_from_dict, graph_to_dict

__all__ = [
    'BoundaryKind',
    'Edge',
    'Lead',
    'Orientation',
    'DirectedBond',
    'MetricGraph',
    'build_graph',
    'load_graph_file',
    'save_graph_file',
    'graph_from_dict',
    'graph_to_dict'
]
