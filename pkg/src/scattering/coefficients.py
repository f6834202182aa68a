"""Vertex reflection and transmission amplitudes."""

from dataclasses import dataclass

import numpy as np

from graph import BoundaryKind, MetricGraph


@dataclass(frozen=True)
class VertexCoefficients:
    """
    Per-vertex scattering amplitudes.

    Neumann vertex of degree d >= 2: r = 2/d - 1, t = 2/d.
    Degree-1 vertex: r = +1 (Neumann) or -1 (Dirichlet); t is unused and stored as 0.
    """

    r: np.ndarray
    t: np.ndarray


def vertex_coefficients(graph: MetricGraph) -> VertexCoefficients:
    """
    Compute (r, t) for every vertex; degrees include leads.

    Args:
        graph: Validated metric graph

    Returns:
        VertexCoefficients with real-valued complex arrays of length v
    """
    degrees = np.asarray(graph.degrees(), dtype=np.float64)
    r = np.empty(graph.num_vertices, dtype=np.complex128)
    t = np.zeros(graph.num_vertices, dtype=np.complex128)

    for v, d in enumerate(degrees):
        if d == 1:
            r[v] = -1.0 if graph.boundary[v] is BoundaryKind.DIRICHLET else 1.0
        else:
            r[v] = 2.0 / d - 1.0
            t[v] = 2.0 / d

    return VertexCoefficients(r=r, t=t)
