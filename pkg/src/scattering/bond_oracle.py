"""Independent scattering matrix from vertex scattering matrices on directed bonds.

Each vertex of degree d scatters the waves arriving on its d ports (incident
edges and leads) with sigma_v = (2/d) J - I (Neumann) or -1 (Dirichlet dead end).
With a_b the amplitude leaving the tail of bond b and Z = diag(exp(i k l_b)),

    a = S_ee Z a + S_el c,      out = S_ll c + S_le Z a,

so sigma = S_ll + S_le Z (I - S_ee Z)^-1 S_el. Shares no code with the
path-family solver and serves as its cross-check.
"""

import numpy as np

from graph import BoundaryKind, MetricGraph
from utils.errors import InvalidChannelError
from .smatrix import ScatteringMatrix


def _vertex_matrix(graph: MetricGraph, v: int) -> np.ndarray:
    d = graph.degree(v)
    if d == 1 and graph.boundary[v] is BoundaryKind.DIRICHLET:
        return -np.ones((1, 1))
    return 2.0 / d * np.ones((d, d)) - np.eye(d)


def bond_scattering_matrix(graph: MetricGraph, k: float) -> ScatteringMatrix:
    """
    Scattering matrix at wave number k via the directed-bond formulation.

    Args:
        graph: Validated metric graph with at least one lead
        k: Wave number

    Returns:
        ScatteringMatrix (entries[f, i]: exit f, entrance i)
    """
    n_channels = graph.num_channels
    if n_channels < 1:
        raise InvalidChannelError("Scattering needs at least one lead")

    n_bonds = graph.num_bonds
    s_ee = np.zeros((n_bonds, n_bonds), dtype=np.complex128)
    s_el = np.zeros((n_bonds, n_channels), dtype=np.complex128)
    s_le = np.zeros((n_channels, n_bonds), dtype=np.complex128)
    s_ll = np.zeros((n_channels, n_channels), dtype=np.complex128)

    for v in range(graph.num_vertices):
        sigma_v = _vertex_matrix(graph, v)
        # Ports: edges to each neighbor, then the leads
        neighbors = graph.neighbors(v)
        channels = graph.leads_at(v)
        out_ports = [('bond', graph.bond_index(v, w)) for w in neighbors]
        out_ports += [('lead', c) for c in channels]
        in_ports = [('bond', graph.bond_index(w, v)) for w in neighbors]
        in_ports += [('lead', c) for c in channels]

        for p, (out_kind, out_index) in enumerate(out_ports):
            for q, (in_kind, in_index) in enumerate(in_ports):
                amplitude = sigma_v[p, q]
                if out_kind == 'bond' and in_kind == 'bond':
                    s_ee[out_index, in_index] += amplitude
                elif out_kind == 'bond':
                    s_el[out_index, in_index] += amplitude
                elif in_kind == 'bond':
                    s_le[out_index, in_index] += amplitude
                else:
                    s_ll[out_index, in_index] += amplitude

    lengths = np.array([graph.bond_length(b) for b in range(n_bonds)])
    z = np.exp(1j * k * lengths)

    if n_bonds:
        s_ee_z = s_ee * z[None, :]
        amplitudes = np.linalg.solve(np.eye(n_bonds) - s_ee_z, s_el)
        entries = s_ll + (s_le * z[None, :]) @ amplitudes
    else:
        entries = s_ll

    return ScatteringMatrix(entries=entries, k=float(k))
