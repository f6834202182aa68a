"""Path-family linear system on directed bonds.

For each directed bond (u -> v) with phase z = exp(i k l_uv) the unknown
P_uv^(f) satisfies

    P_uv - z r_v P_vu - z t_v sum_{w in N(v), w != u} P_vw = z t_v [channel f attached at v]

N(v) holds edge-neighbors only: exiting through a lead is carried by the
right-hand side alone, so the matrix does not depend on the exit channel.
"""

import logging
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor, lu_solve

from graph import MetricGraph
from utils.errors import SingularSystemError
from .coefficients import VertexCoefficients

logger = logging.getLogger(__name__)

# Relative pivot threshold for declaring the system singular
PIVOT_TOLERANCE = 1e-12


@dataclass(frozen=True)
class PathSystem:
    """M(k) P = B(k); column f of ``rhs`` is the source for exit channel f."""

    matrix: np.ndarray
    rhs: np.ndarray
    k: float


@dataclass(frozen=True)
class PathTemplate:
    """
    k-independent part of the path system.

    M(k) = I - diag(z) C and B(k) = diag(z) S, with z_b = exp(i k l_b).
    Building C and S once per graph lets every wave number reuse them.
    """

    coupling: np.ndarray
    source: np.ndarray
    lengths: np.ndarray

    @classmethod
    def from_graph(cls, graph: MetricGraph, coeffs: VertexCoefficients) -> 'PathTemplate':
        n_bonds = graph.num_bonds
        coupling = np.zeros((n_bonds, n_bonds), dtype=np.complex128)
        source = np.zeros((n_bonds, graph.num_channels), dtype=np.complex128)
        lengths = np.empty(n_bonds, dtype=np.float64)

        for bond in graph.directed_bonds():
            u, v = bond.tail, bond.head
            b = bond.index
            lengths[b] = graph.bond_length(b)
            coupling[b, graph.bond_index(v, u)] += coeffs.r[v]
            for w in graph.neighbors(v):
                if w != u:
                    coupling[b, graph.bond_index(v, w)] += coeffs.t[v]
            for channel in graph.leads_at(v):
                source[b, channel] = coeffs.t[v]

        return cls(coupling=coupling, source=source, lengths=lengths)

    def phases(self, k: float) -> np.ndarray:
        return np.exp(1j * k * self.lengths)

    def system(self, k: float) -> PathSystem:
        z = self.phases(k)
        matrix = np.eye(len(z), dtype=np.complex128) - z[:, None] * self.coupling
        rhs = z[:, None] * self.source
        return PathSystem(matrix=matrix, rhs=rhs, k=float(k))

    def solve_many(self, ks: np.ndarray) -> np.ndarray:
        """
        Path families at many wave numbers with one stacked solve.

        Near-singular wave numbers are not detected here; callers check the
        result and re-solve those nodes through solve_path_families().

        Args:
            ks: 1-d array of wave numbers

        Returns:
            Array of shape (len(ks), 2e, l)

        Raises:
            numpy.linalg.LinAlgError: If some matrix of the stack is exactly singular
        """
        ks = np.asarray(ks, dtype=np.float64)
        n_bonds = len(self.lengths)
        if n_bonds == 0:
            return np.zeros((len(ks), 0, self.source.shape[1]), dtype=np.complex128)

        z = np.exp(1j * np.multiply.outer(ks, self.lengths))
        matrices = np.eye(n_bonds, dtype=np.complex128) - z[:, :, None] * self.coupling
        rhs = z[:, :, None] * self.source
        return np.linalg.solve(matrices, rhs)


def assemble_path_system(graph: MetricGraph, coeffs: VertexCoefficients, k: float) -> PathSystem:
    """
    Assemble the 2e x 2e path system at wave number k.

    Args:
        graph: Validated metric graph
        coeffs: Vertex amplitudes from vertex_coefficients()
        k: Real wave number

    Returns:
        PathSystem with unit diagonal and one rhs column per exit channel
    """
    return PathTemplate.from_graph(graph, coeffs).system(k)


def solve_path_families(system: PathSystem) -> np.ndarray:
    """
    Solve for every path family.

    One LU factorization with partial pivoting, then one back-substitution per
    exit channel.

    Args:
        system: Assembled path system

    Returns:
        Array of shape (2e, l); column f holds P^(f) for all directed bonds

    Raises:
        SingularSystemError: If a pivot falls below 1e-12 times the largest row norm
    """
    n = system.matrix.shape[0]
    if n == 0:
        return np.zeros_like(system.rhs)

    with warnings.catch_warnings():
        # exact zero pivots are reported through SingularSystemError below
        warnings.simplefilter('ignore', LinAlgWarning)
        lu, piv = lu_factor(system.matrix, check_finite=False)

    scale = float(np.max(np.sum(np.abs(system.matrix), axis=1)))
    smallest_pivot = float(np.min(np.abs(np.diag(lu))))
    if not smallest_pivot >= PIVOT_TOLERANCE * scale:
        raise SingularSystemError(system.k, smallest_pivot)

    return lu_solve((lu, piv), system.rhs, check_finite=False)
