"""Global scattering matrix from the path families."""

import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from graph import MetricGraph
from utils.errors import InvalidChannelError, SingularSystemError
from .coefficients import VertexCoefficients, vertex_coefficients
from .path_system import PathTemplate, solve_path_families

logger = logging.getLogger(__name__)

# Jitter applied to a resonant wave number before retrying
JITTER_STEP = 1e-9 * 2 * math.pi
MAX_JITTERS = 3

# Stacked solutions less unitary than this are redone one node at a time
BATCH_DEFECT = 1e-10
# Complex entries per stacked chunk of path matrices
BATCH_ELEMENTS = 1 << 21


@dataclass(frozen=True)
class ScatteringMatrix:
    """l x l amplitudes; entries[f, i] is exit channel f for entrance channel i."""

    entries: np.ndarray
    k: float

    @property
    def num_channels(self) -> int:
        return self.entries.shape[0]


class ScatteringSolver:
    """
    Evaluates the scattering matrix of one graph at many wave numbers.

    The k-independent coupling is built once. A single wave number costs one
    LU factorization and l back-substitutions; many wave numbers are solved as
    one stacked system.
    """

    def __init__(self, graph: MetricGraph, coeffs: Optional[VertexCoefficients] = None):
        """
        Args:
            graph: Validated metric graph with at least one lead
            coeffs: Vertex amplitudes (computed from the graph if omitted)
        """
        if graph.num_channels < 1:
            raise InvalidChannelError("Scattering needs at least one lead")

        self.graph = graph
        self.coeffs = coeffs if coeffs is not None else vertex_coefficients(graph)
        self.template = PathTemplate.from_graph(graph, self.coeffs)
        self._direct, self._gain = self._channel_tables()
        self._chunk = max(1, BATCH_ELEMENTS // max(1, graph.num_bonds ** 2))

    def _channel_tables(self) -> tuple[np.ndarray, np.ndarray]:
        """
        Split sigma into a k-independent part and a linear map of the families.

        sigma[f, i] = delta_fi r_a + (1 - delta_fi) delta_ab t_a + t_a sum_{j in N(a)} P_aj^(f)
        with a the entrance vertex and b the exit vertex, so
        sigma = direct + (gain @ P).T.

        Returns:
            (direct, gain) of shapes (l, l) and (l, 2e)
        """
        graph = self.graph
        n_channels = graph.num_channels
        r, t = self.coeffs.r, self.coeffs.t
        lead_vertices = np.array([graph.lead_vertex(c) for c in range(n_channels)], dtype=np.intp)

        direct = np.zeros((n_channels, n_channels), dtype=np.complex128)
        gain = np.zeros((n_channels, graph.num_bonds), dtype=np.complex128)
        for i, a in enumerate(lead_vertices):
            bonds = [graph.bond_index(a, w) for w in graph.neighbors(a)]
            gain[i, bonds] = t[a]
            direct[lead_vertices == a, i] = t[a]
            direct[i, i] = r[a]

        return direct, gain

    def _entries(self, families: np.ndarray) -> np.ndarray:
        return self._direct + np.swapaxes(self._gain @ families, -1, -2)

    def matrix(self, k: float) -> ScatteringMatrix:
        """
        Scattering matrix at k, no retry.

        Raises:
            SingularSystemError: At a resonant k
        """
        families = solve_path_families(self.template.system(k))
        return ScatteringMatrix(entries=self._entries(families), k=float(k))

    def evaluate(self, k: float, max_jitters: int = MAX_JITTERS) -> tuple[ScatteringMatrix, int]:
        """
        Scattering matrix at k, jittering k off resonances.

        Args:
            k: Wave number
            max_jitters: Retries at k + j * 2pi * 1e-9 before giving up

        Returns:
            (matrix, number of retries used)

        Raises:
            SingularSystemError: If every jittered k is also singular
        """
        for attempt in range(max_jitters + 1):
            k_try = k + attempt * JITTER_STEP
            try:
                return self.matrix(k_try), attempt
            except SingularSystemError as e:
                logger.debug("Singular path system at k=%.15g (pivot %.3e), jittering", k_try, e.pivot)
                last_error = e

        logger.warning("Path system still singular after %d jitters at k=%.15g", max_jitters, k)
        raise last_error

    def evaluate_many(self, ks: np.ndarray, max_jitters: int = MAX_JITTERS) -> tuple[np.ndarray, int]:
        """
        Scattering matrices at many wave numbers.

        The stack is solved in chunks. Nodes whose stacked solution is not
        finite or not unitary to BATCH_DEFECT are redone one by one through
        evaluate(), which applies the pivot check and the jitter policy.

        Args:
            ks: Wave numbers
            max_jitters: Retries per singular node

        Returns:
            (entries of shape (len(ks), l, l), total retries used)

        Raises:
            SingularSystemError: If a node stays singular after every jitter
        """
        ks = np.asarray(ks, dtype=np.float64).ravel()
        n_channels = self.graph.num_channels
        entries = np.zeros((len(ks), n_channels, n_channels), dtype=np.complex128)
        suspect = np.zeros(len(ks), dtype=bool)

        for start in range(0, len(ks), self._chunk):
            block = slice(start, start + self._chunk)
            try:
                with np.errstate(all='ignore'):
                    entries[block] = self._entries(self.template.solve_many(ks[block]))
            except np.linalg.LinAlgError:
                suspect[block] = True

        with np.errstate(all='ignore'):
            suspect |= ~(unitarity_defects(entries) <= BATCH_DEFECT)

        retries = 0
        for index in np.flatnonzero(suspect):
            s, used = self.evaluate(float(ks[index]), max_jitters)
            entries[index] = s.entries
            retries += used
        if suspect.any():
            logger.debug("Re-solved %d of %d nodes individually (%d jitters)",
                         int(suspect.sum()), len(ks), retries)

        return entries, retries


def scattering_matrix(graph: MetricGraph, coeffs: VertexCoefficients, k: float) -> ScatteringMatrix:
    """Scattering matrix of ``graph`` at wave number k (no jitter)."""
    return ScatteringSolver(graph, coeffs).matrix(k)


def evaluate_scattering(
    graph: MetricGraph,
    coeffs: VertexCoefficients,
    k: float,
    max_jitters: int = MAX_JITTERS
) -> tuple[ScatteringMatrix, int]:
    """Scattering matrix with the singular-k jitter policy; returns (matrix, retries)."""
    return ScatteringSolver(graph, coeffs).evaluate(k, max_jitters)


def unitarity_defect(s: ScatteringMatrix) -> float:
    """max |sigma^H sigma - I|, the probability-conservation health check."""
    entries = np.asarray(s.entries)
    if entries.size == 0:
        return 0.0
    gram = entries.conj().T @ entries
    return float(np.max(np.abs(gram - np.eye(entries.shape[1]))))


def unitarity_defects(entries: np.ndarray) -> np.ndarray:
    """
    Unitarity defect of every matrix in a stack.

    Args:
        entries: Array of shape (N, l, l)

    Returns:
        Array of N values max |sigma^H sigma - I|
    """
    entries = np.asarray(entries)
    if entries.shape[0] == 0 or entries.shape[-1] == 0:
        return np.zeros(entries.shape[0])
    gram = np.einsum("nji,njk->nik", entries.conj(), entries)
    gram -= np.eye(entries.shape[-1])
    return np.max(np.abs(gram), axis=(1, 2))


def max_deviation(a: ScatteringMatrix, b: ScatteringMatrix) -> float:
    """Largest entrywise distance between two scattering matrices."""
    return float(np.max(np.abs(np.asarray(a.entries) - np.asarray(b.entries))))
