"""Immutable open metric graph with leads."""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from utils.errors import (
    SelfLoopError,
    DuplicateEdgeError,
    IndexOutOfRangeError,
    InvalidLengthError,
    InvalidChannelError,
    DirichletOnInteriorVertexError,
    DisconnectedChannelError,
    FractionOutOfRangeError,
    NonPositiveFactorError,
)


class BoundaryKind(Enum):
    """Vertex boundary condition."""

    NEUMANN = "neumann"
    DIRICHLET = "dirichlet"


class Orientation(Enum):
    FORWARD = "forward"    # u -> v
    BACKWARD = "backward"  # v -> u


@dataclass(frozen=True)
class Edge:
    """Finite edge between vertices u and v."""

    u: int
    v: int
    length: float = 1.0


@dataclass(frozen=True)
class Lead:
    """Semi-infinite lead attached to a vertex; one scattering channel."""

    vertex: int
    channel: int


@dataclass(frozen=True)
class DirectedBond:
    """Oriented copy of an edge, running from ``tail`` to ``head``."""

    edge: int
    orientation: Orientation
    index: int
    tail: int
    head: int

    def reversed(self) -> 'DirectedBond':
        """The same edge walked the other way (bond 2s <-> 2s+1)."""
        if self.orientation is Orientation.FORWARD:
            return DirectedBond(self.edge, Orientation.BACKWARD, self.index + 1, self.head, self.tail)
        return DirectedBond(self.edge, Orientation.FORWARD, self.index - 1, self.head, self.tail)


@dataclass(frozen=True)
class MetricGraph:
    """
    Open metric graph.

    Build instances with ``build_graph`` (which validates); the constructor
    only precomputes the neighbor, degree and bond lookup tables.
    """

    num_vertices: int
    edges: tuple[Edge, ...]
    leads: tuple[Lead, ...]
    boundary: tuple[BoundaryKind, ...]

    _neighbors: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    _leads_at: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    _degrees: tuple[int, ...] = field(init=False, repr=False, compare=False)
    _bond_lookup: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        neighbors = [[] for _ in range(self.num_vertices)]
        bond_lookup = {}
        for s, edge in enumerate(self.edges):
            neighbors[edge.u].append(edge.v)
            neighbors[edge.v].append(edge.u)
            bond_lookup[(edge.u, edge.v)] = 2 * s
            bond_lookup[(edge.v, edge.u)] = 2 * s + 1

        leads_at = [[] for _ in range(self.num_vertices)]
        for lead in sorted(self.leads, key=lambda x: x.channel):
            leads_at[lead.vertex].append(lead.channel)

        degrees = tuple(len(neighbors[v]) + len(leads_at[v]) for v in range(self.num_vertices))

        object.__setattr__(self, '_neighbors', tuple(tuple(n) for n in neighbors))
        object.__setattr__(self, '_leads_at', tuple(tuple(c) for c in leads_at))
        object.__setattr__(self, '_degrees', degrees)
        object.__setattr__(self, '_bond_lookup', bond_lookup)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def num_channels(self) -> int:
        return len(self.leads)

    @property
    def num_bonds(self) -> int:
        return 2 * len(self.edges)

    def _check_vertex(self, v: int):
        if not 0 <= v < self.num_vertices:
            raise IndexOutOfRangeError(f"Vertex {v} out of range (graph has {self.num_vertices} vertices)")

    def degree(self, v: int) -> int:
        """
        Total degree of a vertex: incident edges plus attached leads.

        Raises:
            IndexOutOfRangeError: If v is not a vertex of the graph
        """
        self._check_vertex(v)
        return self._degrees[v]

    def degrees(self) -> tuple[int, ...]:
        """
        Vertex degrees, counting edge endpoints and attached leads.

        Returns:
            Tuple with one degree per vertex
        """
        return self._degrees

    def neighbors(self, v: int) -> tuple[int, ...]:
        """Edge-neighbors of v, in edge declaration order (leads excluded)."""
        self._check_vertex(v)
        return self._neighbors[v]

    def leads_at(self, v: int) -> tuple[int, ...]:
        """Channel indices of the leads attached to v, ascending."""
        self._check_vertex(v)
        return self._leads_at[v]

    def lead_vertex(self, channel: int) -> int:
        """
        Vertex a channel's lead is attached to.

        Args:
            channel: Channel index in [0, l)

        Returns:
            Vertex index

        Raises:
            InvalidChannelError: If the channel is out of range
        """
        if not 0 <= channel < len(self.leads):
            raise InvalidChannelError(f"Channel {channel} out of range (graph has {len(self.leads)} leads)")
        for lead in self.leads:
            if lead.channel == channel:
                return lead.vertex
        raise InvalidChannelError(f"Channel {channel} not declared")

    def bond_index(self, tail: int, head: int) -> int:
        """Index of the directed bond tail -> head."""
        try:
            return self._bond_lookup[(tail, head)]
        except KeyError:
            raise IndexOutOfRangeError(f"No edge between vertices {tail} and {head}") from None

    def bond_length(self, index: int) -> float:
        """Length of the edge under directed bond ``index``; both directions share it."""
        return self.edges[index // 2].length

    def directed_bonds(self) -> list[DirectedBond]:
        """
        All directed bonds; bond 2s is edge s forward, bond 2s+1 edge s backward.
        """
        bonds = []
        for s, edge in enumerate(self.edges):
            bonds.append(DirectedBond(s, Orientation.FORWARD, 2 * s, edge.u, edge.v))
            bonds.append(DirectedBond(s, Orientation.BACKWARD, 2 * s + 1, edge.v, edge.u))
        return bonds

    def adjacency_matrix(self) -> np.ndarray:
        """v x v 0/1 adjacency matrix of the finite edges."""
        adjacency = np.zeros((self.num_vertices, self.num_vertices), dtype=np.int8)
        for edge in self.edges:
            adjacency[edge.u, edge.v] = 1
            adjacency[edge.v, edge.u] = 1
        return adjacency

    def is_equilateral(self, rtol: float = 1e-12) -> bool:
        if not self.edges:
            return True
        first = self.edges[0].length
        return all(math.isclose(e.length, first, rel_tol=rtol, abs_tol=0.0) for e in self.edges)

    def edge_length(self) -> Optional[float]:
        """Common edge length of an equilateral graph, None otherwise."""
        if not self.edges or not self.is_equilateral():
            return None
        return self.edges[0].length

    def subdivide_edge(self, edge: int, fraction: float) -> 'MetricGraph':
        """
        Split an edge with a new degree-2 Neumann vertex.

        Edge ``edge`` becomes (u, w) of length fraction * l and a new edge
        (w, v) of the remaining length is appended; w gets the next vertex index.

        Raises:
            IndexOutOfRangeError: Unknown edge index
            FractionOutOfRangeError: fraction not strictly inside (0, 1)
        """
        if not 0 <= edge < len(self.edges):
            raise IndexOutOfRangeError(f"Edge {edge} out of range (graph has {len(self.edges)} edges)")
        if not 0.0 < fraction < 1.0:
            raise FractionOutOfRangeError(f"Subdivision fraction {fraction} not in (0, 1)")

        old = self.edges[edge]
        w = self.num_vertices
        first = fraction * old.length
        edges = list(self.edges)
        edges[edge] = Edge(old.u, w, first)
        edges.append(Edge(w, old.v, old.length - first))

        return build_graph(
            self.num_vertices + 1,
            edges,
            self.leads,
            self.boundary + (BoundaryKind.NEUMANN,)
        )

    def scale_lengths(self, factor: float) -> 'MetricGraph':
        """
        Multiply every edge length by ``factor``.

        Raises:
            NonPositiveFactorError: factor <= 0 or not finite
        """
        if not (math.isfinite(factor) and factor > 0):
            raise NonPositiveFactorError(f"Length scale factor must be positive, got {factor}")
        if factor == 1.0:
            return self
        edges = [Edge(e.u, e.v, e.length * factor) for e in self.edges]
        return MetricGraph(self.num_vertices, tuple(edges), self.leads, self.boundary)


def build_graph(
    num_vertices: int,
    edges: Sequence[Edge],
    leads: Sequence[Lead],
    boundary: Optional[Sequence[BoundaryKind]] = None
) -> MetricGraph:
    """
    Validate inputs and build a MetricGraph.

    Args:
        num_vertices: Number of vertices v
        edges: Finite edges (simple graph: no loops, no repeated pairs)
        leads: Leads; channel indices must be exactly 0..l-1
        boundary: Per-vertex boundary kind (default: all Neumann)

    Returns:
        Validated immutable graph

    Raises:
        IndexOutOfRangeError, SelfLoopError, DuplicateEdgeError,
        InvalidLengthError, InvalidChannelError,
        DirichletOnInteriorVertexError, DisconnectedChannelError
    """
    if num_vertices < 1:
        raise IndexOutOfRangeError(f"Graph needs at least one vertex, got {num_vertices}")

    if boundary is None:
        boundary = [BoundaryKind.NEUMANN] * num_vertices
    if len(boundary) != num_vertices:
        raise IndexOutOfRangeError(
            f"Boundary list has {len(boundary)} entries for {num_vertices} vertices"
        )

    seen_pairs = {}
    for s, edge in enumerate(edges):
        for endpoint in (edge.u, edge.v):
            if not 0 <= endpoint < num_vertices:
                raise IndexOutOfRangeError(
                    f"Edge {s} ({edge.u}, {edge.v}) references vertex {endpoint} "
                    f"outside 0..{num_vertices - 1}"
                )
        if edge.u == edge.v:
            raise SelfLoopError(f"Edge {s} is a self-loop at vertex {edge.u}")
        if not (math.isfinite(edge.length) and edge.length > 0):
            raise InvalidLengthError(f"Edge {s} ({edge.u}, {edge.v}) has non-positive length {edge.length}")
        pair = (min(edge.u, edge.v), max(edge.u, edge.v))
        if pair in seen_pairs:
            raise DuplicateEdgeError(
                f"Edge {s} duplicates edge {seen_pairs[pair]} between vertices {pair[0]} and {pair[1]}"
            )
        seen_pairs[pair] = s

    for lead in leads:
        if not 0 <= lead.vertex < num_vertices:
            raise IndexOutOfRangeError(
                f"Lead of channel {lead.channel} attached to vertex {lead.vertex} "
                f"outside 0..{num_vertices - 1}"
            )
    channels = sorted(lead.channel for lead in leads)
    if channels != list(range(len(leads))):
        raise InvalidChannelError(f"Lead channels must be exactly 0..{len(leads) - 1}, got {channels}")

    graph = MetricGraph(num_vertices, tuple(edges), tuple(leads), tuple(boundary))

    for v in range(num_vertices):
        if graph.degree(v) == 0:
            raise DisconnectedChannelError(f"Vertex {v} is isolated (no edges or leads)")
        if graph.boundary[v] is BoundaryKind.DIRICHLET and graph.degree(v) != 1:
            raise DirichletOnInteriorVertexError(
                f"Dirichlet boundary at vertex {v} of degree {graph.degree(v)}; only dead ends allowed"
            )

    if edges:
        rows = [e.u for e in edges]
        cols = [e.v for e in edges]
        adjacency = coo_matrix((np.ones(len(edges)), (rows, cols)), shape=(num_vertices, num_vertices))
        n_components, labels = connected_components(adjacency, directed=False)
    else:
        n_components, labels = num_vertices, np.arange(num_vertices)

    if n_components > 1:
        unreachable = int(np.flatnonzero(labels != labels[0])[0])
        stranded = [lead.channel for lead in leads if labels[lead.vertex] != labels[0]]
        detail = f"; channels {stranded} unreachable from vertex 0" if stranded else ""
        raise DisconnectedChannelError(
            f"Graph has {n_components} components: vertex {unreachable} not connected to vertex 0{detail}"
        )

    return graph
