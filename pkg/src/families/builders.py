"""Deterministic unit-equilateral graph families.

Vertex numbering: structural vertices first (chain or ring c_1..c_n, unit
vertices, rails, layers), dead-end pendants and cap apexes after them, in
creation order. Channel 0 is always the entrance lead, channel 1 the exit.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from graph import BoundaryKind, Edge, Lead, MetricGraph, build_graph
from utils.errors import ValidationError, WordTooShortError
from .words import Word

MIN_RING = 3


class _GraphBuilder:
    """Accumulates vertices, unit-length edges and leads, then validates once."""

    def __init__(self):
        self.num_vertices = 0
        self.edges: list[Edge] = []
        self.leads: list[Lead] = []
        self.boundary: list[BoundaryKind] = []

    def add_vertex(self, kind: BoundaryKind = BoundaryKind.NEUMANN) -> int:
        self.boundary.append(kind)
        self.num_vertices += 1
        return self.num_vertices - 1

    def add_vertices(self, count: int) -> list[int]:
        return [self.add_vertex() for _ in range(count)]

    def connect(self, u: int, v: int):
        self.edges.append(Edge(u, v, 1.0))

    def add_lead(self, vertex: int):
        self.leads.append(Lead(vertex, len(self.leads)))

    def build(self) -> MetricGraph:
        return build_graph(self.num_vertices, self.edges, self.leads, self.boundary)


def _check_count(n: int, what: str):
    if n < 1:
        raise ValidationError(f"{what} needs n >= 1, got {n}")


def _check_ring(word: Word):
    if len(word) < MIN_RING:
        raise WordTooShortError(
            f"Ring arrangements need a word of length >= {MIN_RING}, got {len(word)} ({word})"
        )


def _add_pendants(builder: _GraphBuilder, chain: list[int], word: Word, dead_end: BoundaryKind) -> list[list[int]]:
    pendants = []
    for vertex, letter in zip(chain, word):
        own = []
        for _ in range(letter.pendants):
            p = builder.add_vertex(dead_end)
            builder.connect(vertex, p)
            own.append(p)
        pendants.append(own)
    return pendants


def build_line(word: Word, dead_end: BoundaryKind = BoundaryKind.NEUMANN) -> MetricGraph:
    """
    Chain c_1..c_n with one (alpha) or two (beta) dead ends per vertex.

    Leads at c_1 (channel 0) and c_n (channel 1); for n = 1 both sit on c_1,
    which gives the alpha and beta graphs themselves.
    """
    builder = _GraphBuilder()
    chain = builder.add_vertices(len(word))
    for a, b in zip(chain, chain[1:]):
        builder.connect(a, b)
    _add_pendants(builder, chain, word, dead_end)
    builder.add_lead(chain[0])
    builder.add_lead(chain[-1])
    return builder.build()


def _ring(builder: _GraphBuilder, word: Word) -> list[int]:
    ring = builder.add_vertices(len(word))
    for a, b in zip(ring, ring[1:] + ring[:1]):
        builder.connect(a, b)
    return ring


def build_circle(word: Word, dead_end: BoundaryKind = BoundaryKind.NEUMANN) -> MetricGraph:
    """
    Ring c_1..c_n (letters clockwise from c_1) with leads on c_1 and its ring neighbor c_2.

    Raises:
        WordTooShortError: Word shorter than 3
    """
    _check_ring(word)
    builder = _GraphBuilder()
    ring = _ring(builder, word)
    _add_pendants(builder, ring, word, dead_end)
    builder.add_lead(ring[0])
    builder.add_lead(ring[1])
    return builder.build()


def build_circle2(word: Word, dead_end: BoundaryKind = BoundaryKind.NEUMANN) -> MetricGraph:
    """
    Ring as in build_circle, leads on the first dead end of c_1 and of c_2.

    Those two pendants become degree-2 (transparent) vertices and keep the
    Neumann condition whatever ``dead_end`` says.
    """
    _check_ring(word)
    builder = _GraphBuilder()
    ring = _ring(builder, word)
    pendants = _add_pendants(builder, ring, word, dead_end)
    for p in (pendants[0][0], pendants[1][0]):
        builder.boundary[p] = BoundaryKind.NEUMANN
        builder.add_lead(p)
    return builder.build()


def build_circle2_reduced(word: Word, dead_end: BoundaryKind = BoundaryKind.NEUMANN) -> MetricGraph:
    """
    Circle2 with its two transparent lead pendants removed.

    c_1 and c_2 lose the pendant that carried a lead and take the lead
    directly, so ring degrees match build_circle2.
    """
    _check_ring(word)
    builder = _GraphBuilder()
    ring = _ring(builder, word)
    for position, (vertex, letter) in enumerate(zip(ring, word)):
        count = letter.pendants - (1 if position < 2 else 0)
        for _ in range(count):
            p = builder.add_vertex(dead_end)
            builder.connect(vertex, p)
    builder.add_lead(ring[0])
    builder.add_lead(ring[1])
    return builder.build()


def build_gamma_chain(n: int) -> MetricGraph:
    """
    n gamma units (two triangles sharing edge a-b, outer vertices c and d) in a row.

    Unit m is joined to unit m+1 by the edge d_m - c_{m+1}; leads at c_1 and d_n.
    Every vertex has degree 3.
    """
    _check_count(n, "gamma chain")
    builder = _GraphBuilder()
    units = []
    for _ in range(n):
        a, b, c, d = builder.add_vertices(4)
        for u, v in ((a, b), (a, c), (b, c), (a, d), (b, d)):
            builder.connect(u, v)
        units.append((c, d))
    for (_, d), (c, _) in zip(units, units[1:]):
        builder.connect(d, c)
    builder.add_lead(units[0][0])
    builder.add_lead(units[-1][1])
    return builder.build()


def build_delta_chain(n: int) -> MetricGraph:
    """
    n delta units (two tetrahedra sharing triangle a-b-c, apexes d and e) in a row.

    Unit m is joined to unit m+1 by e_m - d_{m+1}; leads at d_1 and e_n.
    Every vertex has degree 4.
    """
    _check_count(n, "delta chain")
    builder = _GraphBuilder()
    units = []
    for _ in range(n):
        a, b, c, d, e = builder.add_vertices(5)
        for u, v in ((a, b), (b, c), (a, c)):
            builder.connect(u, v)
        for apex in (d, e):
            for base in (a, b, c):
                builder.connect(apex, base)
        units.append((d, e))
    for (_, e), (d, _) in zip(units, units[1:]):
        builder.connect(e, d)
    builder.add_lead(units[0][0])
    builder.add_lead(units[-1][1])
    return builder.build()


def build_square_stripe(n: int) -> MetricGraph:
    """
    Ladder of n squares capped by a triangle at each end.

    Rails top_0..top_n and bottom_0..bottom_n; rungs top_j - bottom_j; an apex
    joined to both end rail vertices on each side carries one lead. Every
    vertex has degree 3; 2n + 4 vertices and 3n + 5 edges.
    """
    _check_count(n, "square stripe")
    builder = _GraphBuilder()
    top = builder.add_vertices(n + 1)
    bottom = builder.add_vertices(n + 1)
    for rail in (top, bottom):
        for a, b in zip(rail, rail[1:]):
            builder.connect(a, b)
    for a, b in zip(top, bottom):
        builder.connect(a, b)
    left = builder.add_vertex()
    right = builder.add_vertex()
    for apex, end in ((left, 0), (right, n)):
        builder.connect(apex, top[end])
        builder.connect(apex, bottom[end])
    builder.add_lead(left)
    builder.add_lead(right)
    return builder.build()


def build_prism_tube(n: int) -> MetricGraph:
    """
    n triangular prisms stacked into a tube, capped by a tetrahedron at each end.

    n + 1 triangle layers, three longitudinal edges between consecutive
    layers, and an apex joined to the three end-layer vertices on each side
    carrying one lead. Every vertex has degree 4; 3n + 5 vertices, 6n + 9 edges.
    """
    _check_count(n, "prism tube")
    builder = _GraphBuilder()
    layers = [builder.add_vertices(3) for _ in range(n + 1)]
    for layer in layers:
        for a, b in zip(layer, layer[1:] + layer[:1]):
            builder.connect(a, b)
    for lower, upper in zip(layers, layers[1:]):
        for a, b in zip(lower, upper):
            builder.connect(a, b)
    left = builder.add_vertex()
    right = builder.add_vertex()
    for apex, layer in ((left, layers[0]), (right, layers[-1])):
        for vertex in layer:
            builder.connect(apex, vertex)
    builder.add_lead(left)
    builder.add_lead(right)
    return builder.build()


class FamilyKind(Enum):
    LINE = 'line'
    CIRCLE = 'circle'
    CIRCLE2 = 'circle2'
    GAMMA = 'gamma'
    DELTA = 'delta'
    SQUARES = 'squares'
    PRISMS = 'prisms'

    @property
    def uses_word(self) -> bool:
        return self in (FamilyKind.LINE, FamilyKind.CIRCLE, FamilyKind.CIRCLE2)


@dataclass(frozen=True)
class FamilySpec:
    """A family and its parameter: a word for line/circle/circle2, a count otherwise."""

    kind: FamilyKind
    word: Optional[Word] = None
    n: Optional[int] = None
    dead_end: BoundaryKind = BoundaryKind.NEUMANN

    def __post_init__(self):
        if self.kind.uses_word and self.word is None:
            raise ValidationError(f"Family '{self.kind.value}' needs a word")
        if not self.kind.uses_word and self.n is None:
            raise ValidationError(f"Family '{self.kind.value}' needs a count n")

    @property
    def label(self) -> str:
        return str(self.word) if self.kind.uses_word else str(self.n)


_WORD_BUILDERS = {
    FamilyKind.LINE: build_line,
    FamilyKind.CIRCLE: build_circle,
    FamilyKind.CIRCLE2: build_circle2,
}

_COUNT_BUILDERS = {
    FamilyKind.GAMMA: build_gamma_chain,
    FamilyKind.DELTA: build_delta_chain,
    FamilyKind.SQUARES: build_square_stripe,
    FamilyKind.PRISMS: build_prism_tube,
}


def build_family(spec: FamilySpec) -> MetricGraph:
    """Build the graph described by ``spec``."""
    if spec.kind.uses_word:
        return _WORD_BUILDERS[spec.kind](spec.word, spec.dead_end)
    return _COUNT_BUILDERS[spec.kind](spec.n)
