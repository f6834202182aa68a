"""Entropy curves H(k) and the average scattering entropy over one period."""

import logging
import math
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from graph import MetricGraph
from scattering import ScatteringSolver, unitarity_defects
from utils.errors import InvalidChannelError, NotEquilateralError, ValidationError
from .probabilities import ProbabilityVector, entropy_rows, probability_rows
from .quadrature import CompositeGaussLegendre, QuadratureConfig

logger = logging.getLogger(__name__)

UNITARITY_WARNING = 1e-9


@dataclass(frozen=True)
class AseResult:
    """Average scattering entropy in bits with quadrature diagnostics."""

    value: float
    entrance: int
    period: float
    panels: int
    error_estimate: float
    singular_retries: int


@dataclass(frozen=True)
class CurvePoint:
    k: float
    entropy: float
    probabilities: ProbabilityVector


def period(graph: MetricGraph) -> float:
    """
    Period K = 2pi / l of the scattering probabilities of an equilateral graph.

    Raises:
        NotEquilateralError: If edge lengths differ
    """
    if not graph.edges:
        return 2 * math.pi
    length = graph.edge_length()
    if length is None:
        lengths = sorted({e.length for e in graph.edges})
        raise NotEquilateralError(f"ASE needs an equilateral graph; edge lengths {lengths}")
    return 2 * math.pi / length


def curve_span(graph: MetricGraph) -> float:
    """
    Wave-number range [0, K) plotted by default.

    The period for an equilateral graph. Otherwise 2pi / l_min, one period of
    the fastest phase e^{i k l_min}; the curve is not periodic there.
    """
    if graph.edges and graph.edge_length() is None:
        return 2 * math.pi / min(e.length for e in graph.edges)
    return period(graph)


def uniform_grid(k_period: float, count: int) -> np.ndarray:
    """``count`` wave numbers at the midpoints of equal cells of [0, K)."""
    return (np.arange(count) + 0.5) * (k_period / count)


class _EntropyIntegrand:
    """H(k) for one entrance channel, counting the jitter retries it needed."""

    def __init__(self, solver: ScatteringSolver, entrance: int):
        self.solver = solver
        self.entrance = entrance
        self.singular_retries = 0

    def probabilities(self, ks: np.ndarray) -> np.ndarray:
        """Exit probabilities of shape (len(ks), l), from one stacked solve."""
        ks = np.asarray(ks, dtype=np.float64)
        entries, retries = self.solver.evaluate_many(ks)
        self.singular_retries += retries

        defects = unitarity_defects(entries)
        unhealthy = defects > UNITARITY_WARNING
        if unhealthy.any():
            worst = int(np.argmax(defects))
            logger.warning("Unitarity defect above %.0e at %d of %d nodes (worst %.3e at k=%.15g)",
                           UNITARITY_WARNING, int(unhealthy.sum()), len(ks), defects[worst], ks[worst])

        return probability_rows(entries, self.entrance, ks)

    def points(self, ks: np.ndarray) -> list[CurvePoint]:
        rows = self.probabilities(ks)
        entropies = entropy_rows(rows)
        return [
            CurvePoint(
                k=float(k),
                entropy=float(h),
                probabilities=ProbabilityVector(entries=p, entrance=self.entrance, k=float(k))
            )
            for k, h, p in zip(ks, entropies, rows)
        ]

    def __call__(self, ks: np.ndarray) -> np.ndarray:
        return entropy_rows(self.probabilities(ks))


def _check_entrance(graph: MetricGraph, entrance: int):
    if not 0 <= entrance < graph.num_channels:
        raise InvalidChannelError(
            f"Entrance channel {entrance} out of range (graph has {graph.num_channels} leads)"
        )


def entropy_curve(graph: MetricGraph, entrance: int, grid: Iterable[float]) -> list[CurvePoint]:
    """
    Evaluate H(k) and the channel probabilities on a grid.

    Args:
        graph: Validated metric graph
        entrance: Entrance channel
        grid: Finite wave numbers

    Returns:
        One CurvePoint per grid value, in grid order
    """
    _check_entrance(graph, entrance)
    integrand = _EntropyIntegrand(ScatteringSolver(graph), entrance)
    grid = np.asarray([float(k) for k in grid], dtype=np.float64)
    for k in grid:
        if not math.isfinite(k):
            raise ValidationError(f"Grid value {k} is not finite")
    return integrand.points(grid)


def average_scattering_entropy(
    graph: MetricGraph,
    entrance: int = 0,
    config: Optional[QuadratureConfig] = None,
    periods: int = 1
) -> AseResult:
    """
    ASE = (1/K) integral_0^K H(k) dk.

    Args:
        graph: Equilateral metric graph with at least one lead
        entrance: Entrance channel (default 0, the first declared lead)
        config: Quadrature settings
        periods: Integrate over this many periods (the average is unchanged)

    Returns:
        AseResult

    Raises:
        NotEquilateralError, NoConvergenceError, NormalizationFailureError
    """
    config = config or QuadratureConfig()
    _check_entrance(graph, entrance)
    k_period = period(graph)
    span = periods * k_period

    integrand = _EntropyIntegrand(ScatteringSolver(graph), entrance)
    quadrature = CompositeGaussLegendre(config)
    result = quadrature.integrate(lambda ks: integrand(ks) / span, 0.0, span)

    logger.debug("ASE entrance %d: %.10f (%d panels, error %.2e, %d jitters)",
                 entrance, result.integral, result.panels, result.error_estimate,
                 integrand.singular_retries)

    return AseResult(
        value=result.integral,
        entrance=entrance,
        period=k_period,
        panels=result.panels,
        error_estimate=result.error_estimate,
        singular_retries=integrand.singular_retries
    )


def ase_by_entrance(graph: MetricGraph, config: Optional[QuadratureConfig] = None) -> list[AseResult]:
    """ASE for every entrance channel, in channel order."""
    return [
        average_scattering_entropy(graph, entrance, config)
        for entrance in range(graph.num_channels)
    ]
