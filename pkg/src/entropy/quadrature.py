"""Composite Gauss-Legendre quadrature with locally adaptive panels."""

import logging
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from numpy.polynomial.legendre import leggauss

from utils.errors import NoConvergenceError, ValidationError

logger = logging.getLogger(__name__)

# Bisection rounds allowed in one adaptive pass
MAX_ROUNDS = 60


@dataclass(frozen=True)
class QuadratureConfig:
    """Accuracy controls for the ASE integral."""

    tolerance: float = 1e-7
    initial_panels: int = 64
    nodes_per_panel: int = 16
    max_doublings: int = 6
    max_panels: int = 1 << 16

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValidationError(f"Quadrature tolerance must be positive, got {self.tolerance}")
        for name in ('initial_panels', 'nodes_per_panel', 'max_doublings', 'max_panels'):
            value = getattr(self, name)
            if not (isinstance(value, int) and value > 0):
                raise ValidationError(f"Quadrature {name} must be a positive integer, got {value!r}")

    @classmethod
    def from_dict(cls, values: dict) -> 'QuadratureConfig':
        """Build from a config mapping, ignoring keys that are not quadrature settings."""
        known = {'tolerance', 'initial_panels', 'nodes_per_panel', 'max_doublings', 'max_panels'}
        return cls(**{key: value for key, value in values.items() if key in known})


@dataclass(frozen=True)
class QuadratureResult:
    integral: float
    panels: int
    error_estimate: float


@dataclass(frozen=True)
class _Pass:
    """Outcome of one adaptive pass from a uniform base partition."""

    integral: float
    panels: int
    error_estimate: float
    converged: bool


class CompositeGaussLegendre:
    """
    Integrates a vectorized function over [a, b] on adaptively bisected panels.

    Every panel is integrated twice, with the full rule and with a rule of half
    the order. Their difference is the panel's error estimate; panels whose
    estimate exceeds their share of the tolerance are bisected until all pass.
    Panels hold only interior Gauss nodes, so the interval ends are never
    sampled.

    A pass that cannot settle within ``max_panels`` panels is restarted from a
    base partition twice as fine, at most ``max_doublings`` times.
    """

    def __init__(self, config: QuadratureConfig = QuadratureConfig()):
        self.config = config
        self._nodes, self._weights = leggauss(config.nodes_per_panel)
        self._coarse_nodes, self._coarse_weights = leggauss(max(1, config.nodes_per_panel // 2))

    def nodes(self, a: float, b: float, panels: int) -> np.ndarray:
        """All quadrature nodes of a uniform partition, panel by panel, ascending."""
        edges = np.linspace(a, b, panels + 1)
        return self._panel_nodes(edges[:-1], edges[1:], self._nodes).ravel()

    @staticmethod
    def _panel_nodes(left: np.ndarray, right: np.ndarray, reference: np.ndarray) -> np.ndarray:
        centre = 0.5 * (left + right)
        half = 0.5 * (right - left)
        return centre[:, None] + half[:, None] * reference[None, :]

    def _estimate_panels(
        self,
        func: Callable[[np.ndarray], np.ndarray],
        left: np.ndarray,
        right: np.ndarray
    ) -> tuple[np.ndarray, np.ndarray]:
        """
        Integrate each panel with both rules in one call to ``func``.

        Returns:
            (full-order panel integrals, absolute difference to the half-order rule)
        """
        fine = self._panel_nodes(left, right, self._nodes)
        coarse = self._panel_nodes(left, right, self._coarse_nodes)
        values = np.asarray(func(np.concatenate([fine.ravel(), coarse.ravel()])), dtype=np.float64)

        half = 0.5 * (right - left)
        split = fine.size
        high = half * (values[:split].reshape(fine.shape) @ self._weights)
        low = half * (values[split:].reshape(coarse.shape) @ self._coarse_weights)
        return high, np.abs(high - low)

    def _adaptive_pass(
        self,
        func: Callable[[np.ndarray], np.ndarray],
        a: float,
        b: float,
        base_panels: int
    ) -> _Pass:
        span = b - a
        tol = self.config.tolerance
        edges = np.linspace(a, b, base_panels + 1)
        left, right = edges[:-1], edges[1:]
        high, error = self._estimate_panels(func, left, right)

        for round_index in range(MAX_ROUNDS + 1):
            # each panel may use its share of the tolerance
            flagged = error > tol * (right - left) / span
            if not flagged.any():
                break
            if round_index == MAX_ROUNDS or len(left) + int(flagged.sum()) > self.config.max_panels:
                break

            keep = ~flagged
            middle = 0.5 * (left[flagged] + right[flagged])
            new_left = np.concatenate([left[flagged], middle])
            new_right = np.concatenate([middle, right[flagged]])
            new_high, new_error = self._estimate_panels(func, new_left, new_right)

            left = np.concatenate([left[keep], new_left])
            right = np.concatenate([right[keep], new_right])
            high = np.concatenate([high[keep], new_high])
            error = np.concatenate([error[keep], new_error])
            logger.debug("Quadrature on [%g, %g]: round %d bisected %d panels, now %d",
                         a, b, round_index + 1, int(flagged.sum()), len(left))

        # fixed-order accumulation
        order = np.argsort(left, kind='stable')
        return _Pass(
            integral=float(np.sum(high[order])),
            panels=len(left),
            error_estimate=float(np.sum(error[order])),
            converged=not flagged.any()
        )

    def integrate(self, func: Callable[[np.ndarray], np.ndarray], a: float, b: float) -> QuadratureResult:
        """
        Adaptive composite integral of ``func`` over [a, b].

        Args:
            func: Maps an array of abscissae to an array of values
            a: Lower limit
            b: Upper limit, greater than a

        Returns:
            QuadratureResult; error_estimate is the summed full against
            half-order difference and lies below the tolerance

        Raises:
            NoConvergenceError: If no base partition up to max_doublings
                doublings settles within max_panels panels
        """
        base_panels = self.config.initial_panels
        attempt: Optional[_Pass] = None

        for doubling in range(self.config.max_doublings + 1):
            attempt = self._adaptive_pass(func, a, b, base_panels)
            logger.debug("Quadrature on [%g, %g]: base %d panels gave %.15g on %d panels, error %.3e",
                         a, b, base_panels, attempt.integral, attempt.panels, attempt.error_estimate)
            if attempt.converged:
                return QuadratureResult(
                    integral=attempt.integral,
                    panels=attempt.panels,
                    error_estimate=attempt.error_estimate
                )
            if doubling < self.config.max_doublings:
                base_panels *= 2

        raise NoConvergenceError(
            f"Quadrature did not reach tolerance {self.config.tolerance:g} on [{a:g}, {b:g}] "
            f"after {self.config.max_doublings} doublings ({attempt.panels} panels, "
            f"error estimate {attempt.error_estimate:.3e})"
        )
