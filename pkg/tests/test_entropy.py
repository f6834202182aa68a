"""Tests for probabilities, entropy curves, quadrature and the ASE."""

import math

import numpy as np
import pytest
from scipy.special import entr

from entropy import (
    CompositeGaussLegendre,
    QuadratureConfig,
    ase_by_entrance,
    average_scattering_entropy,
    channel_probabilities,
    curve_span,
    entropy_curve,
    max_entropy,
    period,
    shannon_entropy,
    uniform_grid,
)
from entropy.probabilities import entropy_rows, probability_rows
from ensemble import sample_stream
from families import Letter, build_circle, build_line, parse_word, random_word, uniform_word
from graph import BoundaryKind, Edge, Lead, build_graph
from scattering import ScatteringMatrix
from utils.errors import (
    InvalidChannelError,
    NoConvergenceError,
    NormalizationFailureError,
    NotEquilateralError,
    ValidationError,
)

ASE_ALPHA = 0.503258
ASE_BETA = 0.557305


@pytest.fixture
def cavity_graph():
    """Lead 0 beside a dead end at vertex 0; leads 1 and 2 share vertex 2."""
    return build_graph(
        3,
        [Edge(0, 1), Edge(0, 2)],
        [Lead(0, 0), Lead(2, 1), Lead(2, 2)]
    )


class TestChannelProbabilities:
    def test_sums_to_one(self):
        entries = np.array([[0.6, 0.8j], [0.8j, 0.6]])
        p = channel_probabilities(ScatteringMatrix(entries, 0.0), 1)
        assert np.allclose(p.entries, [0.64, 0.36])
        assert p.entrance == 1
        assert len(p) == 2

    def test_rounding_above_one_clipped(self):
        entries = np.array([[1 + 1e-10, 0], [0, 1]], dtype=complex)
        p = channel_probabilities(ScatteringMatrix(entries, 0.0), 0)
        assert p.entries[0] == 1.0
        assert p.entries[1] == 0.0

    def test_entrance_out_of_range(self):
        with pytest.raises(InvalidChannelError):
            channel_probabilities(ScatteringMatrix(np.eye(2, dtype=complex), 0.0), 2)

    def test_normalization_failure(self):
        entries = np.array([[0.5, 0], [0, 1]], dtype=complex)
        with pytest.raises(NormalizationFailureError, match="entrance 0"):
            channel_probabilities(ScatteringMatrix(entries, 0.25), 0)


class TestProbabilityRows:
    def test_matches_single_matrix(self):
        entries = np.array([[[0.6, 0.8j], [0.8j, 0.6]], [[1, 0], [0, 1]]], dtype=complex)
        rows = probability_rows(entries, 1, np.array([0.1, 0.2]))
        assert np.allclose(rows, [[0.64, 0.36], [0.0, 1.0]])
        single = channel_probabilities(ScatteringMatrix(entries[0], 0.1), 1)
        assert entropy_rows(rows)[0] == pytest.approx(shannon_entropy(single), abs=1e-15)

    def test_names_failing_wave_number(self):
        entries = np.array([np.eye(2), [[0.5, 0], [0, 1]]], dtype=complex)
        with pytest.raises(NormalizationFailureError, match="k=0.75"):
            probability_rows(entries, 0, np.array([0.25, 0.75]))

    def test_entropy_bounds(self):
        rows = np.array([[0.25, 0.25, 0.25, 0.25], [1.0, 0.0, 0.0, 0.0]])
        assert np.allclose(entropy_rows(rows), [2.0, 0.0], atol=1e-15)


class TestShannonEntropy:
    @pytest.mark.parametrize('entries, expected', [
        ([1.0, 0.0], 0.0),
        ([0.5, 0.5], 1.0),
        ([0.25, 0.25, 0.25, 0.25], 2.0),
        ([0.5, 0.25, 0.25], 1.5),
    ])
    def test_values(self, entries, expected):
        assert shannon_entropy(np.array(entries)) == pytest.approx(expected, abs=1e-15)

    def test_bounded_by_log_channels(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            p = rng.dirichlet(np.ones(5))
            assert 0.0 <= shannon_entropy(p) <= max_entropy(5)

    def test_max_entropy(self):
        assert max_entropy(1) == 0.0
        assert max_entropy(8) == 3.0


class TestQuadrature:
    def test_config_defaults(self):
        config = QuadratureConfig()
        assert config.tolerance == 1e-7
        assert config.initial_panels == 64
        assert config.nodes_per_panel == 16
        assert config.max_doublings == 6
        assert config.max_panels == 65536

    @pytest.mark.parametrize('values', [
        {'tolerance': 0.0},
        {'initial_panels': 0},
        {'nodes_per_panel': 2.5},
        {'max_doublings': -1},
        {'max_panels': 0},
    ])
    def test_config_rejects(self, values):
        with pytest.raises(ValidationError):
            QuadratureConfig(**values)

    def test_from_dict_ignores_other_keys(self):
        config = QuadratureConfig.from_dict({'tolerance': 1e-9, 'workers': 4})
        assert config.tolerance == 1e-9
        assert config.initial_panels == 64

    def test_nodes_are_interior(self):
        quadrature = CompositeGaussLegendre(QuadratureConfig(initial_panels=4, nodes_per_panel=3))
        nodes = quadrature.nodes(0.0, 1.0, 4)
        assert len(nodes) == 12
        assert np.all(np.diff(nodes) > 0)
        assert nodes[0] > 0.0 and nodes[-1] < 1.0

    def test_polynomial(self):
        result = CompositeGaussLegendre().integrate(lambda x: x ** 3, 0.0, 2.0)
        assert result.integral == pytest.approx(4.0, abs=1e-13)
        assert result.panels == 64
        assert result.error_estimate < 1e-7

    def test_no_convergence(self):
        config = QuadratureConfig(tolerance=1e-300, initial_panels=1, nodes_per_panel=2, max_doublings=2)
        with pytest.raises(NoConvergenceError, match="2 doublings"):
            CompositeGaussLegendre(config).integrate(lambda x: np.abs(np.sin(7 * x)), 0.0, 3.0)

    def test_deterministic(self):
        quadrature = CompositeGaussLegendre()
        first = quadrature.integrate(lambda x: np.abs(np.cos(x)), 0.0, 5.0)
        assert quadrature.integrate(lambda x: np.abs(np.cos(x)), 0.0, 5.0) == first

    def test_refines_only_around_kink(self):
        result = CompositeGaussLegendre().integrate(lambda x: np.abs(x - 0.3), 0.0, 1.0)
        assert result.integral == pytest.approx(0.29, abs=1e-7)
        assert 64 < result.panels < 128
        assert result.error_estimate < 1e-7

    def test_narrow_peak(self):
        width, centre = 1e-4, 0.4
        expected = (math.atan((1 - centre) / width) + math.atan(centre / width)) / math.pi
        result = CompositeGaussLegendre().integrate(
            lambda x: width / ((x - centre) ** 2 + width ** 2) / math.pi, 0.0, 1.0
        )
        assert result.integral == pytest.approx(expected, abs=1e-7)
        assert result.panels < 1000

    def test_panel_cap_stops_a_pass(self):
        config = QuadratureConfig(tolerance=1e-12, initial_panels=2, nodes_per_panel=4,
                                  max_doublings=1, max_panels=8)
        with pytest.raises(NoConvergenceError, match="1 doublings"):
            CompositeGaussLegendre(config).integrate(lambda x: np.abs(x - 0.3), 0.0, 1.0)


class TestEntropyCurve:
    def test_alpha_full_reflection(self, alpha):
        point, = entropy_curve(alpha, 0, [math.pi / 2])
        assert point.entropy == pytest.approx(0.0, abs=1e-12)
        assert point.probabilities.entries[0] == pytest.approx(1.0, abs=1e-12)

    def test_transparent_chain(self, transparent_chain):
        for point in entropy_curve(transparent_chain, 0, uniform_grid(2 * math.pi, 32)):
            assert point.entropy == pytest.approx(0.0, abs=1e-14)

    @pytest.mark.parametrize('delta', [0.1, 0.37, 1.2])
    def test_alpha_symmetric_about_pi(self, alpha, delta):
        below, above = entropy_curve(alpha, 0, [math.pi - delta, math.pi + delta])
        assert abs(below.entropy - above.entropy) < 1e-10

    def test_alpha_matches_closed_form(self, alpha):
        ks = uniform_grid(2 * math.pi, 40)
        c = np.cos(2 * ks)
        p_r = (2 - 2 * c) / (10 + 6 * c)
        expected = (entr(p_r) + entr(1 - p_r)) / math.log(2)
        curve = entropy_curve(alpha, 0, ks)
        assert [point.k for point in curve] == pytest.approx(list(ks))
        assert np.allclose([point.entropy for point in curve], expected, atol=1e-12)

    def test_rejects_non_finite(self, alpha):
        with pytest.raises(ValidationError):
            entropy_curve(alpha, 0, [1.0, math.inf])

    def test_rejects_bad_entrance(self, alpha):
        with pytest.raises(InvalidChannelError):
            entropy_curve(alpha, 2, [1.0])


class TestPeriod:
    def test_unit_lengths(self, beta):
        assert period(beta) == pytest.approx(2 * math.pi)

    def test_scaled(self, beta):
        assert period(beta.scale_lengths(0.5)) == pytest.approx(4 * math.pi)

    def test_not_equilateral(self, alpha):
        with pytest.raises(NotEquilateralError):
            period(alpha.subdivide_edge(0, 0.3))

    def test_uniform_grid(self):
        assert np.allclose(uniform_grid(4.0, 4), [0.5, 1.5, 2.5, 3.5])


class TestAverageScatteringEntropy:
    def test_alpha(self, alpha):
        result = average_scattering_entropy(alpha)
        assert result.value == pytest.approx(ASE_ALPHA, abs=5e-6)
        assert result.entrance == 0
        assert result.period == pytest.approx(2 * math.pi)
        assert result.singular_retries == 0
        assert result.error_estimate < 1e-7

    def test_beta(self, beta):
        assert average_scattering_entropy(beta).value == pytest.approx(ASE_BETA, abs=5e-6)

    def test_beta_exact(self, beta):
        assert average_scattering_entropy(beta).value == pytest.approx(2 - 1 / math.log(2), abs=1e-8)

    def test_alpha_against_direct_integration(self, alpha):
        # midpoint rule on cos(2k), which has spectral accuracy away from the log zeros
        ks = uniform_grid(2 * math.pi, 1 << 18)
        c = np.cos(2 * ks)
        p_r = (2 - 2 * c) / (10 + 6 * c)
        direct = float(np.mean(entr(p_r) + entr(1 - p_r))) / math.log(2)
        assert average_scattering_entropy(alpha).value == pytest.approx(direct, abs=1e-8)

    @pytest.mark.parametrize('word, expected', [('a', ASE_ALPHA), ('b', ASE_BETA)])
    def test_dirichlet_dead_ends(self, word, expected):
        graph = build_line(parse_word(word), BoundaryKind.DIRICHLET)
        assert average_scattering_entropy(graph).value == pytest.approx(expected, abs=1e-5)

    def test_transparent_chain(self, transparent_chain):
        assert average_scattering_entropy(transparent_chain).value == pytest.approx(0.0, abs=1e-14)

    def test_period_doubling(self, alpha):
        single = average_scattering_entropy(alpha).value
        double = average_scattering_entropy(alpha, periods=2).value
        assert abs(single - double) < 1e-7

    def test_scaled_graph_same_average(self, alpha):
        scaled = average_scattering_entropy(alpha.scale_lengths(2.0))
        assert scaled.period == pytest.approx(math.pi)
        assert scaled.value == pytest.approx(ASE_ALPHA, abs=5e-6)

    def test_bounds(self, interior_lead_chain):
        for result in ase_by_entrance(interior_lead_chain):
            assert 0.0 <= result.value <= math.log2(3)

    @pytest.mark.parametrize('builder, word', [
        (build_line, 'abba'),
        (build_line, 'aab'),
        (build_circle, 'abb'),
    ])
    def test_entrance_symmetry(self, builder, word):
        first, second = ase_by_entrance(builder(parse_word(word)))
        assert abs(first.value - second.value) < 2e-7

    def test_entrance_dependence(self, cavity_graph):
        results = ase_by_entrance(cavity_graph)
        assert [r.entrance for r in results] == [0, 1, 2]
        assert abs(results[1].value - results[2].value) < 2e-7
        assert abs(results[0].value - results[1].value) > 1e-4

    def test_not_equilateral(self, alpha):
        with pytest.raises(NotEquilateralError):
            average_scattering_entropy(alpha.subdivide_edge(0, 0.25))

    def test_bad_entrance(self, alpha):
        with pytest.raises(InvalidChannelError):
            average_scattering_entropy(alpha, entrance=5)


class TestResonantGraphs:
    """Longer chains whose curves carry narrow resonances."""

    def test_beta_line_of_eight(self):
        result = average_scattering_entropy(build_line(uniform_word(Letter.BETA, 8)))
        assert 0.0 < result.value < 1.0
        assert result.error_estimate < 1e-7

    def test_random_circle_of_thirteen(self):
        word = random_word(13, sample_stream(2024, 13, 0))
        result = average_scattering_entropy(build_circle(word))
        assert 0.0 < result.value < 1.0
        assert result.error_estimate < 1e-7

    def test_batched_curve_matches_single_points(self):
        graph = build_circle(random_word(13, sample_stream(2024, 13, 1)))
        ks = uniform_grid(2 * math.pi, 50)
        batched = entropy_curve(graph, 0, ks)
        for k, point in zip(ks[::7], batched[::7]):
            single, = entropy_curve(graph, 0, [k])
            assert point.entropy == pytest.approx(single.entropy, abs=1e-12)


class TestCurveSpan:
    def test_equilateral_is_period(self, beta):
        assert curve_span(beta) == pytest.approx(2 * math.pi)

    def test_uneven_uses_shortest_edge(self, alpha):
        uneven = alpha.subdivide_edge(0, 0.25)
        assert curve_span(uneven) == pytest.approx(2 * math.pi / 0.25)
