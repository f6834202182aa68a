"""Tests for words and the family builders."""

import numpy as np
import pytest

from entropy import channel_probabilities
from families import (
    FamilyKind,
    FamilySpec,
    Letter,
    Word,
    build_circle,
    build_circle2,
    build_circle2_reduced,
    build_delta_chain,
    build_family,
    build_gamma_chain,
    build_line,
    build_prism_tube,
    build_square_stripe,
    fibonacci_word,
    parse_word,
    random_word,
    uniform_word,
)
from graph import BoundaryKind
from scattering import ScatteringSolver
from utils.errors import EmptyWordError, ValidationError, WordTooShortError


class TestWords:
    def test_parse(self):
        word = parse_word(' ABba ')
        assert word.letters == (Letter.ALPHA, Letter.BETA, Letter.BETA, Letter.ALPHA)
        assert str(word) == 'abba'
        assert len(word) == 4
        assert word[1] is Letter.BETA

    def test_parse_rejects_other_letters(self):
        with pytest.raises(ValidationError, match=r"\['c'\]"):
            parse_word('abc')

    @pytest.mark.parametrize('text', ['', '   '])
    def test_parse_empty(self, text):
        with pytest.raises(EmptyWordError):
            parse_word(text)

    def test_empty_word(self):
        with pytest.raises(EmptyWordError):
            Word(())

    def test_uniform(self):
        assert str(uniform_word(Letter.BETA, 3)) == 'bbb'
        with pytest.raises(EmptyWordError):
            uniform_word(Letter.ALPHA, 0)

    @pytest.mark.parametrize('generation, expected', [
        (1, 'a'),
        (2, 'ab'),
        (3, 'aba'),
        (4, 'abaab'),
        (5, 'abaababa'),
    ])
    def test_fibonacci(self, generation, expected):
        assert str(fibonacci_word(generation)) == expected

    def test_fibonacci_lengths(self):
        lengths = [len(fibonacci_word(m)) for m in range(1, 10)]
        assert lengths[:7] == [1, 2, 3, 5, 8, 13, 21]
        for a, b, c in zip(lengths, lengths[1:], lengths[2:]):
            assert a + b == c

    def test_fibonacci_rejects_zero(self):
        with pytest.raises(ValidationError):
            fibonacci_word(0)

    def test_random_deterministic(self):
        first = random_word(13, np.random.default_rng(42))
        second = random_word(13, np.random.default_rng(42))
        assert first == second
        assert len(first) == 13

    def test_random_frequency(self):
        word = random_word(10_000, np.random.default_rng(1))
        beta_share = sum(letter is Letter.BETA for letter in word) / len(word)
        assert beta_share == pytest.approx(0.5, abs=0.02)

    def test_random_bias(self):
        rng = np.random.default_rng(5)
        assert str(random_word(6, rng, beta_probability=0.0)) == 'aaaaaa'
        assert str(random_word(6, rng, beta_probability=1.0)) == 'bbbbbb'
        with pytest.raises(ValidationError):
            random_word(6, rng, beta_probability=1.5)


def chain_degrees(graph, count):
    return [graph.degree(v) for v in range(count)]


class TestLine:
    def test_alpha_4(self):
        graph = build_line(uniform_word(Letter.ALPHA, 4))
        assert (graph.num_vertices, graph.num_edges, graph.num_channels) == (8, 7, 2)
        assert chain_degrees(graph, 4) == [3, 3, 3, 3]
        assert graph.lead_vertex(0) == 0
        assert graph.lead_vertex(1) == 3

    def test_beta_3(self):
        graph = build_line(parse_word('bbb'))
        assert (graph.num_vertices, graph.num_edges, graph.num_channels) == (9, 8, 2)
        assert chain_degrees(graph, 3) == [4, 4, 4]

    def test_alpha_graph(self, alpha):
        assert alpha.num_vertices == 2
        assert alpha.degrees() == (3, 1)
        assert alpha.leads_at(0) == (0, 1)

    def test_dead_end_boundary(self):
        graph = build_line(parse_word('ab'), BoundaryKind.DIRICHLET)
        assert graph.boundary[:2] == (BoundaryKind.NEUMANN, BoundaryKind.NEUMANN)
        assert set(graph.boundary[2:]) == {BoundaryKind.DIRICHLET}

    def test_equilateral(self):
        graph = build_line(parse_word('abbab'))
        assert graph.is_equilateral()
        assert graph.edge_length() == 1.0


class TestCircle:
    def test_alpha_4(self):
        graph = build_circle(uniform_word(Letter.ALPHA, 4))
        assert (graph.num_vertices, graph.num_edges, graph.num_channels) == (8, 8, 2)
        assert chain_degrees(graph, 4) == [4, 4, 3, 3]

    def test_beta_3(self):
        graph = build_circle(parse_word('bbb'))
        assert (graph.num_vertices, graph.num_edges) == (9, 9)
        assert chain_degrees(graph, 3) == [5, 5, 4]

    def test_leads_on_ring_neighbors(self):
        graph = build_circle(parse_word('abab'))
        assert graph.lead_vertex(1) in graph.neighbors(graph.lead_vertex(0))

    @pytest.mark.parametrize('builder', [build_circle, build_circle2, build_circle2_reduced])
    def test_too_short(self, builder):
        with pytest.raises(WordTooShortError):
            builder(parse_word('aa'))


class TestCircle2:
    def test_alpha_4(self):
        graph = build_circle2(uniform_word(Letter.ALPHA, 4))
        assert chain_degrees(graph, 4) == [3, 3, 3, 3]
        lead_vertices = [graph.lead_vertex(c) for c in range(2)]
        assert [graph.degree(v) for v in lead_vertices] == [2, 2]
        assert graph.neighbors(lead_vertices[0]) == (0,)
        assert graph.neighbors(lead_vertices[1]) == (1,)

    def test_beta_3(self):
        graph = build_circle2(parse_word('bbb'))
        assert chain_degrees(graph, 3) == [4, 4, 4]
        assert sorted(graph.degrees()[3:]) == [1, 1, 1, 1, 2, 2]

    def test_lead_pendants_stay_neumann(self):
        graph = build_circle2(parse_word('aba'), BoundaryKind.DIRICHLET)
        for channel in range(2):
            assert graph.boundary[graph.lead_vertex(channel)] is BoundaryKind.NEUMANN

    def test_reduced_degrees(self):
        literal = build_circle2(parse_word('abba'))
        reduced = build_circle2_reduced(parse_word('abba'))
        assert reduced.num_vertices == literal.num_vertices - 2
        assert chain_degrees(reduced, 4) == chain_degrees(literal, 4)

    @pytest.mark.parametrize('word', ['aaa', 'abb', 'bbba', 'abaab'])
    def test_reduced_probabilities_match(self, word):
        literal = ScatteringSolver(build_circle2(parse_word(word)))
        reduced = ScatteringSolver(build_circle2_reduced(parse_word(word)))
        for k in np.linspace(0.021, 2 * np.pi - 0.021, 100):
            s_literal, _ = literal.evaluate(k)
            s_reduced, _ = reduced.evaluate(k)
            for entrance in range(2):
                p_literal = channel_probabilities(s_literal, entrance).entries
                p_reduced = channel_probabilities(s_reduced, entrance).entries
                assert np.max(np.abs(p_literal - p_reduced)) < 1e-10


class TestChains:
    @pytest.mark.parametrize('n, vertices, edges', [(1, 4, 5), (2, 8, 11), (3, 12, 17)])
    def test_gamma_counts(self, n, vertices, edges):
        graph = build_gamma_chain(n)
        assert (graph.num_vertices, graph.num_edges, graph.num_channels) == (vertices, edges, 2)
        assert set(graph.degrees()) == {3}

    @pytest.mark.parametrize('n, vertices, edges', [(1, 5, 9), (2, 10, 19), (3, 15, 29)])
    def test_delta_counts(self, n, vertices, edges):
        graph = build_delta_chain(n)
        assert (graph.num_vertices, graph.num_edges, graph.num_channels) == (vertices, edges, 2)
        assert set(graph.degrees()) == {4}

    @pytest.mark.parametrize('n', [1, 2, 3, 6])
    def test_square_stripe(self, n):
        graph = build_square_stripe(n)
        assert graph.num_vertices == 2 * n + 4
        # 2n rail edges, n + 1 rungs, 4 cap edges
        assert graph.num_edges == 2 * n + (n + 1) + 4
        assert set(graph.degrees()) == {3}

    @pytest.mark.parametrize('n', [1, 2, 3, 6])
    def test_prism_tube(self, n):
        graph = build_prism_tube(n)
        assert graph.num_vertices == 3 * n + 5
        assert graph.num_edges == 3 * (n + 1) + 3 * n + 6
        assert set(graph.degrees()) == {4}

    def test_known_sizes(self):
        assert build_square_stripe(3).num_edges == 14
        assert build_square_stripe(1).num_edges == 8
        assert build_prism_tube(1).num_edges == 15
        assert build_prism_tube(3).num_edges == 27

    @pytest.mark.parametrize('builder', [build_gamma_chain, build_delta_chain, build_square_stripe, build_prism_tube])
    def test_rejects_zero(self, builder):
        with pytest.raises(ValidationError):
            builder(0)


class TestBuildFamily:
    def test_word_family(self):
        spec = FamilySpec(FamilyKind.CIRCLE, word=parse_word('abb'))
        assert spec.label == 'abb'
        assert build_family(spec) == build_circle(parse_word('abb'))

    def test_count_family(self):
        spec = FamilySpec(FamilyKind.PRISMS, n=2)
        assert spec.label == '2'
        assert build_family(spec) == build_prism_tube(2)

    def test_dead_end_passed_through(self):
        spec = FamilySpec(FamilyKind.LINE, word=parse_word('a'), dead_end=BoundaryKind.DIRICHLET)
        assert build_family(spec).boundary == (BoundaryKind.NEUMANN, BoundaryKind.DIRICHLET)

    def test_missing_parameter(self):
        with pytest.raises(ValidationError):
            FamilySpec(FamilyKind.LINE, n=3)
        with pytest.raises(ValidationError):
            FamilySpec(FamilyKind.GAMMA, word=parse_word('a'))

    @pytest.mark.parametrize('kind', list(FamilyKind))
    def test_uses_word(self, kind):
        assert kind.uses_word == (kind.value in ('line', 'circle', 'circle2'))
