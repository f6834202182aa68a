"""Builders for the graph families: alpha/beta words on line and circle, chains, stripes, tubes."""

from .words import Letter, Word, parse_word, uniform_word, fibonacci_word, random_word
from .builders import (
    FamilyKind,
    FamilySpec,
    build_line,
    build_circle,
    build_circle2,
    build_circle2_reduced,
    build_gamma_chain,
    build_delta_chain,
    build_square_stripe,
    build_prism_tube,
    build_family,
)

__all__ = [
    'Letter',
    'Word',
    'parse_word',
    'uniform_word',
    'fibonacci_word',
    'random_word',
    'FamilyKind',
    'FamilySpec',
    'build_line',
    'build_circle',
    'build_circle2',
    'build_circle2_reduced',
    'build_gamma_chain',
    'build_delta_chain',
    'build_square_stripe',
    'build_prism_tube',
    'build_family'
]
