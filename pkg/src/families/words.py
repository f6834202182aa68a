"""Words over the alphabet {alpha, beta}."""

from dataclasses import dataclass
from enum import Enum
from typing import Iterable

import numpy as np

from utils.errors import EmptyWordError, ValidationError


class Letter(Enum):
    """alpha: chain vertex with one dead end (degree 3); beta: two dead ends (degree 4)."""

    ALPHA = 'a'
    BETA = 'b'

    @property
    def pendants(self) -> int:
        return 1 if self is Letter.ALPHA else 2


# Fibonacci substitution rule
SUBSTITUTION = {
    Letter.ALPHA: (Letter.ALPHA, Letter.BETA),
    Letter.BETA: (Letter.ALPHA,),
}


@dataclass(frozen=True)
class Word:
    letters: tuple[Letter, ...]

    def __post_init__(self):
        if not self.letters:
            raise EmptyWordError("Word must contain at least one letter")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, index: int) -> Letter:
        return self.letters[index]

    def __str__(self) -> str:
        return ''.join(letter.value for letter in self.letters)

    @classmethod
    def of(cls, letters: Iterable[Letter]) -> 'Word':
        return cls(tuple(letters))


def parse_word(text: str) -> Word:
    """
    Parse a word written over {a, b}, e.g. "abba".

    Raises:
        EmptyWordError: Empty text
        ValidationError: Characters other than a/b
    """
    text = text.strip().lower()
    if not text:
        raise EmptyWordError("Word must contain at least one letter")
    try:
        return Word(tuple(Letter(ch) for ch in text))
    except ValueError:
        bad = sorted(set(text) - {'a', 'b'})
        raise ValidationError(f"Word {text!r} contains letters {bad} outside {{a, b}}") from None


def uniform_word(letter: Letter, n: int) -> Word:
    """alpha_n or beta_n: ``n`` copies of one letter."""
    if n < 1:
        raise EmptyWordError(f"Word length must be at least 1, got {n}")
    return Word((letter,) * n)


def fibonacci_word(generation: int) -> Word:
    """
    Fibonacci word w_m: w_1 = alpha, w_{m+1} = (alpha -> alpha beta, beta -> alpha)(w_m).

    len(w_m) is the m-th distinct Fibonacci number: 1, 2, 3, 5, 8, ...
    """
    if generation < 1:
        raise ValidationError(f"Fibonacci generation must be at least 1, got {generation}")
    letters = (Letter.ALPHA,)
    for _ in range(generation - 1):
        letters = tuple(out for letter in letters for out in SUBSTITUTION[letter])
    return Word(letters)


def random_word(length: int, stream: np.random.Generator, beta_probability: float = 0.5) -> Word:
    """
    Independent letters drawn from ``stream``; beta with probability ``beta_probability``.

    Args:
        length: Number of letters
        stream: Seeded generator; the same state gives the same word
        beta_probability: Chance of beta per letter (default 1/2)
    """
    if length < 1:
        raise EmptyWordError(f"Word length must be at least 1, got {length}")
    if not 0.0 <= beta_probability <= 1.0:
        raise ValidationError(f"beta_probability must lie in [0, 1], got {beta_probability}")
    draws = stream.random(length)
    return Word(tuple(Letter.BETA if x < beta_probability else Letter.ALPHA for x in draws))
