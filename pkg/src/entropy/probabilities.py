"""Scattering probabilities and their Shannon entropy."""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import entr

from scattering import ScatteringMatrix
from utils.errors import InvalidChannelError, NormalizationFailureError

NORMALIZATION_TOLERANCE = 1e-8


@dataclass(frozen=True)
class ProbabilityVector:
    """Exit probabilities for one entrance channel at wave number k."""

    entries: np.ndarray
    entrance: int
    k: float

    def __len__(self) -> int:
        return len(self.entries)


def channel_probabilities(s: ScatteringMatrix, entrance: int) -> ProbabilityVector:
    """
    p_j = |sigma[j, entrance]|^2.

    Args:
        s: Scattering matrix
        entrance: Entrance channel

    Returns:
        ProbabilityVector with entries clamped into [0, 1]

    Raises:
        InvalidChannelError: entrance not a channel of s
        NormalizationFailureError: probabilities do not sum to 1 within 1e-8
    """
    if not 0 <= entrance < s.num_channels:
        raise InvalidChannelError(f"Entrance channel {entrance} out of range (matrix has {s.num_channels} channels)")

    probabilities = np.abs(s.entries[:, entrance]) ** 2
    total = float(np.sum(probabilities))
    if not abs(total - 1.0) <= NORMALIZATION_TOLERANCE:
        raise NormalizationFailureError(
            f"Probabilities for entrance {entrance} at k={s.k!r} sum to {total!r}"
        )
    probabilities = np.clip(probabilities, 0.0, 1.0)

    return ProbabilityVector(entries=probabilities, entrance=entrance, k=s.k)


def shannon_entropy(p: ProbabilityVector) -> float:
    """
    H = -sum p_j log2 p_j in bits, with 0 log 0 = 0.

    Returns:
        Entropy in [0, log2 l]
    """
    entries = np.asarray(p.entries if isinstance(p, ProbabilityVector) else p, dtype=np.float64)
    value = float(np.sum(entr(entries))) / math.log(2)
    return min(max(value, 0.0), max_entropy(len(entries)))


def max_entropy(num_channels: int) -> float:
    """Upper bound log2 l, reached when all channels are equally likely."""
    return math.log2(num_channels) if num_channels > 0 else 0.0


def probability_rows(entries: np.ndarray, entrance: int, ks: np.ndarray) -> np.ndarray:
    """
    Exit probabilities for one entrance at many wave numbers.

    Args:
        entries: Scattering matrices of shape (N, l, l)
        entrance: Entrance channel
        ks: The N wave numbers, used in error messages

    Returns:
        Array of shape (N, l), clamped into [0, 1]

    Raises:
        NormalizationFailureError: At the first wave number whose row does not sum to 1 within 1e-8
    """
    probabilities = np.abs(entries[:, :, entrance]) ** 2
    totals = probabilities.sum(axis=1)
    bad = np.flatnonzero(~(np.abs(totals - 1.0) <= NORMALIZATION_TOLERANCE))
    if len(bad):
        first = bad[0]
        raise NormalizationFailureError(
            f"Probabilities for entrance {entrance} at k={float(ks[first])!r} sum to {float(totals[first])!r}"
        )
    return np.clip(probabilities, 0.0, 1.0)


def entropy_rows(probabilities: np.ndarray) -> np.ndarray:
    """Shannon entropy in bits of each row of an (N, l) probability array."""
    probabilities = np.asarray(probabilities, dtype=np.float64)
    values = entr(probabilities).sum(axis=1) / math.log(2)
    return np.clip(values, 0.0, max_entropy(probabilities.shape[1]))
