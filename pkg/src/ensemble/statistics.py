"""Summary statistics for ensemble samples."""

from typing import Sequence

import numpy as np

from utils.errors import TooFewSamplesError


def summary_stats(values: Sequence[float]) -> tuple[float, float]:
    """
    Arithmetic mean and sample standard deviation.

    std = sqrt(sum (x_i - mean)^2 / (n - 1)); sums run in index order so the
    result depends only on the values, never on how they were computed.

    Args:
        values: At least two samples

    Returns:
        (mean, std_dev)

    Raises:
        TooFewSamplesError: Fewer than two values
    """
    values = np.asarray(values, dtype=np.float64)
    if values.size < 2:
        raise TooFewSamplesError(f"Need at least 2 samples for a standard deviation, got {values.size}")

    mean = float(np.mean(values))
    std_dev = float(np.std(values, ddof=1))
    return mean, std_dev
