"""Ensemble runner: random words -> family graphs -> ASE -> mean and spread."""

import logging
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from entropy import QuadratureConfig, average_scattering_entropy
from families import FamilyKind, FamilySpec, build_family, random_word
from utils.config import resolve_workers
from utils.errors import EnsembleSampleError, QgaseError, ValidationError
from utils.parallel import map_ordered
from .statistics import summary_stats

logger = logging.getLogger(__name__)

WORD_FAMILIES = (FamilyKind.LINE, FamilyKind.CIRCLE, FamilyKind.CIRCLE2)


@dataclass(frozen=True)
class EnsembleSpec:
    family: FamilyKind
    sizes: tuple[int, ...]
    samples: int = 100
    seed: int = 0
    quadrature: QuadratureConfig = QuadratureConfig()
    beta_probability: float = 0.5
    workers: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, 'sizes', tuple(self.sizes))
        if self.family not in WORD_FAMILIES:
            raise ValidationError(f"Ensembles need a word family (line, circle, circle2), got '{self.family.value}'")
        if not self.sizes:
            raise ValidationError("Ensemble needs at least one size")
        if any(size < 1 for size in self.sizes):
            raise ValidationError(f"Ensemble sizes must be positive, got {list(self.sizes)}")
        if self.samples < 2:
            raise ValidationError(f"Ensemble needs at least 2 samples, got {self.samples}")
        if not 0 <= self.seed < 2 ** 64:
            raise ValidationError(f"Seed must be an unsigned 64-bit integer, got {self.seed}")


@dataclass(frozen=True)
class EnsembleStats:
    size: int
    mean: float
    std_dev: float
    values: tuple[float, ...]


def sample_stream(seed: int, size: int, index: int) -> np.random.Generator:
    """
    Independent counter-based stream for one sample.

    Depends only on (seed, size, index), so draws cannot be perturbed by
    execution order or by the total sample count.
    """
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, size, index])))


def _evaluate_single_sample(args: tuple) -> float:
    """
    Compute the ASE of one random sample (worker function for multiprocessing).

    Args:
        args: Tuple of (family, size, index, seed, beta_probability, quadrature)

    Returns:
        ASE in bits
    """
    family, size, index, seed, beta_probability, quadrature = args
    try:
        word = random_word(size, sample_stream(seed, size, index), beta_probability)
        graph = build_family(FamilySpec(family, word=word))
        return average_scattering_entropy(graph, 0, quadrature).value
    except QgaseError as e:
        raise EnsembleSampleError(size, index, str(e), e.exit_code) from e


class EnsembleRunner:
    """
    Runs random-word ensembles, one size at a time.

    Samples of a size are spread over worker processes; results are gathered
    back in sample-index order before aggregation.
    """

    def __init__(self, spec: EnsembleSpec):
        self.spec = spec
        self.num_workers = resolve_workers(spec.workers)

    def sample_values(
        self,
        size: int,
        progress_callback: Optional[Callable[[int, int, str], None]] = None
    ) -> list[float]:
        spec = self.spec
        args_list = [
            (spec.family, size, index, spec.seed, spec.beta_probability, spec.quadrature)
            for index in range(spec.samples)
        ]

        def progress(completed: int, total: int):
            if progress_callback:
                progress_callback(completed, total, f"{spec.family.value} size {size}")

        return map_ordered(_evaluate_single_sample, args_list, self.num_workers, progress)

    def run(self, progress_callback: Optional[Callable[[int, int, str], None]] = None) -> list[EnsembleStats]:
        results = []
        for size in self.spec.sizes:
            logger.info("Ensemble %s size %d: %d samples on %d workers",
                        self.spec.family.value, size, self.spec.samples, self.num_workers)
            values = self.sample_values(size, progress_callback)
            mean, std_dev = summary_stats(values)
            logger.info("Ensemble %s size %d: mean %.6f, std %.6f",
                        self.spec.family.value, size, mean, std_dev)
            results.append(EnsembleStats(size=size, mean=mean, std_dev=std_dev, values=tuple(values)))
        return results


def run_ensemble(
    spec: EnsembleSpec,
    progress_callback: Optional[Callable[[int, int, str], None]] = None
) -> list[EnsembleStats]:
    """
    Mean and sample standard deviation of the ASE for every size in ``spec``.

    Args:
        spec: Ensemble description
        progress_callback: Optional callback(current, total, label)

    Returns:
        One EnsembleStats per size, in spec order

    Raises:
        EnsembleSampleError: A sample failed; carries its size and index
    """
    return EnsembleRunner(spec).run(progress_callback)
