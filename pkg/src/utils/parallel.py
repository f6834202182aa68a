"""Order-preserving process pool map."""

import logging
from multiprocessing import Pool
from typing import Callable, Iterable, Optional, TypeVar

T = TypeVar('T')
R = TypeVar('R')

logger = logging.getLogger(__name__)


def map_ordered(
    func: Callable[[T], R],
    items: Iterable[T],
    workers: int = 1,
    progress_callback: Optional[Callable[[int, int], None]] = None
) -> list[R]:
    """
    Apply ``func`` to every item, in parallel when more than one worker is allowed.

    Results come back in input order whatever the scheduling, so callers can
    aggregate deterministically. ``func`` must be a module-level function.

    Args:
        func: Picklable worker function
        items: Work items
        workers: Number of processes (1 = run in this process)
        progress_callback: Optional callback(completed, total)

    Returns:
        List of results in the order of ``items``
    """
    items = list(items)
    total = len(items)
    results = []

    if workers > 1 and total > 1:
        logger.debug("Mapping %d items over %d processes", total, workers)
        with Pool(processes=min(workers, total)) as pool:
            # imap keeps submission order
            for result in pool.imap(func, items):
                results.append(result)
                if progress_callback:
                    progress_callback(len(results), total)
    else:
        for item in items:
            results.append(func(item))
            if progress_callback:
                progress_callback(len(results), total)

    return results
