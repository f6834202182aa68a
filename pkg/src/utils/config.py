"""User configuration file and worker-count resolution."""

import json
import logging
import os
from multiprocessing import cpu_count
from pathlib import Path
from typing import Optional

logger = logging.getLogger(__name__)

# Config file location
CONFIG_DIR = Path.home() / ".qgase"
CONFIG_FILE = CONFIG_DIR / "config.json"

THREADS_ENV = "QGASE_THREADS"

KNOWN_KEYS = {'tolerance', 'initial_panels', 'nodes_per_panel', 'max_doublings', 'max_panels', 'workers'}


def load_user_config(path: Optional[Path] = None) -> dict:
    """
    Load saved defaults from disk.

    Unreadable or malformed files are ignored and unknown keys dropped, so a
    broken config file never blocks a computation.

    Args:
        path: Config file (default: ~/.qgase/config.json)

    Returns:
        Dict with any of 'tolerance', 'initial_panels', 'nodes_per_panel',
        'max_doublings', 'max_panels', 'workers'
    """
    path = Path(path) if path is not None else CONFIG_FILE
    try:
        if path.exists():
            with open(path, 'r') as f:
                data = json.load(f)
            if isinstance(data, dict):
                return {key: value for key, value in data.items() if key in KNOWN_KEYS}
            logger.warning("Ignoring config file %s: top level is not an object", path)
    except (OSError, ValueError) as e:
        logger.warning("Ignoring config file %s: %s", path, e)
    return {}


def resolve_workers(requested: Optional[int] = None) -> int:
    """
    Number of worker processes to use.

    Defaults to max cores - 2, never fewer than one. An explicit request and
    the QGASE_THREADS environment variable both act as caps.

    Args:
        requested: Explicit worker count (e.g. from --workers)

    Returns:
        Worker count >= 1
    """
    total = cpu_count()
    workers = requested if requested is not None else max(1, total - 2)

    env_value = os.environ.get(THREADS_ENV)
    if env_value:
        try:
            workers = min(workers, int(env_value))
        except ValueError:
            logger.warning("Ignoring %s=%r: not an integer", THREADS_ENV, env_value)

    return max(1, min(total, workers))
