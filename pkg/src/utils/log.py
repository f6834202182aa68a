"""Console logging setup for the command line front end."""

import logging

import colorlog
from colorlog import ColoredFormatter

ROOT_LOGGER = 'qgase'

LOG_COLORS = {
    'DEBUG': 'purple',
    'INFO': 'green',
    'WARNING': 'yellow',
    'ERROR': 'red',
    'CRITICAL': 'red,bg_white',
}


def setup_logging(verbosity: int = 0) -> logging.Logger:
    """
    Install a coloured stderr handler.

    Library modules log under their own module names; the handler is placed on
    the root logger so those records reach the console. Calling this twice
    replaces the handler instead of stacking a second one.

    Args:
        verbosity: 0 → WARNING, 1 → INFO, 2 or more → DEBUG

    Returns:
        The application logger
    """
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = logging.WARNING

    handler = colorlog.StreamHandler()
    handler.setFormatter(ColoredFormatter(
        '%(log_color)s%(levelname)-8s%(reset)s %(blue)s%(name)-24s%(reset)s | %(message)s',
        reset=True,
        log_colors=LOG_COLORS,
        style='%'
    ))
    handler.set_name(ROOT_LOGGER)

    root = logging.getLogger()
    for existing in list(root.handlers):
        if existing.get_name() == ROOT_LOGGER:
            root.removeHandler(existing)
    root.addHandler(handler)
    root.setLevel(level)

    return logging.getLogger(ROOT_LOGGER)
