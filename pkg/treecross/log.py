# treecross/log.py
import logging

from rich.console import Console
from rich.logging import RichHandler

LOGGER_NAME = "treecross"


def setup_logging(verbose=False, quiet=False):
    """Route the package logger to stderr through rich.

    Reports are written to stdout or files only, so nothing here can change
    the bytes of an emitted report.
    """
    level = logging.WARNING
    if verbose:
        level = logging.DEBUG
    if quiet:
        level = logging.ERROR

    logger = logging.getLogger(LOGGER_NAME)
    logger.setLevel(level)
    if not any(isinstance(h, RichHandler) for h in logger.handlers):
        handler = RichHandler(console=Console(stderr=True), show_path=False, rich_tracebacks=True)
        handler.setFormatter(logging.Formatter("%(message)s"))
        logger.addHandler(handler)
    logger.propagate = False
    return logger
