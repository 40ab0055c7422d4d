"""Logging setup driven by the RDNLAB_LOG environment variable."""

import logging
import os

LOG_ENV_VAR = "RDNLAB_LOG"
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

_LEVELS = {
    "error": logging.ERROR,
    "info": logging.INFO,
    "debug": logging.DEBUG,
}


def resolve_level(value: str | None) -> int:
    """Map an RDNLAB_LOG value onto a logging level (unknown values -> INFO)."""
    if value is None:
        return logging.INFO
    return _LEVELS.get(value.strip().lower(), logging.INFO)


def configure_logging(level: str | None = None) -> logging.Logger:
    """Install one stream handler on the ``rdnlab`` logger."""
    logger = logging.getLogger("rdnlab")
    logger.setLevel(resolve_level(level if level is not None else os.environ.get(LOG_ENV_VAR)))
    if not logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        logger.addHandler(handler)
    logger.propagate = False
    return logger
