import logging
import os
import time
from contextlib import contextmanager

logger = logging.getLogger(__name__)

DIAGNOSTICS_ENV = "ASPCONF_DIAGNOSTICS"


def diagnostics_level(default=logging.WARNING):
    """
    The log level named by ``ASPCONF_DIAGNOSTICS``, or ``default`` when it
    is unset or not a level name.
    """
    name = os.environ.get(DIAGNOSTICS_ENV, "").strip().upper()
    level = logging.getLevelName(name) if name else default
    return level if isinstance(level, int) else default


@contextmanager
def timed(stage, log=None):
    """Log the wall time of the enclosed block at INFO."""
    start = time.time()
    try:
        yield
    finally:
        (log or logger).info("{0} took {1:.2g}s".format(stage, time.time() - start))
