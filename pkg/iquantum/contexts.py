import asyncio
import contextlib
import logging
import time

from . import log


logger = log.pkg_logger.getChild('context')


@contextlib.asynccontextmanager
async def log_unhandled_exc(logger: logging.Logger, failures: list = None):
    """Log and suppress any unhandled exception.

    This is used as the outermost layer of a concurrent check, so that an
    unexpected error becomes a logged, failed check instead of tearing down
    the whole run. If *failures* is given, a record of the error is appended
    to it.
    """
    try:
        yield
    except asyncio.CancelledError:
        raise
    except Exception as e:
        logger.error('Unexpected error', exc_info=True)
        if failures is not None:
            failures.append({'error': type(e).__name__, 'message': str(e)})


@contextlib.contextmanager
def log_duration(logger: logging.Logger, what: str):
    """Log how long the enclosed block took, at INFO level."""
    start = time.perf_counter()
    try:
        yield
    finally:
        logger.info('%s took %.2fs', what, time.perf_counter() - start)
