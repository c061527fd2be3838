"""
Concurrent utilities for tempcause.

This module provides a thread pool that runs functions in worker threads while
preserving the caller's active settings (see ``tempcause.config.override``).
"""

import contextvars
from concurrent.futures import ThreadPoolExecutor

from tempcause.config import get_settings


def get_context_runner():
    """
    Get a runner function that executes with the caller's context.

    Captures the current context variables (active settings included) so that
    functions run through the returned runner see the same configuration as
    the thread that created it.

    Returns:
        callable: A function that executes the given function in the captured context.

    Example:
        runner = get_context_runner()
        result = runner(universal_preimage_membership, system, trace, effect, rho)
    """

    # Make sure the settings are materialized before the snapshot is taken
    get_settings()
    context = contextvars.copy_context()

    def run_with_context(func, *args, **kwargs):
        return context.copy().run(func, *args, **kwargs)

    return run_with_context


class ThreadPoolExecutorWithContext:
    """
    ThreadPoolExecutor that preserves the active settings in each thread.

    Args:
        max_workers (int, optional): Maximum number of worker threads.
            If None, uses ThreadPoolExecutor default.

    Example:
        with ThreadPoolExecutorWithContext(max_workers=4) as executor:
            futures = [executor.submit(check, rho) for rho in lassos]
            verdicts = [f.result() for f in futures]
    """

    def __init__(self, max_workers=None):
        self.context_runner = get_context_runner()
        self.executor = ThreadPoolExecutor(max_workers=max_workers)

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.executor.shutdown(wait=True)

    def submit(self, fn, *args, **kwargs):
        """
        Submit a function to be executed with the preserved context.

        Returns:
            Future: A Future object representing the execution of the function.
        """
        return self.executor.submit(self.context_runner, fn, *args, **kwargs)

    def map_ordered(self, fn, iterable):
        """Run ``fn`` over ``iterable`` and return results in submission order."""
        futures = [self.submit(fn, item) for item in iterable]
        return [future.result() for future in futures]
