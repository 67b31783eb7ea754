"""Worker-pool helper for fanning out independent sweep items."""

import multiprocessing
import os


def default_jobs():
    """Worker count taken from RATPERM_JOBS, defaulting to 1 (serial)."""
    raw = os.environ.get("RATPERM_JOBS", "")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def pmap(fn, items, jobs=None):
    """Map fn over items with results in input order.

    Serial for jobs <= 1.  Parallel workers are forked processes, so fn
    must be a top-level callable and the items plain picklable data;
    field caches rebuild lazily inside each worker.
    """
    items = list(items)
    if jobs is None:
        jobs = default_jobs()
    jobs = min(jobs, len(items))
    if jobs <= 1:
        return [fn(item) for item in items]
    try:
        ctx = multiprocessing.get_context("fork")
    except ValueError:
        return [fn(item) for item in items]
    with ctx.Pool(jobs) as pool:
        return pool.map(fn, items)
