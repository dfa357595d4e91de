import os
from multiprocessing.pool import ThreadPool


def thread_cap():
    """Worker count from STRATA_THREADS (default: CPU count)."""
    raw = os.environ.get("STRATA_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        n = os.cpu_count() or 1
    return max(1, n)


def parallel_map(fn, items):
    items = list(items)
    n = min(thread_cap(), len(items))
    if n <= 1:
        return [fn(x) for x in items]
    with ThreadPool(n) as pool:
        return pool.map(fn, items)
