"""Optional thread parallelism, capped by the GAUSSCORR_THREADS environment variable."""

import os
from concurrent.futures import ThreadPoolExecutor


def max_threads() -> int:
    try:
        return max(1, int(os.environ.get("GAUSSCORR_THREADS", "1")))
    except ValueError:
        return 1


def parallel_map(fn, items):
    """Map preserving order; uses a thread pool only when more than one thread is allowed."""
    items = list(items)
    n = max_threads()
    if n <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=min(n, len(items))) as pool:
        return list(pool.map(fn, items))
