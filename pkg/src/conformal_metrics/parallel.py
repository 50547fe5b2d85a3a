"""Worker-count plumbing.

CONFORMAL_METRICS_THREADS caps the number of workers used for per-sample
evaluation (0 or unset = automatic).  Results always come back in input
order, so parallel runs are byte-identical to sequential ones.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

__all__ = ["worker_count", "ordered_map"]


def worker_count() -> int:
    raw = os.environ.get("CONFORMAL_METRICS_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n <= 0:
        return 1  # auto: sample evaluation is CPU bound, threads don't help
    return n


def ordered_map(fn, items):
    n = worker_count()
    if n <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
