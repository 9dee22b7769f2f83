"""Deterministic, splittable random streams for Monte Carlo runs.

Each realization ``j`` of a run with seed ``s`` gets its own counter-based
Philox stream keyed by (s, j), so sample ``i`` of realization ``j`` depends
only on (s, j, i) -- results are bit-reproducible regardless of how
realizations are distributed over worker threads.

Standard normals are produced by the inverse-CDF transform: the top 53 bits
of each 64-bit Philox word give a uniform in (0, 1) (offset by half an ulp
so the endpoints are never hit), mapped through ``scipy.special.ndtri``.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy.special import ndtri

from .errors import DomainError

_CHUNK = 1024


def _validate_seed(seed) -> int:
    seed = int(seed)
    if not 0 <= seed < 2**64:
        raise DomainError(f"seed must be in [0, 2^64), got {seed}")
    return seed


def realization_normals(seed, index: int, count: int) -> np.ndarray:
    """``count`` standard normals for realization ``index`` of stream ``seed``."""
    key = [np.uint64(_validate_seed(seed)), np.uint64(index)]
    raw = np.random.Philox(key=key).random_raw(count)
    uniform = (np.right_shift(raw, np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53
    return ndtri(uniform)


def worker_count() -> int:
    """Worker-thread bound: QCHAN_THREADS if set, else hardware parallelism."""
    env = os.environ.get("QCHAN_THREADS")
    if env is not None:
        try:
            n = int(env)
        except ValueError as exc:
            raise DomainError(f"QCHAN_THREADS must be an integer, got {env!r}") from exc
        if n < 1:
            raise DomainError(f"QCHAN_THREADS must be >= 1, got {n}")
        return n
    return os.cpu_count() or 1


def accumulate_chunks(n: int, chunk_fn, workers=None):
    """Evaluate ``chunk_fn(start, stop)`` over [0, n) in fixed-size chunks and
    return the per-chunk results in chunk order.

    The chunk decomposition and combination order are independent of the
    worker count, so reductions over the results are deterministic.
    """
    bounds = [(start, min(start + _CHUNK, n)) for start in range(0, n, _CHUNK)]
    workers = worker_count() if workers is None else max(1, int(workers))
    if workers == 1 or len(bounds) == 1:
        return [chunk_fn(a, b) for a, b in bounds]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda ab: chunk_fn(*ab), bounds))
