"""Kernel backend selection and the deterministic chunked-parallel helper.

The compiled kernels are used when importable. Set ``SPECMONO_BACKEND=python``
to force the numpy fallback.
"""
import os
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache

import numpy as np

from . import _pykernels

kernels = _pykernels
if os.environ.get("SPECMONO_BACKEND", "").lower() not in ("python", "py", "numpy"):
    try:
        from . import _kernels as kernels
    except ImportError:  # pragma: no cover - depends on the build
        kernels = _pykernels

BACKEND = kernels.BACKEND

# fixed so that results never depend on the thread count
CHUNK = 1 << 12


def thread_count():
    """Worker cap from ``SPECMONO_THREADS`` (default: all cores)."""
    raw = os.environ.get("SPECMONO_THREADS", "")
    try:
        value = int(raw)
    except ValueError:
        value = 0
    return value if value > 0 else (os.cpu_count() or 1)


def map_chunks(fn, total, chunk=CHUNK):
    """Apply ``fn(lo, hi)`` over ``[0, total)`` in fixed-size chunks and return
    the results in chunk order, whatever the worker count."""
    bounds = [(lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]
    workers = min(thread_count(), len(bounds))
    if workers <= 1:
        return [fn(lo, hi) for lo, hi in bounds]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda b: fn(*b), bounds))


@lru_cache(maxsize=64)
def round_robin(n):
    """All pairs of ``range(n)`` grouped into rounds of disjoint pairs.

    Returns ``(pairs, offsets)``: round ``r`` is ``pairs[offsets[r]:offsets[r+1]]``.
    """
    m = n + (n % 2)
    players = list(range(m))
    pairs, offsets = [], [0]
    for _ in range(m - 1):
        for i in range(m // 2):
            p, q = players[i], players[m - 1 - i]
            if p < n and q < n:
                pairs.append((min(p, q), max(p, q)))
        offsets.append(len(pairs))
        players = [players[0], players[-1]] + players[1:-1]
    arr = np.array(pairs, dtype=np.int64).reshape(-1, 2)
    arr.setflags(write=False)
    off = np.array(offsets, dtype=np.int64)
    off.setflags(write=False)
    return arr, off
