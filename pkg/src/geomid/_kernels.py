"""Hot loops: windowed minimum spread over sorted columns.

Two interchangeable backends compute the same table.  The numba backend is
used when numba imports and ``GEOMID_DISABLE_NUMBA`` is unset (or ``0``);
otherwise everything runs through plain numpy.  Every table entry is a
``min`` of exact differences, so both backends return bit-identical output
for any thread count.
"""
from __future__ import annotations

import os

import numpy as np

_FLAG = "GEOMID_DISABLE_NUMBA"

try:
    import numba as nb
except ImportError:  # pragma: no cover - numba is a declared dependency
    nb = None

USE_NUMBA = nb is not None and os.environ.get(_FLAG, "0") in ("", "0")

if nb is not None and "NUMBA_THREADING_LAYER" not in os.environ:
    # omp tolerates launches from several Python threads; old TBB builds only warn
    nb.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]

# Caps the temporary table at ~32 MiB regardless of d.
_CHUNK_ELEMS = 1 << 22


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"


def set_threads(n: int | None) -> int:
    """Cap worker threads for the numba backend; returns the effective count."""
    if not USE_NUMBA:
        return 1
    limit = nb.config.NUMBA_NUM_THREADS
    n = limit if n is None else max(1, min(int(n), limit))
    nb.set_num_threads(n)
    return n


def sorted_columns(values: np.ndarray) -> np.ndarray:
    """Return a (d, n) C-contiguous array with each column sorted ascending."""
    return np.ascontiguousarray(np.sort(values.T, axis=1))


def phi_at_sizes_numpy(cols: np.ndarray, sizes: np.ndarray) -> np.ndarray:
    d, n = cols.shape
    out = np.empty((sizes.size, d))
    for t, k in enumerate(sizes):
        w = int(k) - 1
        out[t] = (cols[:, w:] - cols[:, : n - w]).min(axis=1)
    return out


if nb is not None:

    # Inputs are validated finite; these flags only let LLVM keep the
    # comparisons branch-free.  min is exact in any order.
    _MIN_FLAGS = {"nnan", "ninf", "nsz"}

    @nb.njit(parallel=True, cache=True, nogil=True, fastmath=_MIN_FLAGS)
    def _phi_at_sizes_nb(cols, sizes):
        d, n = cols.shape
        m = sizes.size
        out = np.empty((m, d))
        for q in nb.prange(m * d):
            j = q // m
            t = q % m
            w = sizes[t] - 1
            v = cols[j]
            stop = n - w
            # four independent chains hide the compare latency
            b0 = b1 = b2 = b3 = np.inf
            i = 0
            while i + 4 <= stop:
                x0 = v[i + w] - v[i]
                x1 = v[i + 1 + w] - v[i + 1]
                x2 = v[i + 2 + w] - v[i + 2]
                x3 = v[i + 3 + w] - v[i + 3]
                b0 = x0 if x0 < b0 else b0
                b1 = x1 if x1 < b1 else b1
                b2 = x2 if x2 < b2 else b2
                b3 = x3 if x3 < b3 else b3
                i += 4
            while i < stop:
                x0 = v[i + w] - v[i]
                b0 = x0 if x0 < b0 else b0
                i += 1
            out[t, j] = min(min(b0, b1), min(b2, b3))
        return out


def phi_at_sizes_numba(cols: np.ndarray, sizes: np.ndarray) -> np.ndarray:
    if nb is None:  # pragma: no cover
        raise RuntimeError("numba is not installed")
    return _phi_at_sizes_nb(cols, sizes)


def phi_at_sizes(cols: np.ndarray, sizes: np.ndarray) -> np.ndarray:
    """Minimum spread of any ``k`` consecutive sorted values, per column.

    ``out[t, j] = min_i cols[j, i + k - 1] - cols[j, i]`` with ``k = sizes[t]``.
    """
    sizes = np.ascontiguousarray(sizes, dtype=np.int64)
    if USE_NUMBA:
        return phi_at_sizes_numba(cols, sizes)
    return phi_at_sizes_numpy(cols, sizes)


def iter_phi_chunks(cols: np.ndarray, sizes: np.ndarray):
    """Yield ``(lo, hi, table)`` blocks of :func:`phi_at_sizes` in ascending order."""
    d = cols.shape[0]
    step = max(1, _CHUNK_ELEMS // max(d, 1))
    for lo in range(0, sizes.size, step):
        hi = min(lo + step, sizes.size)
        yield lo, hi, phi_at_sizes(cols, sizes[lo:hi])


def ordered_sum(acc, terms: np.ndarray):
    """Add rows of ``terms`` onto ``acc`` strictly in row order.

    ``acc`` is a scalar (1-D terms) or a per-column vector (2-D terms).  The
    result equals ``(((acc + t0) + t1) + ...)`` elementwise, independent of
    vectorisation, which keeps sums reproducible across backends and chunkings.
    """
    terms = np.asarray(terms, dtype=np.float64)
    if terms.shape[0] == 0:
        return acc
    stacked = np.concatenate([np.asarray(acc, dtype=np.float64)[None, ...], terms])
    return np.cumsum(stacked, axis=0)[-1]
