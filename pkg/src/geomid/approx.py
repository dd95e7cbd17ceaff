"""Support-sequence brackets for the intrinsic dimension of large data sets.

Only subset sizes on a sparse increasing sequence ``2 = s_1 < ... < s_l = n``
are evaluated.  Every skipped size ``s_i < k < s_{i+1}`` is charged with the
neighbouring value ``phi[s_i]`` (lower bound) or ``phi[s_{i+1}]`` (upper
bound), which is valid because ``phi[k]`` is nondecreasing in ``k``.
"""
from __future__ import annotations

import numpy as np

from geomid import _kernels
from geomid.core import (
    EXACT,
    SUPPORT,
    IdEstimate,
    MatrixLike,
    _require_points,
    _sum_phi_max,
    as_matrix,
    id_exact,
    inverse_square,
)

DEFAULT_THRESHOLD = 100_000
DEFAULT_LENGTH = 10_000


def check_support(s, n: int) -> np.ndarray:
    """Validate ``s`` as a support sequence for ``n`` points; return it as int64."""
    arr = np.asarray(s)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("support sequence must be a non-empty 1-D sequence")
    if not np.issubdtype(arr.dtype, np.integer):
        if not np.all(np.equal(np.mod(arr, 1), 0)):
            raise ValueError("support sequence entries must be integers")
    arr = arr.astype(np.int64)
    if arr[0] != 2 or arr[-1] != n:
        raise ValueError(
            f"support sequence must start at 2 and end at n={n}, got {arr[0]}..{arr[-1]}"
        )
    if np.any(np.diff(arr) <= 0):
        raise ValueError("support sequence must be strictly increasing")
    return arr


def default_support_sequence(n: int, length: int = DEFAULT_LENGTH) -> np.ndarray:
    """Geometric support sequence, dense near ``n`` and sparse near 2.

    A geometric sequence running from ``n`` down to 2 with ``length`` terms is
    mirrored through ``k -> floor(n + 2 - k)`` and deduplicated.  If ``n`` does
    not exceed ``length`` every size ``2..n`` is returned.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if length < 2:
        raise ValueError(f"support sequence length must be >= 2, got {length}")
    if n <= length:
        return np.arange(2, n + 1, dtype=np.int64)
    hat = np.geomspace(n, 2, length)
    s = np.floor(n + 2 - hat).astype(np.int64)
    s = np.clip(s, 2, n)
    # np.unique sorts; s is already nondecreasing so order is preserved
    s = np.unique(np.concatenate([[2], s, [n]]))
    return s


def gap_counts(s: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Number of skipped sizes after and before each support point."""
    gaps = np.diff(s) - 1
    after = np.concatenate([gaps, [0]]).astype(np.float64)
    before = np.concatenate([[0], gaps]).astype(np.float64)
    return after, before


def delta_bounds(data: MatrixLike, s) -> tuple[float, float]:
    """Lower and upper bound of the averaged observable diameter."""
    m = as_matrix(data)
    _require_points(m)
    s = check_support(s, m.n)
    after, before = gap_counts(s)
    cols = _kernels.sorted_columns(m.values)
    _, (lower, upper) = _sum_phi_max(cols, s, (after, before))
    return lower / m.n, upper / m.n


def id_bounds(data: MatrixLike, s) -> IdEstimate:
    lower, upper = delta_bounds(data, s)
    id_lo = inverse_square(upper)
    id_hi = inverse_square(lower)
    return IdEstimate(SUPPORT, lower, upper, id_lo, id_hi, 0.5 * (id_lo + id_hi))


def id_auto(
    data: MatrixLike,
    threshold: int = DEFAULT_THRESHOLD,
    length: int = DEFAULT_LENGTH,
) -> IdEstimate:
    """Exact below ``threshold`` points, support-sequence bracket at or above."""
    m = as_matrix(data)
    _require_points(m)
    if m.n < threshold:
        return id_exact(m)
    return id_bounds(m, default_support_sequence(m.n, length))


def estimate(data: MatrixLike, mode: str = "auto", threshold: int = DEFAULT_THRESHOLD,
             length: int = DEFAULT_LENGTH) -> IdEstimate:
    if mode == "auto":
        return id_auto(data, threshold, length)
    if mode == EXACT:
        return id_exact(data)
    if mode in ("support", SUPPORT):
        m = as_matrix(data)
        _require_points(m)
        return id_bounds(m, default_support_sequence(m.n, length))
    raise ValueError(f"unknown mode {mode!r}")
