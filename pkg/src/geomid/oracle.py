"""Brute-force reference values by exhaustive subset enumeration.

Exponential in the number of points; guarded by hard size limits.  Nothing
here sorts or windows, so it checks the fast path independently.
"""
from __future__ import annotations

from itertools import combinations
from typing import List, Sequence

from geomid.core import MatrixLike, as_matrix, inverse_square
from geomid.features import FeatureScore

MAX_VALUES = 20
MAX_ROWS = 12
MAX_COLS = 6


def brute_phi(values: Sequence[float], k: int) -> float:
    """Smallest largest pairwise gap over all ``k``-subsets of ``values``."""
    vals = [float(v) for v in values]
    n = len(vals)
    if n > MAX_VALUES:
        raise ValueError(f"brute_phi is limited to {MAX_VALUES} values, got {n}")
    if not 2 <= k <= n:
        raise ValueError(f"need 2 <= k <= n, got k={k}, n={n}")
    best = None
    for subset in combinations(vals, k):
        # the widest pair of a subset is its max and min
        spread = max(subset) - min(subset)
        if best is None or spread < best:
            best = spread
    return best


def _guard(data: MatrixLike, max_cols: int | None):
    m = as_matrix(data)
    if m.n > MAX_ROWS or (max_cols is not None and m.d > max_cols):
        raise ValueError(
            f"oracle limited to {MAX_ROWS} rows"
            + (f" and {max_cols} columns" if max_cols else "")
            + f", got {m.n}x{m.d}"
        )
    if m.n < 2:
        raise ValueError(f"need at least 2 data points, got {m.n}")
    return m


def brute_profiles(data: MatrixLike) -> List[List[float]]:
    """``out[j][k - 2]`` = brute-force spread of column ``j`` at size ``k``."""
    m = _guard(data, None)
    return [[brute_phi(m.values[:, j], k) for k in range(2, m.n + 1)] for j in range(m.d)]


def brute_delta(data: MatrixLike) -> float:
    m = _guard(data, MAX_COLS)
    profiles = brute_profiles(m)
    acc = 0.0
    for k in range(2, m.n + 1):
        acc += max(p[k - 2] for p in profiles)
    return acc / m.n


def brute_id(data: MatrixLike) -> float:
    return inverse_square(brute_delta(data))


def brute_feature_scores(data: MatrixLike) -> List[FeatureScore]:
    m = _guard(data, None)
    out = []
    for j, prof in enumerate(brute_profiles(m)):
        plain = 0.0
        norm = 0.0
        for k in range(2, m.n + 1):
            plain += prof[k - 2]
            norm += prof[k - 2] / k
        plain /= m.n
        norm /= m.n
        out.append(FeatureScore(j, plain, norm, inverse_square(norm)))
    return out
