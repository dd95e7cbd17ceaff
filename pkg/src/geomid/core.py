"""Exact concentration-based intrinsic dimension of a finite data set.

Rows of the matrix are the data points, columns are the coordinate feature
functions and the measure is the normalized counting measure.  For a feature
``f`` and subset size ``k`` the minimax spread

    phi[k, f] = min over |M| = k of max_{x, y in M} |f(x) - f(y)|

is attained by ``k`` consecutive values of the sorted column, which turns the
subset search into a sliding window (quadratic in ``n`` for all ``k``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from geomid import _kernels

EXACT = "exact"
SUPPORT = "support-sequence"


@dataclass(frozen=True)
class DatasetMatrix:
    """Dense ``n x d`` real matrix; rows are points, columns are features."""

    values: np.ndarray
    names: Optional[tuple] = None

    def __post_init__(self):
        v = np.ascontiguousarray(self.values, dtype=np.float64)
        if v.ndim != 2:
            raise ValueError(f"expected a 2-D matrix, got shape {v.shape}")
        if v.shape[0] < 1 or v.shape[1] < 1:
            raise ValueError(f"matrix must have at least one row and one column, got {v.shape}")
        bad = np.argwhere(~np.isfinite(v))
        if bad.size:
            r, c = bad[0]
            raise ValueError(f"non-finite value {v[r, c]!r} at row {r}, column {c}")
        object.__setattr__(self, "values", v)
        if self.names is not None:
            names = tuple(str(x) for x in self.names)
            if len(names) != v.shape[1]:
                raise ValueError(f"{len(names)} column names for {v.shape[1]} columns")
            object.__setattr__(self, "names", names)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def d(self) -> int:
        return self.values.shape[1]

    def column_name(self, j: int) -> str:
        return self.names[j] if self.names is not None else f"f{j}"


MatrixLike = Union[DatasetMatrix, np.ndarray, Sequence]


def as_matrix(data: MatrixLike) -> DatasetMatrix:
    if isinstance(data, DatasetMatrix):
        return data
    arr = np.asarray(data, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr[:, None]
    return DatasetMatrix(arr)


def _require_points(m: DatasetMatrix) -> None:
    if m.n < 2:
        raise ValueError(f"need at least 2 data points, got {m.n}")


@dataclass(frozen=True)
class PhiProfile:
    """``phi[k - 2]`` is the minimax spread of feature ``feature`` at size ``k``."""

    feature: int
    phi: np.ndarray = field(repr=False)

    def at(self, k: int) -> float:
        return float(self.phi[k - 2])


@dataclass(frozen=True)
class IdEstimate:
    """Exact value or support-sequence bracket of the intrinsic dimension.

    Infinite dimensions (zero discriminability) are stored as ``math.inf``
    and reported through :attr:`infinite`; they are produced by an explicit
    branch, never by dividing by zero.
    """

    method: str
    delta_lower: float
    delta_upper: float
    id_lower: float
    id_upper: float
    id_mid: float

    @property
    def infinite(self) -> bool:
        return math.isinf(self.id_mid)

    @property
    def delta(self) -> float:
        """Midpoint of the discriminability bracket (exact value for ``exact``)."""
        return 0.5 * (self.delta_lower + self.delta_upper)


def inverse_square(delta: float) -> float:
    """``1 / delta**2`` with zero mapped to infinity."""
    if delta == 0.0:
        return math.inf
    return 1.0 / (delta * delta)


def all_sizes(n: int) -> np.ndarray:
    return np.arange(2, n + 1, dtype=np.int64)


def phi_profile(data: MatrixLike, feature: int) -> PhiProfile:
    """All minimax spreads ``phi[k, f]`` for ``k = 2..n`` of one column."""
    m = as_matrix(data)
    _require_points(m)
    if not 0 <= feature < m.d:
        raise IndexError(f"feature index {feature} out of range for {m.d} columns")
    cols = _kernels.sorted_columns(m.values[:, feature : feature + 1])
    phi = _kernels.phi_at_sizes(cols, all_sizes(m.n))[:, 0]
    return PhiProfile(feature, phi)


def _sum_phi_max(cols: np.ndarray, sizes: np.ndarray, extra: Sequence[np.ndarray]):
    """Ordered sums over ``sizes`` of ``phi_k`` and of ``phi_k * extra[i]``.

    Returns ``(plain, [weighted...])`` where ``plain = sum phi_k`` and each
    weighted entry is ``sum (phi_k + extra_k * phi_k)``.
    """
    plain = 0.0
    weighted = [0.0] * len(extra)
    for lo, hi, table in _kernels.iter_phi_chunks(cols, sizes):
        row_max = table.max(axis=1)
        plain = _kernels.ordered_sum(plain, row_max)
        for i, w in enumerate(extra):
            weighted[i] = _kernels.ordered_sum(weighted[i], row_max + w[lo:hi] * row_max)
    return float(plain), [float(x) for x in weighted]


def delta_exact(data: MatrixLike) -> float:
    """Averaged observable diameter ``(1/n) * sum_{k=2..n} max_f phi[k, f]``."""
    m = as_matrix(data)
    _require_points(m)
    cols = _kernels.sorted_columns(m.values)
    total, _ = _sum_phi_max(cols, all_sizes(m.n), ())
    return total / m.n


def id_exact(data: MatrixLike) -> IdEstimate:
    delta = delta_exact(data)
    dim = inverse_square(delta)
    return IdEstimate(EXACT, delta, delta, dim, dim, dim)
