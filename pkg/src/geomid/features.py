"""Per-feature discriminability and normalized intrinsic dimensionality (NID).

For feature ``f``:

* discriminability ``(1/n) * sum_k phi[k, f]``,
* normalized discriminability ``(1/n) * sum_k phi[k, f] / k``,
* NID ``1 / normalized_discriminability**2``.

High NID marks a concentrated feature that separates few points.  Constant
features have zero discriminability and infinite NID.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from geomid import _kernels
from geomid.approx import (
    DEFAULT_LENGTH,
    DEFAULT_THRESHOLD,
    check_support,
    default_support_sequence,
    gap_counts,
)
from geomid.core import MatrixLike, _require_points, all_sizes, as_matrix, inverse_square


@dataclass(frozen=True)
class FeatureScore:
    index: int
    delta_star: float
    delta_norm: float
    nid: float
    approximated: bool = False
    nid_lower: Optional[float] = None
    nid_upper: Optional[float] = None
    delta_norm_lower: Optional[float] = None
    delta_norm_upper: Optional[float] = None

    @property
    def infinite(self) -> bool:
        return math.isinf(self.nid)


@dataclass(frozen=True)
class CurvePoint:
    rank: int
    rel_rank: float
    feature_index: int
    nid: float
    rel_nid: float


@dataclass(frozen=True)
class NidCurve:
    """Features sorted by ascending NID, NID divided by the largest finite NID.

    ``clamped_infinite`` counts infinite-NID features; they are plotted at 1.0.
    """

    points: List[CurvePoint]
    clamped_infinite: int = 0

    def xy(self) -> np.ndarray:
        return np.array([(p.rel_rank, p.rel_nid) for p in self.points])


def harmonic_gaps(s: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """``sum 1/j`` over the skipped sizes after / before each support point."""
    gaps = np.zeros(s.size - 1)
    for i in range(s.size - 1):
        a, b = int(s[i]) + 1, int(s[i + 1])
        if b > a:
            gaps[i] = np.cumsum(1.0 / np.arange(a, b, dtype=np.float64))[-1]
    after = np.concatenate([gaps, [0.0]])
    before = np.concatenate([[0.0], gaps])
    return after, before


def score_features_exact(data: MatrixLike) -> List[FeatureScore]:
    m = as_matrix(data)
    _require_points(m)
    cols = _kernels.sorted_columns(m.values)
    sizes = all_sizes(m.n)
    plain = np.zeros(m.d)
    norm = np.zeros(m.d)
    for lo, hi, table in _kernels.iter_phi_chunks(cols, sizes):
        k = sizes[lo:hi, None].astype(np.float64)
        plain = _kernels.ordered_sum(plain, table)
        norm = _kernels.ordered_sum(norm, table / k)
    plain /= m.n
    norm /= m.n
    return [
        FeatureScore(j, float(plain[j]), float(norm[j]), inverse_square(float(norm[j])))
        for j in range(m.d)
    ]


def score_features_approx(data: MatrixLike, s) -> List[FeatureScore]:
    """Support-sequence brackets of every feature's normalized discriminability.

    The reported ``delta_star``/``delta_norm`` are bracket midpoints and
    ``nid`` is the midpoint of the NID bracket.
    """
    m = as_matrix(data)
    _require_points(m)
    s = check_support(s, m.n)
    cnt_after, cnt_before = gap_counts(s)
    h_after, h_before = harmonic_gaps(s)
    cols = _kernels.sorted_columns(m.values)
    star_lo = np.zeros(m.d)
    star_hi = np.zeros(m.d)
    norm_lo = np.zeros(m.d)
    norm_hi = np.zeros(m.d)
    for lo, hi, table in _kernels.iter_phi_chunks(cols, s):
        k = s[lo:hi, None].astype(np.float64)
        base = table / k
        star_lo = _kernels.ordered_sum(star_lo, table + cnt_after[lo:hi, None] * table)
        star_hi = _kernels.ordered_sum(star_hi, table + cnt_before[lo:hi, None] * table)
        norm_lo = _kernels.ordered_sum(norm_lo, base + h_after[lo:hi, None] * table)
        norm_hi = _kernels.ordered_sum(norm_hi, base + h_before[lo:hi, None] * table)
    scores = []
    for j in range(m.d):
        dl, du = norm_lo[j] / m.n, norm_hi[j] / m.n
        nid_lo = inverse_square(float(du))
        nid_hi = inverse_square(float(dl))
        scores.append(
            FeatureScore(
                index=j,
                delta_star=float(0.5 * (star_lo[j] + star_hi[j]) / m.n),
                delta_norm=float(0.5 * (dl + du)),
                nid=0.5 * (nid_lo + nid_hi),
                approximated=True,
                nid_lower=nid_lo,
                nid_upper=nid_hi,
                delta_norm_lower=float(dl),
                delta_norm_upper=float(du),
            )
        )
    return scores


def score_features(
    data: MatrixLike,
    mode: str = "auto",
    threshold: int = DEFAULT_THRESHOLD,
    length: int = DEFAULT_LENGTH,
) -> List[FeatureScore]:
    """Exact scores below ``threshold`` points (``auto``), else approximated."""
    m = as_matrix(data)
    _require_points(m)
    if mode == "exact" or (mode == "auto" and m.n < threshold):
        return score_features_exact(m)
    if mode in ("auto", "support", "support-sequence"):
        return score_features_approx(m, default_support_sequence(m.n, length))
    raise ValueError(f"unknown mode {mode!r}")


def rank_ascending(scores: Sequence[FeatureScore]) -> List[int]:
    """Feature indices by ascending NID; ties by index, infinite NID last."""
    return [sc.index for sc in sorted(scores, key=lambda sc: (sc.nid, sc.index))]


def nid_curve(scores: Sequence[FeatureScore]) -> NidCurve:
    if not scores:
        raise ValueError("empty score list")
    d = len(scores)
    ordered = sorted(scores, key=lambda sc: (sc.nid, sc.index))
    finite = [sc.nid for sc in ordered if not sc.infinite]
    top = max(finite) if finite else None
    points = []
    for i, sc in enumerate(ordered, start=1):
        rel = 1.0 if sc.infinite or top is None else sc.nid / top
        points.append(CurvePoint(i, i / d, sc.index, sc.nid, rel))
    return NidCurve(points, clamped_infinite=d - len(finite))
