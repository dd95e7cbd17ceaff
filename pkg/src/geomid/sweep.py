"""Discard sweeps over a grid of fractions, policies and seeds.

Features are scored once; each ``(policy, alpha, seed)`` cell then plans a
selection, records the remaining share of normalized discriminability and,
optionally, the accuracy of a nearest-centroid classifier trained on the
even rows and tested on the odd rows of the reduced matrix.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from geomid.core import DatasetMatrix, MatrixLike, as_matrix
from geomid.features import FeatureScore, score_features
from geomid.rng import SplitMix64, partial_shuffle
from geomid.selection import POLICIES, plan_selection, remaining_share

DEFAULT_GRID = "0.01:0.10:0.01,0.1:0.9:0.1"
SWEEP_FIELDS = ("policy", "alpha", "seed", "kept", "remaining_share", "accuracy")
_GRID_TOL = 1e-12


def parse_grid(spec: str) -> List[float]:
    """Parse ``start:stop:step`` segments (or bare values) joined by commas.

    Endpoints are inclusive within 1e-12; values are rounded to 12 decimals
    and deduplicated.
    """
    values = set()
    for seg in spec.split(","):
        seg = seg.strip()
        if not seg:
            raise ValueError(f"empty segment in grid {spec!r}")
        parts = seg.split(":")
        try:
            nums = [float(p) for p in parts]
        except ValueError:
            raise ValueError(f"bad grid segment {seg!r}") from None
        if len(nums) == 1:
            pts = nums
        elif len(nums) == 3:
            start, stop, step = nums
            if not step > 0 or stop < start - _GRID_TOL:
                raise ValueError(f"bad grid segment {seg!r}")
            count = math.floor((stop - start) / step + _GRID_TOL) + 1
            pts = [start + i * step for i in range(count)]
        else:
            raise ValueError(f"bad grid segment {seg!r}")
        for p in pts:
            p = round(p, 12)
            if not 0.0 <= p < 1.0:
                raise ValueError(f"grid value {p} outside [0, 1)")
            values.add(p)
    return sorted(values)


@dataclass(frozen=True)
class SweepRow:
    policy: str
    alpha: float
    seed: int
    kept: int
    remaining_share: float
    accuracy: Optional[float] = None


@dataclass(frozen=True)
class SweepResult:
    rows: List[SweepRow]

    def records(self) -> List[dict]:
        return [
            {
                "policy": r.policy,
                "alpha": repr(r.alpha),
                "seed": r.seed,
                "kept": r.kept,
                "remaining_share": r.remaining_share,
                "accuracy": r.accuracy,
            }
            for r in self.rows
        ]

    def select(self, policy: str, alpha: float, seed: Optional[int] = None) -> List[SweepRow]:
        return [
            r for r in self.rows
            if r.policy == policy and abs(r.alpha - alpha) <= _GRID_TOL
            and (seed is None or r.seed == seed)
        ]


def generate_synthetic(n: int, d_signal: int, d_noise: int, seed: int = 0):
    """Two balanced classes; signal columns separate them, noise columns barely vary.

    Signal values are ``4.0 * label + N(0, 1)``; noise values are
    ``0.01 * N(0, 1)``, so noise columns are concentrated (high NID) and carry
    no label information.  Returns ``(DatasetMatrix, labels)``.
    """
    if n < 4 or n % 2:
        raise ValueError(f"n must be an even number >= 4, got {n}")
    if d_signal < 1 or d_noise < 1:
        raise ValueError("need at least one signal and one noise column")
    rng = SplitMix64(seed)
    labels = np.array([0] * (n // 2) + [1] * (n // 2))
    labels = labels[partial_shuffle(n, n, rng)]
    d = d_signal + d_noise
    values = np.empty((n, d))
    for i in range(n):
        for j in range(d_signal):
            values[i, j] = 4.0 * labels[i] + rng.gauss()
        for j in range(d_signal, d):
            values[i, j] = 0.01 * rng.gauss()
    names = tuple(f"signal{j}" for j in range(d_signal)) + tuple(
        f"noise{j}" for j in range(d_noise)
    )
    return DatasetMatrix(values, names), labels


def nearest_centroid_accuracy(values: np.ndarray, labels: np.ndarray) -> float:
    """Train on even rows, test on odd rows; ties go to the smaller class label."""
    values = np.asarray(values, dtype=np.float64)
    labels = np.asarray(labels)
    x_train, y_train = values[0::2], labels[0::2]
    x_test, y_test = values[1::2], labels[1::2]
    if x_test.shape[0] == 0:
        raise ValueError("need at least two rows to split")
    classes = np.unique(y_train)
    centroids = np.stack([x_train[y_train == c].mean(axis=0) for c in classes])
    dist = ((x_test[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
    pred = classes[np.argmin(dist, axis=1)]
    return float(np.count_nonzero(pred == y_test)) / y_test.shape[0]


def run_sweep(
    data: MatrixLike,
    grid: Sequence[float],
    policies: Sequence[str] = POLICIES,
    seeds: Sequence[int] = (0,),
    evaluate: bool = False,
    labels: Optional[np.ndarray] = None,
    scores: Optional[Sequence[FeatureScore]] = None,
    measure: str = "discriminability",
    threads: int = 1,
    **score_kwargs,
) -> SweepResult:
    """Evaluate every ``(policy, alpha, seed)`` cell; ``alpha = 0`` is always included."""
    m = as_matrix(data)
    if not policies:
        raise ValueError("need at least one policy")
    for p in policies:
        if p not in POLICIES:
            raise ValueError(f"unknown policy {p!r}")
    alphas = sorted({0.0, *(float(a) for a in grid)})
    for a in alphas:
        if not 0.0 <= a < 1.0:
            raise ValueError(f"grid value {a} outside [0, 1)")
    if evaluate:
        if labels is None:
            raise ValueError("evaluation requires a labels column")
        labels = np.asarray(labels)
        if labels.shape != (m.n,):
            raise ValueError(f"{labels.shape[0]} labels for {m.n} rows")
    if scores is None:
        scores = score_features(m, **score_kwargs)

    cells = sorted((p, a, int(s)) for p in set(policies) for a in alphas for s in set(seeds))

    def run(cell):
        policy, alpha, seed = cell
        plan = plan_selection(scores, policy, alpha, seed)
        share = remaining_share(scores, plan, measure)
        acc = nearest_centroid_accuracy(m.values[:, plan.kept], labels) if evaluate else None
        return SweepRow(policy, alpha, seed, len(plan.kept), share, acc)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(run, cells))
    else:
        rows = [run(c) for c in cells]
    return SweepResult(rows)
