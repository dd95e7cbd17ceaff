"""NID-driven feature discarding.

Policies:

``top``       discard the highest-NID (most concentrated) features first
``reversed``  discard the lowest-NID features first
``random``    discard a seeded uniform sample

Ties are broken by ascending feature index.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import List, Sequence

from geomid.core import DatasetMatrix, MatrixLike, as_matrix
from geomid.features import FeatureScore
from geomid.rng import sample_indices

POLICIES = ("top", "reversed", "random")

# alpha * d is rounded down after absorbing representation error of alpha
# (0.29 * 100 == 28.999999999999996 must discard 29).
_FLOOR_SLACK = 1e-9


@dataclass(frozen=True)
class SelectionPlan:
    policy: str
    fraction: float
    seed: int
    discarded: List[int]
    kept: List[int]

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, obj: dict) -> "SelectionPlan":
        return cls(
            policy=str(obj["policy"]),
            fraction=float(obj["fraction"]),
            seed=int(obj["seed"]),
            discarded=[int(i) for i in obj["discarded"]],
            kept=[int(i) for i in obj["kept"]],
        )


def discard_count(fraction: float, d: int) -> int:
    if not 0.0 <= fraction < 1.0:
        raise ValueError(f"fraction must lie in [0, 1), got {fraction}")
    return min(d, math.floor(fraction * d + _FLOOR_SLACK))


def plan_selection(
    scores: Sequence[FeatureScore],
    policy: str = "top",
    fraction: float = 0.0,
    seed: int = 0,
) -> SelectionPlan:
    d = len(scores)
    if d == 0:
        raise ValueError("no features to select from")
    m = discard_count(fraction, d)
    if m > d - 1:
        raise ValueError(f"discarding {m} of {d} features would leave none")
    if policy == "top":
        order = sorted(scores, key=lambda sc: (-sc.nid, sc.index))
        discarded = [sc.index for sc in order[:m]]
    elif policy == "reversed":
        order = sorted(scores, key=lambda sc: (sc.nid, sc.index))
        discarded = [sc.index for sc in order[:m]]
    elif policy == "random":
        indices = sorted(sc.index for sc in scores)
        discarded = [indices[i] for i in sample_indices(d, m, seed)]
    else:
        raise ValueError(f"unknown policy {policy!r}; expected one of {POLICIES}")
    gone = set(discarded)
    kept = sorted(sc.index for sc in scores if sc.index not in gone)
    return SelectionPlan(policy, float(fraction), int(seed), sorted(discarded), kept)


def apply_selection(data: MatrixLike, plan: SelectionPlan) -> DatasetMatrix:
    m = as_matrix(data)
    if not plan.kept:
        raise ValueError("plan keeps no features")
    if sorted(plan.kept + plan.discarded) != list(range(m.d)):
        raise ValueError(f"plan indices do not partition the {m.d} columns")
    names = None if m.names is None else tuple(m.names[j] for j in plan.kept)
    return DatasetMatrix(m.values[:, plan.kept], names)


def remaining_share(
    scores: Sequence[FeatureScore],
    plan: SelectionPlan,
    measure: str = "discriminability",
) -> float:
    """Share of the total (normalized) score retained by the kept features.

    ``measure="discriminability"`` sums normalized discriminability;
    ``measure="nid"`` sums NID instead and rejects infinite values.
    """
    if measure == "discriminability":
        vals = {sc.index: sc.delta_norm for sc in scores}
    elif measure == "nid":
        if any(sc.infinite for sc in scores):
            raise ValueError("NID share is undefined with infinite-NID features")
        vals = {sc.index: sc.nid for sc in scores}
    else:
        raise ValueError(f"unknown measure {measure!r}")
    keys = sorted(vals)
    total = _ordered(vals[i] for i in keys)
    if total <= 0.0:
        raise ValueError("all features have zero discriminability")
    kept = set(plan.kept)
    part = _ordered(vals[i] for i in keys if i in kept)
    return part / total


def _ordered(values) -> float:
    acc = 0.0
    for v in values:
        acc += v
    return acc

