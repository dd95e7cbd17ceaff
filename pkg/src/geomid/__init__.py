"""Concentration-based intrinsic dimension, per-feature NID and NID-driven feature selection."""
from geomid.approx import (
    default_support_sequence,
    delta_bounds,
    id_auto,
    id_bounds,
)
from geomid.core import (
    DatasetMatrix,
    IdEstimate,
    PhiProfile,
    delta_exact,
    id_exact,
    phi_profile,
)
from geomid.features import (
    FeatureScore,
    NidCurve,
    nid_curve,
    score_features,
    score_features_approx,
    score_features_exact,
)
from geomid.selection import (
    SelectionPlan,
    apply_selection,
    plan_selection,
    remaining_share,
)

__version__ = "0.1.0"
