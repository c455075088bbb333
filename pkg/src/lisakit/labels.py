"""Categorical cluster labels from statistic values and significance.

Significance follows one canonical path: the observed value must fall
strictly outside the [lower, upper] permutation cutoffs.  The pseudo p-value
vs alpha comparison agrees except at exact ties, where the cutoff interval
decides; assign_local_moran falls back to the p-value test when no interval
is supplied.
"""

from __future__ import annotations

import enum

from .stats import StatKind


class ClusterLabel(enum.Enum):
    HIGH_HIGH = "high-high"
    LOW_LOW = "low-low"
    HIGH_LOW = "high-low"
    LOW_HIGH = "low-high"
    OTHER_POSITIVE = "other-positive"
    NEGATIVE_SA = "negative-sa"
    HOT_SPOT = "hot-spot"
    COLD_SPOT = "cold-spot"
    NOT_SIGNIFICANT = "not-significant"
    NO_DATA = "no-data"
    NO_NEIGHBORS = "no-neighbors"


class GlobalLabel(enum.Enum):
    POSITIVE_SA = "positive-sa"
    NEGATIVE_SA = "negative-sa"
    HIGH_CLUSTERING = "high-clustering"
    LOW_CLUSTERING = "low-clustering"
    NOT_SIGNIFICANT = "not-significant"


# Labels each method may legally emit (plus NO_DATA / NO_NEIGHBORS anywhere).
METHOD_LABELS = {
    StatKind.LOCAL_MORAN: {
        ClusterLabel.HIGH_HIGH,
        ClusterLabel.LOW_LOW,
        ClusterLabel.HIGH_LOW,
        ClusterLabel.LOW_HIGH,
        ClusterLabel.NOT_SIGNIFICANT,
    },
    StatKind.LOCAL_GEARY: {
        ClusterLabel.HIGH_HIGH,
        ClusterLabel.LOW_LOW,
        ClusterLabel.OTHER_POSITIVE,
        ClusterLabel.NEGATIVE_SA,
        ClusterLabel.NOT_SIGNIFICANT,
    },
    StatKind.GI_STAR: {
        ClusterLabel.HOT_SPOT,
        ClusterLabel.COLD_SPOT,
        ClusterLabel.NOT_SIGNIFICANT,
    },
    StatKind.GI: {
        ClusterLabel.HOT_SPOT,
        ClusterLabel.COLD_SPOT,
        ClusterLabel.NOT_SIGNIFICANT,
    },
}


def _significant(value, pseudo_p, alpha, lower, upper) -> bool:
    if lower is not None and upper is not None:
        return value < lower or value > upper
    return pseudo_p <= alpha


def assign_local_moran(
    value: float,
    pseudo_p: float,
    z_i: float,
    lag_i: float,
    alpha: float,
    lower: float | None = None,
    upper: float | None = None,
) -> ClusterLabel:
    """Quadrant labels for a significant local Moran's I.

    Positive I_i refines to high-high / low-low by the sign of the value and
    lag; negative I_i to the outlier quadrants.  Exact zero z or lag breaks
    toward the high side of the I_i-consistent pair.
    """
    if not _significant(value, pseudo_p, alpha, lower, upper):
        return ClusterLabel.NOT_SIGNIFICANT
    if value >= 0.0:
        if z_i > 0.0 and lag_i > 0.0:
            return ClusterLabel.HIGH_HIGH
        if z_i < 0.0 and lag_i < 0.0:
            return ClusterLabel.LOW_LOW
        if z_i == 0.0 or lag_i == 0.0:
            return ClusterLabel.HIGH_HIGH if z_i >= 0.0 else ClusterLabel.LOW_LOW
        raise ValueError("inconsistent quadrant: positive I_i with mixed signs")
    if z_i > 0.0 and lag_i < 0.0:
        return ClusterLabel.HIGH_LOW
    if z_i < 0.0 and lag_i > 0.0:
        return ClusterLabel.LOW_HIGH
    if z_i == 0.0 or lag_i == 0.0:
        return ClusterLabel.HIGH_LOW if z_i >= 0.0 else ClusterLabel.LOW_HIGH
    raise ValueError("inconsistent quadrant: negative I_i with aligned signs")


def assign_local_geary(
    value: float,
    pseudo_p: float,
    lower: float,
    upper: float,
    z_i: float,
    lag_i: float,
    alpha: float,
) -> ClusterLabel:
    """Local Geary: low C_i is positive spatial autocorrelation (refined by
    value/lag signs when both are strict), high C_i is negative SA."""
    if lower <= value <= upper:
        return ClusterLabel.NOT_SIGNIFICANT
    if value > upper:
        return ClusterLabel.NEGATIVE_SA
    if z_i > 0.0 and lag_i > 0.0:
        return ClusterLabel.HIGH_HIGH
    if z_i < 0.0 and lag_i < 0.0:
        return ClusterLabel.LOW_LOW
    return ClusterLabel.OTHER_POSITIVE


def assign_gi(
    value: float, pseudo_p: float, lower: float, upper: float, alpha: float
) -> ClusterLabel:
    """Gi/Gi*: significantly high values are hot-spots, low are cold-spots."""
    if value > upper:
        return ClusterLabel.HOT_SPOT
    if value < lower:
        return ClusterLabel.COLD_SPOT
    return ClusterLabel.NOT_SIGNIFICANT


def assign_global(kind: StatKind, value: float, lower: float, upper: float) -> GlobalLabel:
    """Global labels: Moran high = positive SA; Geary low = positive SA;
    General G high = clustering of high values."""
    if kind == StatKind.GLOBAL_MORAN:
        if value > upper:
            return GlobalLabel.POSITIVE_SA
        if value < lower:
            return GlobalLabel.NEGATIVE_SA
        return GlobalLabel.NOT_SIGNIFICANT
    if kind == StatKind.GLOBAL_GEARY:
        if value < lower:
            return GlobalLabel.POSITIVE_SA
        if value > upper:
            return GlobalLabel.NEGATIVE_SA
        return GlobalLabel.NOT_SIGNIFICANT
    if kind == StatKind.GENERAL_G:
        if value > upper:
            return GlobalLabel.HIGH_CLUSTERING
        if value < lower:
            return GlobalLabel.LOW_CLUSTERING
        return GlobalLabel.NOT_SIGNIFICANT
    raise ValueError(f"{kind.value} is not a global statistic")
