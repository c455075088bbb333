"""Cross-method agreement: collapse per-method labels into one color.

A location first receives a core group (high cluster, low cluster, or one of
the special cases).  For the two cluster cores the final color is pulled
from the core color toward the not-significant grey by the mean disagreement
h over all contributing labels; conflict, other-only, and no-data cases use
fixed colors.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .labels import ClusterLabel

RGB = tuple[int, int, int]


class Membership(enum.Enum):
    HIGH = "high"
    LOW = "low"
    NEUTRAL = "neutral"
    OTHER = "other"


class CoreGroup(enum.Enum):
    HIGH_CLUSTER = "high-cluster"
    LOW_CLUSTER = "low-cluster"
    MAJOR_CONFLICT = "major-conflict"
    MINOR_CONFLICT = "minor-conflict"
    OTHER_ONLY = "other-only"
    NONE_SIGNIFICANT = "none-significant"
    NO_DATA = "no-data"


@dataclass(frozen=True)
class PaletteConfig:
    """Diverging-map-inspired defaults; every hook is overridable."""

    high_cluster: RGB = (178, 24, 43)
    low_cluster: RGB = (33, 102, 172)
    not_significant: RGB = (224, 224, 224)
    major_conflict: RGB = (84, 39, 136)
    minor_conflict: RGB = (153, 112, 171)
    other_only: RGB = (254, 224, 139)
    no_data: RGB = (250, 250, 250)

    def core_color(self, core: CoreGroup) -> RGB:
        return {
            CoreGroup.HIGH_CLUSTER: self.high_cluster,
            CoreGroup.LOW_CLUSTER: self.low_cluster,
            CoreGroup.MAJOR_CONFLICT: self.major_conflict,
            CoreGroup.MINOR_CONFLICT: self.minor_conflict,
            CoreGroup.OTHER_ONLY: self.other_only,
            CoreGroup.NONE_SIGNIFICANT: self.not_significant,
            CoreGroup.NO_DATA: self.no_data,
        }[core]


DEFAULT_PALETTE = PaletteConfig()


@dataclass(frozen=True)
class AggregateAssignment:
    core: CoreGroup
    h: float
    color: RGB
    labels: tuple[ClusterLabel, ...] = field(default=())

    @property
    def hex_color(self) -> str:
        return "#%02x%02x%02x" % self.color


def high_low_membership(label: ClusterLabel) -> Membership:
    """Joint grouping: high-high/hot-spot are High, low-low/cold-spot Low,
    non-results Neutral, everything directional-but-mixed Other."""
    if label in (ClusterLabel.HIGH_HIGH, ClusterLabel.HOT_SPOT):
        return Membership.HIGH
    if label in (ClusterLabel.LOW_LOW, ClusterLabel.COLD_SPOT):
        return Membership.LOW
    if label in (
        ClusterLabel.NOT_SIGNIFICANT,
        ClusterLabel.NO_DATA,
        ClusterLabel.NO_NEIGHBORS,
    ):
        return Membership.NEUTRAL
    return Membership.OTHER


def core_group(labels: list[ClusterLabel]) -> CoreGroup:
    """Resolve the core group, conflicts first.

    A high member coexisting with low-high (or a low member with high-low)
    is the directionally consistent minor conflict.
    """
    if not labels:
        raise ValueError("empty label list")
    if all(l == ClusterLabel.NO_DATA for l in labels):
        return CoreGroup.NO_DATA
    members = [high_low_membership(l) for l in labels]
    has_high = Membership.HIGH in members
    has_low = Membership.LOW in members
    if has_high and has_low:
        return CoreGroup.MAJOR_CONFLICT
    if has_high and ClusterLabel.LOW_HIGH in labels:
        return CoreGroup.MINOR_CONFLICT
    if has_low and ClusterLabel.HIGH_LOW in labels:
        return CoreGroup.MINOR_CONFLICT
    if has_high:
        return CoreGroup.HIGH_CLUSTER
    if has_low:
        return CoreGroup.LOW_CLUSTER
    if Membership.OTHER in members:
        return CoreGroup.OTHER_ONLY
    return CoreGroup.NONE_SIGNIFICANT


def disagreement(core: CoreGroup, label: ClusterLabel) -> float:
    """d(core, label) in {0, 0.5, 1} for a cluster core.

    In-group labels contribute 0, Geary's undirected positive-SA half, every
    other non-conflicting label a full 1.
    """
    if core not in (CoreGroup.HIGH_CLUSTER, CoreGroup.LOW_CLUSTER):
        raise ValueError("disagreement is defined for cluster cores only")
    membership = high_low_membership(label)
    in_group = Membership.HIGH if core == CoreGroup.HIGH_CLUSTER else Membership.LOW
    opposed = Membership.LOW if core == CoreGroup.HIGH_CLUSTER else Membership.HIGH
    if membership == opposed:
        raise ValueError("conflicting label reached disagreement()")
    if membership == in_group:
        return 0.0
    if label == ClusterLabel.OTHER_POSITIVE:
        return 0.5
    return 1.0


def _lerp(a: RGB, b: RGB, t: float) -> RGB:
    return tuple(int(round(a[c] + t * (b[c] - a[c]))) for c in range(3))


def aggregate_color(
    labels: list[ClusterLabel], palette: PaletteConfig = DEFAULT_PALETTE
) -> AggregateAssignment:
    """Aggregate one label set into a core group, disagreement h, and color.

    For cluster cores the color interpolates from the core color toward the
    not-significant grey by h = mean disagreement over all labels; the
    special cores use their fixed colors with h = 0.
    """
    core = core_group(labels)
    if core in (CoreGroup.HIGH_CLUSTER, CoreGroup.LOW_CLUSTER):
        h = sum(disagreement(core, l) for l in labels) / len(labels)
        color = _lerp(palette.core_color(core), palette.not_significant, h)
    else:
        h = 0.0
        color = palette.core_color(core)
    return AggregateAssignment(core=core, h=h, color=color, labels=tuple(labels))
