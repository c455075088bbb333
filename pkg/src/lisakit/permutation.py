"""Permutation inference: empirical distributions, pseudo p-values, cutoffs.

Global statistics shuffle all present values; local statistics hold the
focal value fixed and shuffle the rest (conditional permutation).  The
statistic is recomputed in full for every permutation -- no look-up tables or
approximations.  All shuffles come from counter-based streams (see rng), so
results are reproducible at any thread count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import stats
from ._kernels import (
    GLOBAL_SLOT_GEARY,
    GLOBAL_SLOT_GENERAL_G,
    GLOBAL_SLOT_MORAN,
    SLOT_GI,
    SLOT_GI_STAR,
    SLOT_LOCAL_GEARY,
    SLOT_LOCAL_MORAN,
    get_backend,
)
from .errors import DegenerateError, InputError
from .rng import RngPolicy
from .stats import StatKind
from .weights import WeightMatrix

_LOCAL_SLOT = {
    StatKind.LOCAL_MORAN: SLOT_LOCAL_MORAN,
    StatKind.LOCAL_GEARY: SLOT_LOCAL_GEARY,
    StatKind.GI_STAR: SLOT_GI_STAR,
    StatKind.GI: SLOT_GI,
}
_GLOBAL_SLOT = {
    StatKind.GLOBAL_MORAN: GLOBAL_SLOT_MORAN,
    StatKind.GLOBAL_GEARY: GLOBAL_SLOT_GEARY,
    StatKind.GENERAL_G: GLOBAL_SLOT_GENERAL_G,
}


def pseudo_p(values, observed: float, M: int) -> float:
    """Two-sided pseudo p-value (R + 1) / (M + 1).

    R folds the strictly-greater count against its complement; ties with the
    observed value count as not-greater.
    """
    values = np.asarray(values)
    if values.shape[0] != M:
        raise ValueError("permutation count mismatch")
    greater = int((values > observed).sum())
    R = min(greater, M - greater)
    return (R + 1) / (M + 1)


def significance_cutoffs(sorted_values, M: int, p_cutoff: float) -> tuple[float, float]:
    """Lower/upper cutoff statistics at `p_cutoff`.

    R_cutoff = floor(p_cutoff * (M + 1) - 1); cutoffs are the R_cutoff-th
    smallest and (M - R_cutoff)-th smallest permuted values (1-based).
    """
    r_cut = math.floor(p_cutoff * (M + 1) - 1)
    if r_cut < 1:
        raise InputError(
            f"insufficient permutations for requested cutoff (M={M}, p={p_cutoff})"
        )
    s = np.asarray(sorted_values)
    return float(s[r_cut - 1]), float(s[M - r_cut - 1])


def znorm_statistic(values, observed: float) -> float:
    """(observed - mean) / population std over the permuted set."""
    values = np.asarray(values, dtype=np.float64)
    sd = float(values.std())
    if sd == 0.0:
        raise DegenerateError("degenerate permutation distribution: zero spread")
    return (observed - float(values.mean())) / sd


def distribution_sketch(sorted_values, k: int) -> np.ndarray:
    """k evenly spaced order statistics of the sorted values, min and max
    included."""
    s = np.asarray(sorted_values)
    M = s.shape[0]
    if k < 3 or k > M:
        raise ValueError("sketch size must satisfy 3 <= k <= M")
    idx = np.round(np.arange(k) * (M - 1) / (k - 1)).astype(np.int64)
    return s[idx]


@dataclass(frozen=True)
class PermutationDistribution:
    """One statistic's permutation distribution and derived inference."""

    M: int
    sorted_values: np.ndarray
    observed: float
    pseudo_p: float
    lower_cutoff: float
    upper_cutoff: float
    znorm: float

    @classmethod
    def from_values(cls, values: np.ndarray, observed: float, p_cutoff: float) -> "PermutationDistribution":
        M = int(values.shape[0])
        s = np.sort(values)
        lower, upper = significance_cutoffs(s, M, p_cutoff)
        return cls(
            M=M,
            sorted_values=s,
            observed=float(observed),
            pseudo_p=pseudo_p(s, observed, M),
            lower_cutoff=lower,
            upper_cutoff=upper,
            znorm=znorm_statistic(s, observed),
        )


def _present_indices(z: np.ndarray) -> np.ndarray:
    return np.flatnonzero(~np.isnan(z)).astype(np.int64)


def _empty_weight(n: int) -> WeightMatrix:
    return WeightMatrix(
        n=n,
        indptr=np.zeros(n + 1, dtype=np.int64),
        indices=np.zeros(0, dtype=np.int64),
        weights=np.zeros(0, dtype=np.float64),
        self_included=True,
    )


def local_perm_matrix(
    W: WeightMatrix | None,
    Wstar: WeightMatrix | None,
    z: np.ndarray,
    n_eff: int,
    M: int,
    rng: RngPolicy,
    want: dict[StatKind, bool],
    backend: str | None = None,
    targets: np.ndarray | None = None,
) -> np.ndarray:
    """Raw permuted local statistics for all four slots at one timestep.

    Shuffles are shared across statistics: the stream depends on
    (seed, timestep, location, permutation) only.  `targets` restricts the
    evaluated focal locations (default: every present location).
    """
    n = z.shape[0]
    if W is None:
        W = _empty_weight(n)
    if Wstar is None:
        Wstar = _empty_weight(n)
    want_vec = np.zeros(4, dtype=np.bool_)
    for kind, slot in _LOCAL_SLOT.items():
        want_vec[slot] = bool(want.get(kind, False))
    zbar, sdev = stats.leave_one_out(z, n_eff)
    present = _present_indices(z)
    kern = get_backend(backend)
    return kern.local_perm_stats(
        W.indptr,
        W.indices,
        W.weights,
        Wstar.indptr,
        Wstar.indices,
        Wstar.weights,
        z,
        present,
        present if targets is None else np.asarray(targets, dtype=np.int64),
        n_eff,
        M,
        rng.master_seed & ((1 << 64) - 1),
        rng.timestep_index,
        want_vec,
        zbar,
        sdev,
    )


def global_perm_matrix(
    W: WeightMatrix,
    z: np.ndarray,
    n_eff: int,
    M: int,
    rng: RngPolicy,
    want: dict[StatKind, bool],
    backend: str | None = None,
) -> np.ndarray:
    """Raw permuted global statistics (slots Moran, Geary, General G)."""
    want_vec = np.zeros(3, dtype=np.bool_)
    for kind, slot in _GLOBAL_SLOT.items():
        want_vec[slot] = bool(want.get(kind, False))
    zp = z[~np.isnan(z)]
    g_denom = float(zp.sum() ** 2 - (zp**2).sum())
    kern = get_backend(backend)
    return kern.global_perm_stats(
        W.indptr,
        W.indices,
        W.weights,
        z,
        _present_indices(z),
        n_eff,
        M,
        rng.master_seed & ((1 << 64) - 1),
        rng.timestep_index,
        want_vec,
        g_denom,
    )


def permute_global(
    stat: StatKind,
    W: WeightMatrix,
    z: np.ndarray,
    M: int,
    rng: RngPolicy,
    p_cutoff: float = 0.05,
    backend: str | None = None,
) -> PermutationDistribution:
    """Full-shuffle permutation inference for one global statistic."""
    if stat.is_local:
        raise ValueError(f"{stat.value} is not a global statistic")
    n_eff = int((~np.isnan(z)).sum())
    observed = {
        StatKind.GLOBAL_MORAN: stats.global_moran,
        StatKind.GLOBAL_GEARY: stats.global_geary,
        StatKind.GENERAL_G: stats.general_g,
    }[stat](W, z, n_eff)
    mat = global_perm_matrix(W, z, n_eff, M, rng, {stat: True}, backend=backend)
    return PermutationDistribution.from_values(mat[_GLOBAL_SLOT[stat]], observed, p_cutoff)


def permute_local(
    stat: StatKind,
    W: WeightMatrix,
    z: np.ndarray,
    focal: int,
    M: int,
    rng: RngPolicy,
    p_cutoff: float = 0.05,
    backend: str | None = None,
) -> PermutationDistribution:
    """Conditional permutation inference for one local statistic at `focal`.

    `W` is the statistic's own matrix (self-included for Gi*), restricted to
    present locations.
    """
    if not stat.is_local:
        raise ValueError(f"{stat.value} is not a local statistic")
    n_eff = int((~np.isnan(z)).sum())
    cols, _ = W.row(focal)
    real_neighbors = cols[cols != focal] if W.self_included else cols
    if real_neighbors.size == 0:
        raise DegenerateError(f"no neighbors for location index {focal}")

    observed_vec = {
        StatKind.LOCAL_MORAN: lambda: stats.local_moran(W, z, n_eff),
        StatKind.LOCAL_GEARY: lambda: stats.local_geary(W, z),
        StatKind.GI_STAR: lambda: stats.gi_star(W, z, n_eff),
        StatKind.GI: lambda: stats.gi(W, z, n_eff),
    }[stat]()
    star = W if W.self_included else None
    plain = None if W.self_included else W
    mat = local_perm_matrix(
        plain, star, z, n_eff, M, rng, {stat: True},
        backend=backend, targets=np.array([focal], dtype=np.int64),
    )
    return PermutationDistribution.from_values(
        mat[_LOCAL_SLOT[stat], focal], observed_vec[focal], p_cutoff
    )
