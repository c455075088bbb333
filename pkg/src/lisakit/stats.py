"""Global and local spatial association statistics on z-scored values.

All functions take a row-normalized WeightMatrix and a z-vector with NaN at
missing positions; `n` is the number of present values.  Locations whose
weight row is empty (or self-only, for the self-included variant) get NaN,
which callers convert to an explicit "no neighbors" marker -- NaN never flows
into downstream arithmetic.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateError
from .weights import WeightMatrix


class StatKind(enum.Enum):
    GLOBAL_MORAN = "global-moran"
    LOCAL_MORAN = "local-moran"
    GLOBAL_GEARY = "global-geary"
    LOCAL_GEARY = "local-geary"
    GENERAL_G = "general-g"
    GI_STAR = "gi-star"
    GI = "gi"

    @property
    def is_local(self) -> bool:
        return self in (StatKind.LOCAL_MORAN, StatKind.LOCAL_GEARY, StatKind.GI_STAR, StatKind.GI)


@dataclass(frozen=True)
class LocalContext:
    """Per-location quantities the local statistics and labels share:
    the z-score, spatial lag (NaN for empty rows), and the leave-one-out
    mean and standard deviation."""

    z_i: float
    lag_i: float
    mean_excl: float
    std_excl: float


def local_context(W: WeightMatrix, z: np.ndarray, n: int) -> list[LocalContext | None]:
    """LocalContext per location; None where the value is missing."""
    lag = spatial_lag(W, z)
    zbar, sdev = leave_one_out(z, n)
    return [
        None
        if np.isnan(z[i])
        else LocalContext(float(z[i]), float(lag[i]), float(zbar[i]), float(sdev[i]))
        for i in range(W.n)
    ]


def spatial_lag(W: WeightMatrix, z: np.ndarray) -> np.ndarray:
    """lag_i = sum_j W_ij z_j; NaN where row i is empty."""
    lag = np.full(W.n, np.nan)
    for i in range(W.n):
        cols, w = W.row(i)
        if cols.size:
            lag[i] = float(w @ z[cols])
    return lag


def _check_structure(W: WeightMatrix) -> None:
    if not W.nonempty().any():
        raise DegenerateError("no spatial structure: every location is an island")


def global_moran(W: WeightMatrix, z: np.ndarray, n: int) -> float:
    """Moran's I = sum_ij W_ij z_i z_j / (n - 1)."""
    _check_structure(W)
    total = 0.0
    for i in range(W.n):
        cols, w = W.row(i)
        if cols.size:
            total += z[i] * float(w @ z[cols])
    return total / (n - 1)


def local_moran(W: WeightMatrix, z: np.ndarray, n: int) -> np.ndarray:
    """I_i = z_i lag_i / (n - 1); NaN for empty rows."""
    return z * spatial_lag(W, z) / (n - 1)


def global_geary(W: WeightMatrix, z: np.ndarray, n: int) -> float:
    """Geary's C = sum_ij W_ij (z_i - z_j)^2 / (2 n)."""
    _check_structure(W)
    total = 0.0
    for i in range(W.n):
        cols, w = W.row(i)
        if cols.size:
            total += float(w @ (z[i] - z[cols]) ** 2)
    return total / (2 * n)


def local_geary(W: WeightMatrix, z: np.ndarray) -> np.ndarray:
    """C_i = sum_j W_ij (z_i - z_j)^2; NaN for empty rows."""
    out = np.full(W.n, np.nan)
    for i in range(W.n):
        cols, w = W.row(i)
        if cols.size:
            out[i] = float(w @ (z[i] - z[cols]) ** 2)
    return out


def general_g(W: WeightMatrix, z: np.ndarray, n: int) -> float:
    """General G = sum_{i != j} W_ij z_i z_j / sum_{i != j} z_i z_j.

    With exact population z-scores the denominator equals -n; the guard only
    fires on pathological partial data.
    """
    _check_structure(W)
    if W.self_included:
        raise ValueError("general_g requires a self-excluded weight matrix")
    zp = z[~np.isnan(z)]
    denom = float(zp.sum() ** 2 - (zp**2).sum())
    if abs(denom) < 1e-12:
        raise DegenerateError("undefined General G: pair-product denominator is 0")
    num = 0.0
    for i in range(W.n):
        cols, w = W.row(i)
        if cols.size:
            num += z[i] * float(w @ z[cols])
    return num / denom


def _row_denominator(w: np.ndarray, n: int) -> float:
    radicand = (n * float((w**2).sum()) - 1.0) / (n - 1)
    if radicand <= 0.0:
        raise DegenerateError("degenerate Gi* denominator: n * sum(W^2) <= 1")
    return math.sqrt(radicand)


def gi_star(Wstar: WeightMatrix, z: np.ndarray, n: int) -> np.ndarray:
    """Getis-Ord Gi* over a self-included matrix; NaN for self-only rows."""
    if not Wstar.self_included:
        raise ValueError("gi_star requires a self-included weight matrix")
    out = np.full(Wstar.n, np.nan)
    for i in range(Wstar.n):
        cols, w = Wstar.row(i)
        if cols.size == 0 or (cols.size == 1 and cols[0] == i):
            continue
        out[i] = float(w @ z[cols]) / _row_denominator(w, n)
    return out


def leave_one_out(z: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Per-location mean and population std of the z-values excluding self.

    NaN positions (missing) get NaN back.
    """
    mask = ~np.isnan(z)
    s1 = float(z[mask].sum())
    s2 = float((z[mask] ** 2).sum())
    zbar = np.full_like(z, np.nan)
    sdev = np.full_like(z, np.nan)
    zbar[mask] = (s1 - z[mask]) / (n - 1)
    var = (s2 - z[mask] ** 2) / (n - 1) - zbar[mask] ** 2
    sdev[mask] = np.sqrt(np.maximum(var, 0.0))
    return zbar, sdev


def gi(W: WeightMatrix, z: np.ndarray, n: int) -> np.ndarray:
    """Getis-Ord Gi over a self-excluded matrix; NaN for empty rows.

    The lag is centered by the leave-one-out mean and scaled by the
    leave-one-out standard deviation.
    """
    if W.self_included:
        raise ValueError("gi requires a self-excluded weight matrix")
    zbar, sdev = leave_one_out(z, n)
    out = np.full(W.n, np.nan)
    for i in range(W.n):
        cols, w = W.row(i)
        if cols.size == 0:
            continue
        if sdev[i] == 0.0:
            raise DegenerateError("degenerate leave-one-out variance")
        out[i] = (float(w @ z[cols]) - zbar[i]) / (sdev[i] * _row_denominator(w, n))
    return out
