"""Jitted permutation kernels.

Work items parallelize with prange; every permutation is derived from its own
counter-based stream, so results are independent of thread count and
scheduling.  Reductions inside one statistic evaluation are sequential to
keep floating-point order fixed.
"""

import warnings

import numpy as np

# The container's TBB may predate numba's minimum; numba falls back to the
# next threading layer, which is all we need.
warnings.filterwarnings("ignore", message=".*TBB threading layer.*")
from numba import njit, prange  # noqa: E402

BACKEND_NAME = "numba"

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_C1 = np.uint64(0xBF58476D1CE4E5B9)
_C2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_GLOBAL = np.uint64(0xFFFFFFFF)
_ONE = np.uint64(1)


@njit(inline="always")
def _mix64(x):
    x = (x ^ (x >> _S30)) * _C1
    x = (x ^ (x >> _S27)) * _C2
    return x ^ (x >> _S31)


@njit(inline="always")
def _stream_key(seed, t_code, loc_code, perm_code):
    h = seed
    h = _mix64((h + _GOLDEN) ^ t_code)
    h = _mix64((h + _GOLDEN) ^ loc_code)
    h = _mix64((h + _GOLDEN) ^ perm_code)
    return h


@njit(inline="always")
def _fisher_yates(buf, key):
    counter = np.uint64(0)
    for j in range(buf.shape[0] - 1, 0, -1):
        bound = j + 1
        mask = np.uint64(1)
        while mask < np.uint64(bound):
            mask = mask << _ONE
        mask = mask - _ONE
        while True:
            counter += _ONE
            r = _mix64(key + counter * _GOLDEN) & mask
            if r < np.uint64(bound):
                break
        ri = np.int64(r)
        tmp = buf[j]
        buf[j] = buf[ri]
        buf[ri] = tmp


@njit(cache=True)
def shuffled(values, seed, t_code, loc_code, perm_code):
    out = values.copy()
    key = _stream_key(
        np.uint64(seed), np.uint64(t_code), np.uint64(loc_code), np.uint64(perm_code)
    )
    _fisher_yates(out, key)
    return out


@njit(parallel=True, cache=True)
def local_perm_stats(
    indptr,
    indices,
    weights,
    sindptr,
    sindices,
    sweights,
    z,
    present_idx,
    targets,
    n_eff,
    M,
    seed,
    t_code,
    want,
    zbar,
    sdev,
):
    """Permuted local statistics: out[slot, location, permutation].

    Slots: 0 local Moran, 1 local Geary, 2 Gi*, 3 Gi.  The focal value stays
    fixed; the other present values are Fisher-Yates shuffled over the other
    present positions, one stream per (timestep, location, permutation).
    Only `targets` rows are evaluated; rows without usable neighbors stay NaN.
    """
    n = z.shape[0]
    m = present_idx.shape[0]
    out = np.full((4, n, M), np.nan)
    inv_nm1 = 1.0 / (n_eff - 1.0)
    seed_u = np.uint64(seed)
    t_u = np.uint64(t_code)

    for p in prange(targets.shape[0]):
        i = targets[p]
        r0, r1 = indptr[i], indptr[i + 1]
        s0, s1 = sindptr[i], sindptr[i + 1]
        deg = r1 - r0
        star_real = 0
        for e in range(s0, s1):
            if sindices[e] != i:
                star_real += 1
        need_w = deg > 0 and (want[0] or want[1] or want[3])
        need_star = want[2] and star_real > 0
        if not (need_w or need_star):
            continue

        d_gi = 0.0
        gi_ok = False
        if want[3] and deg > 0 and sdev[i] > 0.0:
            sw2 = 0.0
            for e in range(r0, r1):
                sw2 += weights[e] * weights[e]
            rad = (n_eff * sw2 - 1.0) / (n_eff - 1.0)
            if rad > 0.0:
                d_gi = np.sqrt(rad) * sdev[i]
                gi_ok = True
        d_star = 0.0
        star_ok = False
        if need_star:
            sw2 = 0.0
            for e in range(s0, s1):
                sw2 += sweights[e] * sweights[e]
            rad = (n_eff * sw2 - 1.0) / (n_eff - 1.0)
            if rad > 0.0:
                d_star = np.sqrt(rad)
                star_ok = True

        vals0 = np.empty(m - 1)
        positions = np.empty(m - 1, np.int64)
        q2 = 0
        for q in range(m):
            loc = present_idx[q]
            if loc != i:
                vals0[q2] = z[loc]
                positions[q2] = loc
                q2 += 1
        zw = z.copy()
        buf = np.empty(m - 1)
        zi = z[i]
        loc_u = np.uint64(i)

        for k in range(M):
            key = _stream_key(seed_u, t_u, loc_u, np.uint64(k))
            for t in range(m - 1):
                buf[t] = vals0[t]
            _fisher_yates(buf, key)
            for t in range(m - 1):
                zw[positions[t]] = buf[t]

            if need_w:
                if want[0] or want[3]:
                    lag = 0.0
                    for e in range(r0, r1):
                        lag += weights[e] * zw[indices[e]]
                    if want[0]:
                        out[0, i, k] = zi * lag * inv_nm1
                    if gi_ok:
                        out[3, i, k] = (lag - zbar[i]) / d_gi
                if want[1]:
                    acc = 0.0
                    for e in range(r0, r1):
                        d = zi - zw[indices[e]]
                        acc += weights[e] * d * d
                    out[1, i, k] = acc
            if star_ok:
                acc = 0.0
                for e in range(s0, s1):
                    acc += sweights[e] * zw[sindices[e]]
                out[2, i, k] = acc / d_star
    return out


@njit(parallel=True, cache=True)
def global_perm_stats(
    indptr, indices, weights, z, present_idx, n_eff, M, seed, t_code, want, g_denom
):
    """Permuted global statistics: out[slot, permutation].

    Slots: 0 Moran's I, 1 Geary's C, 2 General G.  All present values are
    shuffled over the present positions; streams use the GLOBAL location
    code, so permutations are shared across the statistics.
    """
    n = z.shape[0]
    m = present_idx.shape[0]
    out = np.full((3, M), np.nan)
    inv_nm1 = 1.0 / (n_eff - 1.0)
    inv_2n = 1.0 / (2.0 * n_eff)
    seed_u = np.uint64(seed)
    t_u = np.uint64(t_code)
    vals0 = np.empty(m)
    for q in range(m):
        vals0[q] = z[present_idx[q]]

    for k in prange(M):
        key = _stream_key(seed_u, t_u, _GLOBAL, np.uint64(k))
        buf = vals0.copy()
        _fisher_yates(buf, key)
        zw = np.full(n, np.nan)
        for t in range(m):
            zw[present_idx[t]] = buf[t]

        if want[0] or want[2]:
            cross = 0.0
            for i in range(n):
                r0, r1 = indptr[i], indptr[i + 1]
                if r1 > r0:
                    lag = 0.0
                    for e in range(r0, r1):
                        lag += weights[e] * zw[indices[e]]
                    cross += zw[i] * lag
            if want[0]:
                out[0, k] = cross * inv_nm1
            if want[2]:
                out[2, k] = cross / g_denom
        if want[1]:
            acc = 0.0
            for i in range(n):
                r0, r1 = indptr[i], indptr[i + 1]
                for e in range(r0, r1):
                    d = zw[i] - zw[indices[e]]
                    acc += weights[e] * d * d
            out[1, k] = acc * inv_2n
    return out
