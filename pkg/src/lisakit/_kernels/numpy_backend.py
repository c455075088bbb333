"""Pure-numpy permutation kernels.

Same contract as the numba backend: identical streams, identical shuffles
(bit-exact), statistic values equal up to floating-point summation order.
Shuffles are vectorized across permutations; statistics are evaluated with
dense gathers against the sparse rows.
"""

import numpy as np

from ..rng import GLOBAL_STREAM, shuffle_rows, stream_key, stream_keys, shuffled as _shuffled_ref

BACKEND_NAME = "numpy"

# Permutations per vectorized chunk in the global kernel; bounds the
# M x nnz intermediate arrays.
_CHUNK = 256


def shuffled(values, seed, t_code, loc_code, perm_code):
    return _shuffled_ref(values, stream_key(seed, t_code, loc_code, perm_code))


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
    n = z.shape[0]
    m = present_idx.shape[0]
    out = np.full((4, n, M), np.nan)
    inv_nm1 = 1.0 / (n_eff - 1.0)
    w_moran, w_geary, w_star, w_gi = (bool(x) for x in want)

    pos_of = np.full(n, -1, dtype=np.int64)

    for p in range(targets.shape[0]):
        i = int(targets[p])
        cols = indices[indptr[i] : indptr[i + 1]]
        w = weights[indptr[i] : indptr[i + 1]]
        scols = sindices[sindptr[i] : sindptr[i + 1]]
        sw = sweights[sindptr[i] : sindptr[i + 1]]
        star_real = scols[scols != i]
        need_w = cols.size > 0 and (w_moran or w_geary or w_gi)
        need_star = w_star and star_real.size > 0
        if not (need_w or need_star):
            continue

        nonfocal = present_idx[present_idx != i]
        pos_of[nonfocal] = np.arange(m - 1)
        keys = stream_keys(seed, t_code, i, M)
        A = shuffle_rows(z[nonfocal], keys)  # (M, m-1)

        zi = float(z[i])
        if need_w:
            cc = pos_of[cols]
            if w_moran or w_gi:
                lag = A[:, cc] @ w
                if w_moran:
                    out[0, i, :] = zi * lag * inv_nm1
                if w_gi and sdev[i] > 0.0:
                    rad = (n_eff * float(w @ w) - 1.0) / (n_eff - 1.0)
                    if rad > 0.0:
                        out[3, i, :] = (lag - zbar[i]) / (np.sqrt(rad) * sdev[i])
            if w_geary:
                out[1, i, :] = ((zi - A[:, cc]) ** 2) @ w
        if need_star:
            rad = (n_eff * float(sw @ sw) - 1.0) / (n_eff - 1.0)
            if rad > 0.0:
                self_part = float(sw[scols == i].sum()) * zi
                other = sw[scols != i]
                num = A[:, pos_of[star_real]] @ other + self_part
                out[2, i, :] = num / np.sqrt(rad)
        pos_of[nonfocal] = -1
    return out


def global_perm_stats(
    indptr, indices, weights, z, present_idx, n_eff, M, seed, t_code, want, g_denom
):
    n = z.shape[0]
    m = present_idx.shape[0]
    out = np.full((3, M), np.nan)
    inv_nm1 = 1.0 / (n_eff - 1.0)
    w_moran, w_geary, w_g = (bool(x) for x in want)

    pos_of = np.full(n, -1, dtype=np.int64)
    pos_of[present_idx] = np.arange(m)
    row_of = np.repeat(np.arange(n), np.diff(indptr))
    rr = pos_of[row_of]
    cc = pos_of[indices]

    keys = stream_keys(seed, t_code, GLOBAL_STREAM, M)
    base = z[present_idx]
    for lo in range(0, M, _CHUNK):
        hi = min(lo + _CHUNK, M)
        A = shuffle_rows(base, keys[lo:hi])  # (chunk, m)
        if w_moran or w_g:
            cross = (A[:, rr] * A[:, cc]) @ weights
            if w_moran:
                out[0, lo:hi] = cross * inv_nm1
            if w_g:
                out[2, lo:hi] = cross / g_denom
        if w_geary:
            out[1, lo:hi] = ((A[:, rr] - A[:, cc]) ** 2) @ weights / (2.0 * n_eff)
    return out
