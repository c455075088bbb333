"""Counter-based random streams for reproducible permutation tests.

Every shuffle in the engine is driven by a splitmix64 counter stream whose
key is derived from (master_seed, timestep index, location index | GLOBAL,
permutation index).  Draws are stateless functions of (key, counter), so a
permutation's content depends only on those four integers -- never on thread
count, scheduling, or evaluation order.

The same scheme is implemented three times: scalar Python (here, the
reference), vectorized numpy (numpy backend), and jitted numba (numba
backend).  The backends are tested for exact integer equality against the
reference.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
# Location code used for global-statistic shuffles; real indices are < 2^32.
GLOBAL_STREAM = 0xFFFFFFFF


def mix64(x: int) -> int:
    """splitmix64 finalizer over a 64-bit integer."""
    x &= MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK64
    return x ^ (x >> 31)


def stream_key(seed: int, timestep: int, location: int, permutation: int) -> int:
    """Derive the stream key for one permutation of one work item."""
    h = seed & MASK64
    for field in (timestep, location, permutation):
        h = mix64(((h + GOLDEN) & MASK64) ^ (field & MASK64))
    return h


def draw(key: int, counter: int) -> int:
    """The counter-th 64-bit value of the stream (counters start at 1)."""
    return mix64((key + counter * GOLDEN) & MASK64)


def rand_below(key: int, counter: int, bound: int) -> tuple[int, int]:
    """Unbiased integer in [0, bound) via bit-mask rejection.

    Returns (value, counter) with the counter advanced past consumed draws.
    """
    if bound <= 1:
        return 0, counter
    mask = (1 << (bound - 1).bit_length()) - 1
    while True:
        counter += 1
        x = draw(key, counter) & mask
        if x < bound:
            return x, counter


def shuffled(values: np.ndarray, key: int) -> np.ndarray:
    """Fisher-Yates shuffle of a copy of `values` under stream `key`."""
    out = np.array(values, dtype=np.float64, copy=True)
    counter = 0
    for j in range(out.shape[0] - 1, 0, -1):
        r, counter = rand_below(key, counter, j + 1)
        out[j], out[r] = out[r], out[j]
    return out


# -- vectorized forms used by the numpy backend -------------------------------

_U64_GOLDEN = np.uint64(GOLDEN)
_U64_C1 = np.uint64(0xBF58476D1CE4E5B9)
_U64_C2 = np.uint64(0x94D049BB133111EB)


def mix64_vec(x: np.ndarray) -> np.ndarray:
    """Vectorized splitmix64 finalizer over a uint64 array."""
    x = (x ^ (x >> np.uint64(30))) * _U64_C1
    x = (x ^ (x >> np.uint64(27))) * _U64_C2
    return x ^ (x >> np.uint64(31))


def stream_keys(seed: int, timestep: int, location: int, count: int) -> np.ndarray:
    """Keys for permutations 0..count-1 of one work item, as uint64."""
    perms = np.arange(count, dtype=np.uint64)
    h = np.full(count, seed & MASK64, dtype=np.uint64)
    for field in (timestep & MASK64, location & MASK64):
        h = mix64_vec((h + _U64_GOLDEN) ^ np.uint64(field))
    return mix64_vec((h + _U64_GOLDEN) ^ perms)


def shuffle_rows(base: np.ndarray, keys: np.ndarray) -> np.ndarray:
    """Row-wise Fisher-Yates: row k of the result is `base` shuffled under
    keys[k].  Bit-identical to repeated `shuffled(base, keys[k])`."""
    m = base.shape[0]
    rows = keys.shape[0]
    out = np.tile(np.asarray(base, dtype=np.float64), (rows, 1))
    counters = np.zeros(rows, dtype=np.uint64)
    row_ids = np.arange(rows)
    with np.errstate(over="ignore"):
        for j in range(m - 1, 0, -1):
            bound = j + 1
            mask = np.uint64((1 << (bound - 1).bit_length()) - 1)
            r = np.empty(rows, dtype=np.int64)
            pending = row_ids
            while pending.size:
                counters[pending] += np.uint64(1)
                x = mix64_vec(keys[pending] + counters[pending] * _U64_GOLDEN) & mask
                ok = x < np.uint64(bound)
                hit = pending[ok]
                r[hit] = x[ok].astype(np.int64)
                pending = pending[~ok]
            col_j = out[:, j].copy()
            out[:, j] = out[row_ids, r]
            out[row_ids, r] = col_j
    return out


@dataclass(frozen=True)
class RngPolicy:
    """Determinism contract for one analysis run.

    `master_seed` is reduced mod 2^64; `timestep_index` scopes the streams of
    one timestep's work items.
    """

    master_seed: int
    timestep_index: int = 0

    def key(self, location: int, permutation: int) -> int:
        return stream_key(self.master_seed, self.timestep_index, location, permutation)

    def keys(self, location: int, count: int) -> np.ndarray:
        return stream_keys(self.master_seed, self.timestep_index, location, count)
