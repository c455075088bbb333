"""numba and numpy kernel backends must agree: bit-identical shuffles,
statistic values equal up to float summation order."""

import numpy as np
import pytest

from lisakit._kernels import get_backend
from lisakit.data_model import zscore_timestep
from lisakit.permutation import global_perm_matrix, local_perm_matrix
from lisakit.rng import RngPolicy, shuffled, stream_key
from lisakit.stats import StatKind
from lisakit.weights import restrict_to_present

from conftest import grid_weights

ALL_LOCAL = {k: True for k in (StatKind.LOCAL_MORAN, StatKind.LOCAL_GEARY, StatKind.GI_STAR, StatKind.GI)}
ALL_GLOBAL = {k: True for k in (StatKind.GLOBAL_MORAN, StatKind.GLOBAL_GEARY, StatKind.GENERAL_G)}


@pytest.mark.parametrize("backend", ["numba", "numpy"])
def test_shuffles_bit_identical_to_reference(backend):
    kern = get_backend(backend)
    base = np.arange(37, dtype=float)
    for seed, t, loc, k in [(0, 0, 0, 0), (1, 2, 3, 4), (2**40, 7, 0xFFFFFFFF, 998)]:
        got = kern.shuffled(base, seed, t, loc, k)
        ref = shuffled(base, stream_key(seed, t, loc, k))
        np.testing.assert_array_equal(got, ref)


def test_local_matrices_agree():
    rsn = np.random.RandomState(21)
    z = zscore_timestep(rsn.normal(size=36))
    W = grid_weights(6, 6, rule="queen")
    Ws = grid_weights(6, 6, rule="queen", include_self=True)
    rng = RngPolicy(77, 4)
    a = local_perm_matrix(W, Ws, z, 36, 99, rng, ALL_LOCAL, backend="numba")
    b = local_perm_matrix(W, Ws, z, 36, 99, rng, ALL_LOCAL, backend="numpy")
    np.testing.assert_array_equal(np.isnan(a), np.isnan(b))
    np.testing.assert_allclose(a, b, atol=1e-12, rtol=1e-12)


def test_global_matrices_agree():
    rsn = np.random.RandomState(22)
    z = zscore_timestep(rsn.normal(size=25))
    W = grid_weights(5, 5)
    rng = RngPolicy(99, 0)
    a = global_perm_matrix(W, z, 25, 199, rng, ALL_GLOBAL, backend="numba")
    b = global_perm_matrix(W, z, 25, 199, rng, ALL_GLOBAL, backend="numpy")
    np.testing.assert_allclose(a, b, atol=1e-12, rtol=1e-12)


def test_agreement_with_missing_values():
    rsn = np.random.RandomState(23)
    x = rsn.normal(size=25)
    x[[3, 8, 17]] = np.nan
    z = zscore_timestep(x)
    present = ~np.isnan(z)
    W = restrict_to_present(grid_weights(5, 5, rule="queen"), present)
    Ws = restrict_to_present(grid_weights(5, 5, rule="queen", include_self=True), present)
    n_eff = int(present.sum())
    rng = RngPolicy(5, 1)
    a = local_perm_matrix(W, Ws, z, n_eff, 59, rng, ALL_LOCAL, backend="numba")
    b = local_perm_matrix(W, Ws, z, n_eff, 59, rng, ALL_LOCAL, backend="numpy")
    np.testing.assert_array_equal(np.isnan(a), np.isnan(b))
    np.testing.assert_allclose(a, b, atol=1e-12, rtol=1e-12)
    # missing locations never receive permuted values
    assert np.isnan(a[:, [3, 8, 17], :]).all()


def test_env_flag_selects_backend(monkeypatch):
    from lisakit._kernels import active_backend_name

    monkeypatch.setenv("LISAKIT_BACKEND", "numpy")
    assert active_backend_name() == "numpy"
    monkeypatch.setenv("LISAKIT_BACKEND", "numba")
    assert active_backend_name() == "numba"
    monkeypatch.delenv("LISAKIT_BACKEND")
    assert active_backend_name() in ("numba", "numpy")

    with pytest.raises(ValueError, match="unknown backend"):
        get_backend("cupy")
