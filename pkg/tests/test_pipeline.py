import json

import numpy as np
import pytest

from lisakit.errors import InputError
from lisakit.pipeline import (
    ResultSet,
    RunConfig,
    cache_lookup,
    cache_store,
    dataset_digest,
    make_cache_key,
    run_analysis,
    write_results,
)

from conftest import checkerboard, grid_dataset

CB_CONFIG = RunConfig(methods=("local-moran", "local-geary", "gi-star"),
                      contiguity="rook", permutations=999, master_seed=0)


@pytest.fixture(scope="module")
def cb_result():
    vals = checkerboard(4, 4)
    ds = grid_dataset(4, 4, [[v] for v in vals], timesteps=[2000])
    return run_analysis(ds, CB_CONFIG)


class TestRunAnalysis:
    def test_checkerboard_globals(self, cb_result):
        g = cb_result.payload["global"]["2000"]
        moran = g["local-moran"]
        assert moran["statistic"] == "global-moran"
        assert moran["value"] == pytest.approx(-16.0 / 15.0, abs=1e-12)
        assert moran["label"] == "negative-sa"
        geary = g["local-geary"]
        assert geary["value"] == pytest.approx(2.0, abs=1e-12)
        assert geary["label"] == "negative-sa"
        gg = g["gi-star"]
        assert gg["statistic"] == "general-g"
        assert gg["value"] == pytest.approx(1.0, abs=1e-12)

    def test_checkerboard_locals_are_outliers_or_ns(self, cb_result):
        cells = cb_result.payload["local"]["2000"]["local-moran"]
        assert len(cells) == 16
        for cell in cells:
            assert cell["label"] in ("high-low", "low-high", "not-significant")
            assert cell["value"] == pytest.approx(-1.0 / 15.0, abs=1e-12)

    def test_global_sketch_size(self, cb_result):
        sketch = cb_result.payload["global"]["2000"]["local-moran"]["sketch"]
        assert len(sketch) == 199
        assert sketch == sorted(sketch)

    def test_local_sketches_absent_by_default(self, cb_result):
        cell = cb_result.payload["local"]["2000"]["local-moran"][0]
        assert "sketch" not in cell

    def test_aggregate_present_per_location(self, cb_result):
        agg = cb_result.payload["aggregate"]["2000"]
        assert len(agg) == 16
        for a in agg:
            assert set(a) == {"core", "h", "color"}
            assert a["color"].startswith("#") and len(a["color"]) == 7

    def test_determinism_same_seed(self):
        vals = checkerboard(4, 4)
        ds = grid_dataset(4, 4, [[v] for v in vals], timesteps=[2000])
        a = run_analysis(ds, CB_CONFIG)
        b = run_analysis(ds, CB_CONFIG)
        assert a.to_json() == b.to_json()

    def test_seed_changes_output(self):
        vals = checkerboard(4, 4)
        ds = grid_dataset(4, 4, [[v] for v in vals], timesteps=[2000])
        b = run_analysis(ds, RunConfig(methods=CB_CONFIG.methods, contiguity="rook",
                                       master_seed=1))
        a = run_analysis(ds, CB_CONFIG)
        assert a.to_json() != b.to_json()

    def test_backends_agree_on_labels(self):
        # bytes are guaranteed per backend; across backends floats may differ
        # in the last ulp (summation order), labels and colors must not
        rsn = np.random.RandomState(5)
        matrix = rsn.normal(size=(25, 2)).tolist()
        ds = grid_dataset(5, 5, matrix, timesteps=[2000, 2001])
        cfg = RunConfig(permutations=199)
        a = run_analysis(ds, cfg, backend="numba")
        b = run_analysis(ds, cfg, backend="numpy")
        for t in ("2000", "2001"):
            for m in cfg.validated().methods:
                for ca, cb in zip(a.payload["local"][t][m], b.payload["local"][t][m]):
                    assert ca["label"] == cb["label"]
                    for field in ("value", "znorm", "pseudo_p", "lower", "upper"):
                        assert ca[field] == pytest.approx(cb[field], abs=1e-9)
        assert a.payload["aggregate"] == b.payload["aggregate"]

    def test_missing_timestep_skipped_others_complete(self):
        rsn = np.random.RandomState(6)
        col = rsn.normal(size=9)
        matrix = [[col[i], None, col[i] * 2 + rsn.normal()] for i in range(9)]
        ds = grid_dataset(3, 3, matrix, timesteps=[2000, 2001, 2002])
        rs = run_analysis(ds, RunConfig(permutations=99))
        assert rs.payload["global"]["2001"]["local-moran"]["value"] is None
        assert rs.payload["global"]["2001"]["local-moran"]["label"] == "no-data"
        for cell in rs.payload["local"]["2001"]["local-moran"]:
            assert cell["label"] == "no-data"
        assert rs.payload["local"]["2000"]["local-moran"][0]["value"] is not None
        assert any("insufficient data" in w for w in rs.payload["warnings"])

    def test_partially_missing_location_marked_no_data(self):
        rsn = np.random.RandomState(7)
        matrix = rsn.normal(size=(9, 1)).tolist()
        matrix[4] = [None]
        ds = grid_dataset(3, 3, matrix, timesteps=[2000])
        rs = run_analysis(ds, RunConfig(permutations=99))
        cells = rs.payload["local"]["2000"]["local-moran"]
        assert cells[4]["label"] == "no-data"
        assert all(c["label"] != "no-data" for i, c in enumerate(cells) if i != 4)
        agg = rs.payload["aggregate"]["2000"]
        assert agg[4]["core"] == "no-data"

    def test_all_degenerate_fails(self):
        ds = grid_dataset(2, 2, [[1.0], [1.0], [1.0], [1.0]], timesteps=[2000])
        with pytest.raises(InputError, match="all timesteps degenerate"):
            run_analysis(ds, RunConfig(permutations=99))

    def test_gi_and_gi_star_share_general_g(self):
        rsn = np.random.RandomState(8)
        ds = grid_dataset(4, 4, rsn.normal(size=(16, 1)).tolist(), timesteps=[2000])
        rs = run_analysis(ds, RunConfig(methods=("gi", "gi-star"), permutations=99))
        g = rs.payload["global"]["2000"]
        assert g["gi"] == g["gi-star"]
        assert g["gi"]["statistic"] == "general-g"
        local = rs.payload["local"]["2000"]
        assert set(local) == {"gi", "gi-star"}
        assert local["gi"] != local["gi-star"]

    def test_completeness_every_cell_accounted(self):
        rsn = np.random.RandomState(9)
        matrix = rsn.normal(size=(16, 3))
        matrix[3, 1] = np.nan
        ds = grid_dataset(4, 4, matrix.tolist(), timesteps=[2000, 2001, 2002])
        cfg = RunConfig(permutations=99)
        rs = run_analysis(ds, cfg)
        for t in map(str, [2000, 2001, 2002]):
            for m in cfg.validated().methods:
                cells = rs.payload["local"][t][m]
                assert len(cells) == 16
                for cell in cells:
                    assert cell["label"] is not None
                    assert (cell["value"] is None) == (
                        cell["label"] in ("no-data", "no-neighbors")
                    )
            assert len(rs.payload["aggregate"][t]) == 16

    def test_thread_count_does_not_change_bytes(self):
        rsn = np.random.RandomState(10)
        ds = grid_dataset(4, 4, rsn.normal(size=(16, 2)).tolist(), timesteps=[1, 2])
        cfg = RunConfig(permutations=199)
        a = run_analysis(ds, cfg, threads=1)
        b = run_analysis(ds, cfg, threads=0)
        assert a.to_json() == b.to_json()


class TestConfigValidation:
    def test_unknown_method(self):
        with pytest.raises(InputError, match="unknown methods"):
            RunConfig(methods=("moran",)).validated()

    def test_empty_methods(self):
        with pytest.raises(InputError, match="at least one method"):
            RunConfig(methods=()).validated()

    def test_alpha_range(self):
        with pytest.raises(InputError, match="alpha"):
            RunConfig(alpha=0.6).validated()

    def test_min_permutations(self):
        with pytest.raises(InputError, match=">= 19"):
            RunConfig(permutations=10).validated()

    def test_alpha_permutation_mismatch(self):
        with pytest.raises(InputError, match="insufficient permutations"):
            RunConfig(alpha=0.01, permutations=99).validated()

    def test_methods_normalized_to_canonical_order(self):
        cfg = RunConfig(methods=("gi-star", "local-moran")).validated()
        assert cfg.methods == ("local-moran", "gi-star")


class TestCacheAndOutput:
    def test_cache_roundtrip(self, tmp_path, cb_result):
        key = "k" * 64
        assert cache_lookup(key, tmp_path) is None
        cache_store(key, cb_result, tmp_path)
        hit = cache_lookup(key, tmp_path)
        assert hit == cb_result

    def test_corrupt_cache_quarantined(self, tmp_path, cb_result):
        key = "q" * 64
        path = cache_store(key, cb_result, tmp_path)
        path.write_text(path.read_text()[: 100])  # truncate
        assert cache_lookup(key, tmp_path) is None
        assert path.with_suffix(".json.corrupt").exists()
        assert not path.exists()

    def test_wrong_key_is_miss(self, tmp_path, cb_result):
        key = "a" * 64
        path = cache_store(key, cb_result, tmp_path)
        path.rename(path.parent / ("b" * 64 + ".json"))
        assert cache_lookup("b" * 64, tmp_path) is None

    def test_cache_key_sensitivity(self, cb_result):
        cfg = RunConfig()
        base = make_cache_key(b"geo", b"vals", cfg)
        assert make_cache_key(b"geo2", b"vals", cfg) != base
        assert make_cache_key(b"geo", b"vals2", cfg) != base
        assert make_cache_key(b"geo", b"vals", RunConfig(master_seed=1)) != base
        assert make_cache_key(b"geo", b"vals", cfg) == base

    def test_write_results_roundtrip(self, tmp_path, cb_result):
        out = tmp_path / "results.json"
        write_results(cb_result, out)
        again = ResultSet.from_json(out.read_text())
        assert again == cb_result
        write_results(cb_result, out)
        assert ResultSet.from_json(out.read_text()) == cb_result

    def test_write_results_missing_dir(self, tmp_path, cb_result):
        with pytest.raises(InputError, match="directory"):
            write_results(cb_result, tmp_path / "nope" / "results.json")

    def test_canonical_json_sorted_keys_no_nan(self, cb_result):
        text = cb_result.to_json()
        assert "NaN" not in text
        doc = json.loads(text)
        assert list(doc) == sorted(doc)

    def test_dataset_digest_stable(self):
        vals = checkerboard(4, 4)
        a = grid_dataset(4, 4, [[v] for v in vals], timesteps=[2000])
        b = grid_dataset(4, 4, [[v] for v in vals], timesteps=[2000])
        assert dataset_digest(a) == dataset_digest(b)
        c = grid_dataset(4, 4, [[v + 1e-9] for v in vals], timesteps=[2000])
        assert dataset_digest(c) != dataset_digest(a)


def test_schema_top_level_keys(cb_result):
    assert set(cb_result.payload) == {
        "schema_version", "config", "dataset", "values", "zvalues",
        "global", "local", "aggregate", "warnings",
    }
    assert cb_result.payload["schema_version"] == 1
    assert [l["id"] for l in cb_result.payload["dataset"]["locations"]][:2] == ["r0c0", "r0c1"]
    assert cb_result.payload["dataset"]["timesteps"] == ["2000"]
