"""Full-run orchestration: statistics, inference, labels, aggregation,
caching, and canonical serialization.

Per analyzable timestep the engine restricts the weight matrices to present
locations, computes observed statistics, runs the shared-shuffle permutation
kernels, derives labels and the aggregate color per location, and collects
everything into a deterministic, canonically serialized ResultSet.
"""

from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

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
    active_backend_name,
)
from .aggregate import DEFAULT_PALETTE, PaletteConfig, aggregate_color
from .data_model import Dataset
from .errors import DegenerateError, InputError
from .labels import (
    ClusterLabel,
    assign_gi,
    assign_global,
    assign_local_geary,
    assign_local_moran,
)
from .permutation import (
    PermutationDistribution,
    distribution_sketch,
    global_perm_matrix,
    local_perm_matrix,
    significance_cutoffs,
)
from .rng import RngPolicy
from .stats import StatKind
from .weights import WeightMatrix, build_contiguity, restrict_to_present, row_normalize

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
METHOD_ORDER = ("local-moran", "local-geary", "gi-star", "gi")
GLOBAL_SKETCH_SIZE = 199

_LOCAL_KIND = {
    "local-moran": StatKind.LOCAL_MORAN,
    "local-geary": StatKind.LOCAL_GEARY,
    "gi-star": StatKind.GI_STAR,
    "gi": StatKind.GI,
}
_GLOBAL_KIND = {
    "local-moran": StatKind.GLOBAL_MORAN,
    "local-geary": StatKind.GLOBAL_GEARY,
    "gi-star": StatKind.GENERAL_G,
    "gi": StatKind.GENERAL_G,
}
_LOCAL_SLOT = {
    "local-moran": SLOT_LOCAL_MORAN,
    "local-geary": SLOT_LOCAL_GEARY,
    "gi-star": SLOT_GI_STAR,
    "gi": SLOT_GI,
}
_GLOBAL_SLOT = {
    StatKind.GLOBAL_MORAN: GLOBAL_SLOT_MORAN,
    StatKind.GLOBAL_GEARY: GLOBAL_SLOT_GEARY,
    StatKind.GENERAL_G: GLOBAL_SLOT_GENERAL_G,
}


@dataclass(frozen=True)
class RunConfig:
    """Analysis parameters; execution knobs (threads, backend) stay outside
    so they can never change result bytes."""

    methods: tuple[str, ...] = ("local-moran", "local-geary", "gi-star")
    contiguity: str = "queen"
    snap_precision: int = 6
    alpha: float = 0.05
    permutations: int = 999
    master_seed: int = 0
    sketch_size: int = 49
    store_local_sketches: bool = False

    def validated(self) -> "RunConfig":
        methods = tuple(m for m in METHOD_ORDER if m in set(self.methods))
        unknown = set(self.methods) - set(METHOD_ORDER)
        if unknown:
            raise InputError(f"unknown methods: {', '.join(sorted(unknown))}")
        if not methods:
            raise InputError("at least one method is required")
        if self.contiguity not in ("queen", "rook"):
            raise InputError(f"unknown contiguity rule {self.contiguity!r}")
        if not (0.0 < self.alpha <= 0.5):
            raise InputError("alpha must be in (0, 0.5]")
        if self.permutations < 19:
            raise InputError("permutation count must be >= 19")
        if self.sketch_size < 3:
            raise InputError("sketch size must be >= 3")
        # Fail fast on an alpha/M pair with no valid cutoff index.
        significance_cutoffs(np.zeros(self.permutations), self.permutations, self.alpha)
        return RunConfig(
            methods=methods,
            contiguity=self.contiguity,
            snap_precision=int(self.snap_precision),
            alpha=float(self.alpha),
            permutations=int(self.permutations),
            master_seed=int(self.master_seed),
            sketch_size=int(self.sketch_size),
            store_local_sketches=bool(self.store_local_sketches),
        )

    def to_dict(self) -> dict:
        return {
            "methods": list(self.methods),
            "contiguity": self.contiguity,
            "snap_precision": self.snap_precision,
            "alpha": self.alpha,
            "permutations": self.permutations,
            "master_seed": self.master_seed,
            "sketch_size": self.sketch_size,
            "store_local_sketches": self.store_local_sketches,
        }


def canonical_json(obj) -> str:
    """Sorted keys, compact separators, shortest round-trip floats, no NaN."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)


@dataclass
class ResultSet:
    """Schema-shaped result payload with canonical serialization."""

    payload: dict

    def to_json(self) -> str:
        return canonical_json(self.payload)

    @classmethod
    def from_json(cls, text: str) -> "ResultSet":
        return cls(payload=json.loads(text))

    def __eq__(self, other) -> bool:
        return isinstance(other, ResultSet) and self.payload == other.payload

    @property
    def location_ids(self) -> list[str]:
        return [loc["id"] for loc in self.payload["dataset"]["locations"]]

    @property
    def timesteps(self) -> list:
        return self.payload["dataset"]["timesteps"]

    @property
    def methods(self) -> list[str]:
        return self.payload["config"]["methods"]


def _jsonable(x):
    if x is None:
        return None
    f = float(x)
    return None if np.isnan(f) else f


def _sketch_list(sorted_values: np.ndarray, k: int) -> list[float]:
    return [float(v) for v in distribution_sketch(sorted_values, k)]


def _marker(label: ClusterLabel) -> dict:
    return {
        "value": None,
        "znorm": None,
        "pseudo_p": None,
        "lower": None,
        "upper": None,
        "label": label.value,
    }


def _global_marker(stat_name: str) -> dict:
    out = _marker(ClusterLabel.NO_DATA)
    out["statistic"] = stat_name
    out["sketch"] = None
    return out


def dataset_digest(dataset: Dataset) -> str:
    body = canonical_json(
        {
            "ids": dataset.areas.ids,
            "timesteps": [str(t) for t in dataset.timesteps],
            "values": [[_jsonable(v) for v in row] for row in dataset.values],
        }
    )
    return hashlib.sha256(body.encode("utf-8")).hexdigest()


def _matrix_rows(mat: np.ndarray) -> list[list[float | None]]:
    return [[_jsonable(v) for v in row] for row in mat]


def run_analysis(
    dataset: Dataset,
    config: RunConfig,
    threads: int = 0,
    backend: str | None = None,
    palette: PaletteConfig = DEFAULT_PALETTE,
) -> ResultSet:
    """Run the full analysis and return a deterministic ResultSet.

    `threads` is the worker count for the parallel kernels (0 = all cores);
    it affects speed only, never bytes.
    """
    cfg = config.validated()
    if not dataset.analyzable.any():
        detail = "; ".join(dataset.warnings) or "no analyzable timesteps"
        raise InputError(f"all timesteps degenerate: {detail}")
    _apply_threads(threads, backend)

    graph = build_contiguity(dataset.areas, cfg.contiguity, cfg.snap_precision)
    W = row_normalize(graph, include_self=False)
    Wstar = row_normalize(graph, include_self=True)

    warnings = list(dataset.warnings)
    if graph.islands:
        ids = dataset.areas.ids
        names = ", ".join(ids[i] for i in graph.islands[:5])
        warnings.append(
            f"{len(graph.islands)} location(s) with no neighbors: {names}"
            + (" ..." if len(graph.islands) > 5 else "")
        )

    n = dataset.n_locations
    M = cfg.permutations
    global_out: dict[str, dict] = {}
    local_out: dict[str, dict] = {}
    aggregate_out: dict[str, list] = {}

    for t, label in enumerate(dataset.timesteps):
        t_key = str(label)
        if not dataset.analyzable[t]:
            global_out[t_key] = {
                m: _global_marker(_GLOBAL_KIND[m].value) for m in cfg.methods
            }
            local_out[t_key] = {m: [_marker(ClusterLabel.NO_DATA) for _ in range(n)] for m in cfg.methods}
            agg = aggregate_color([ClusterLabel.NO_DATA] * len(cfg.methods), palette)
            aggregate_out[t_key] = [
                {"core": agg.core.value, "h": agg.h, "color": agg.hex_color}
            ] * n
            continue

        present = dataset.present[:, t]
        z = dataset.zvalues[:, t]
        n_eff = int(present.sum())
        Wt = restrict_to_present(W, present)
        Wstar_t = restrict_to_present(Wstar, present)
        rng = RngPolicy(cfg.master_seed, t)

        g_results, g_warn = _run_globals(cfg, Wt, z, n_eff, M, rng, backend)
        warnings.extend(f"timestep {label}: {w}" for w in g_warn)
        global_out[t_key] = g_results

        l_results, agg_rows, l_warn = _run_locals(
            cfg, Wt, Wstar_t, z, present, n_eff, M, rng, backend, palette
        )
        warnings.extend(f"timestep {label}: {w}" for w in l_warn)
        local_out[t_key] = l_results
        aggregate_out[t_key] = agg_rows

    payload = {
        "schema_version": SCHEMA_VERSION,
        "config": cfg.to_dict(),
        "dataset": {
            "locations": [
                {"id": a.id, "name": a.name} for a in dataset.areas.areas
            ],
            "timesteps": [str(t) for t in dataset.timesteps],
            "digest": dataset_digest(dataset),
        },
        "values": _matrix_rows(dataset.values),
        "zvalues": _matrix_rows(dataset.zvalues),
        "global": global_out,
        "local": local_out,
        "aggregate": aggregate_out,
        "warnings": warnings,
    }
    return ResultSet(payload=payload)


def _apply_threads(threads: int, backend: str | None) -> None:
    if active_backend_name(backend) != "numba":
        return
    import numba

    limit = int(numba.config.NUMBA_NUM_THREADS)
    numba.set_num_threads(limit if threads <= 0 else min(threads, limit))


def _run_globals(cfg, Wt, z, n_eff, M, rng, backend):
    """Observed + permuted global statistics for the enabled families."""
    wanted_kinds: dict[StatKind, bool] = {}
    observed: dict[StatKind, float] = {}
    markers: dict[StatKind, str] = {}
    warns: list[str] = []
    for name in cfg.methods:
        kind = _GLOBAL_KIND[name]
        if kind in wanted_kinds or kind in markers:
            continue
        fn = {
            StatKind.GLOBAL_MORAN: stats.global_moran,
            StatKind.GLOBAL_GEARY: stats.global_geary,
            StatKind.GENERAL_G: stats.general_g,
        }[kind]
        if kind == StatKind.GENERAL_G and n_eff < 3:
            markers[kind] = "needs >= 3 present values"
            warns.append(f"{kind.value} skipped: needs >= 3 present values")
            continue
        try:
            observed[kind] = fn(Wt, z, n_eff)
            wanted_kinds[kind] = True
        except DegenerateError as exc:
            markers[kind] = str(exc)
            warns.append(f"{kind.value} skipped: {exc}")

    dists: dict[StatKind, PermutationDistribution] = {}
    if wanted_kinds:
        mat = global_perm_matrix(Wt, z, n_eff, M, rng, wanted_kinds, backend=backend)
        for kind in wanted_kinds:
            dists[kind] = PermutationDistribution.from_values(
                mat[_GLOBAL_SLOT[kind]], observed[kind], cfg.alpha
            )

    out: dict[str, dict] = {}
    for name in cfg.methods:
        kind = _GLOBAL_KIND[name]
        if kind in markers:
            out[name] = _global_marker(kind.value)
            continue
        d = dists[kind]
        out[name] = {
            "statistic": kind.value,
            "value": d.observed,
            "znorm": d.znorm,
            "pseudo_p": d.pseudo_p,
            "lower": d.lower_cutoff,
            "upper": d.upper_cutoff,
            "label": assign_global(kind, d.observed, d.lower_cutoff, d.upper_cutoff).value,
            "sketch": _sketch_list(d.sorted_values, min(GLOBAL_SKETCH_SIZE, M)),
        }
    return out, warns


def _run_locals(cfg, Wt, Wstar_t, z, present, n_eff, M, rng, backend, palette):
    """Observed + permuted local statistics, labels, and aggregation."""
    n = z.shape[0]
    warns: list[str] = []
    enabled: list[str] = list(cfg.methods)
    observed: dict[str, np.ndarray] = {}
    skipped: dict[str, str] = {}
    lag = stats.spatial_lag(Wt, z)

    for name in enabled:
        kind = _LOCAL_KIND[name]
        if kind in (StatKind.GI_STAR, StatKind.GI) and n_eff < 3:
            skipped[name] = "needs >= 3 present values"
            warns.append(f"{name} skipped: needs >= 3 present values")
            continue
        try:
            observed[name] = {
                StatKind.LOCAL_MORAN: lambda: stats.local_moran(Wt, z, n_eff),
                StatKind.LOCAL_GEARY: lambda: stats.local_geary(Wt, z),
                StatKind.GI_STAR: lambda: stats.gi_star(Wstar_t, z, n_eff),
                StatKind.GI: lambda: stats.gi(Wt, z, n_eff),
            }[kind]()
        except DegenerateError as exc:
            skipped[name] = str(exc)
            warns.append(f"{name} skipped: {exc}")

    want = {_LOCAL_KIND[m]: True for m in observed}
    mat = None
    if want:
        mat = local_perm_matrix(Wt, Wstar_t, z, n_eff, M, rng, want, backend=backend)

    k_local = min(cfg.sketch_size, M)
    per_method: dict[str, list[dict]] = {m: [] for m in enabled}
    label_rows: list[list[ClusterLabel]] = [[] for _ in range(n)]

    for i in range(n):
        plain_empty = Wt.row_size(i) == 0
        scols, _ = Wstar_t.row(i)
        star_empty = scols.size == 0 or (scols.size == 1 and scols[0] == i)
        for name in enabled:
            if not present[i]:
                cell, lab = _marker(ClusterLabel.NO_DATA), ClusterLabel.NO_DATA
            elif name in skipped:
                cell, lab = _marker(ClusterLabel.NO_DATA), ClusterLabel.NO_DATA
            elif (name == "gi-star" and star_empty) or (name != "gi-star" and plain_empty):
                cell, lab = _marker(ClusterLabel.NO_NEIGHBORS), ClusterLabel.NO_NEIGHBORS
            else:
                cell, lab = _local_cell(
                    name, mat[_LOCAL_SLOT[name], i], observed[name][i],
                    z[i], lag[i], cfg, k_local,
                )
                if cell is None:
                    warns.append(f"{name} at location index {i}: degenerate permutation distribution")
                    cell, lab = _marker(ClusterLabel.NO_DATA), ClusterLabel.NO_DATA
            per_method[name].append(cell)
            label_rows[i].append(lab)

    agg_rows = []
    for i in range(n):
        agg = aggregate_color(label_rows[i], palette)
        agg_rows.append({"core": agg.core.value, "h": agg.h, "color": agg.hex_color})
    return per_method, agg_rows, warns


def _local_cell(name, perm_values, obs, z_i, lag_i, cfg, k_local):
    """Build one serialized local result cell, or None when degenerate."""
    try:
        dist = PermutationDistribution.from_values(perm_values, obs, cfg.alpha)
    except DegenerateError:
        return None, None
    if name == "local-moran":
        lab = assign_local_moran(
            dist.observed, dist.pseudo_p, z_i, lag_i, cfg.alpha,
            lower=dist.lower_cutoff, upper=dist.upper_cutoff,
        )
    elif name == "local-geary":
        lab = assign_local_geary(
            dist.observed, dist.pseudo_p, dist.lower_cutoff, dist.upper_cutoff,
            z_i, lag_i, cfg.alpha,
        )
    else:
        lab = assign_gi(
            dist.observed, dist.pseudo_p, dist.lower_cutoff, dist.upper_cutoff, cfg.alpha
        )
    cell = {
        "value": dist.observed,
        "znorm": dist.znorm,
        "pseudo_p": dist.pseudo_p,
        "lower": dist.lower_cutoff,
        "upper": dist.upper_cutoff,
        "label": lab.value,
    }
    if cfg.store_local_sketches:
        cell["sketch"] = _sketch_list(dist.sorted_values, k_local)
    return cell, lab


# -- caching and output --------------------------------------------------------


def make_cache_key(geometry_bytes: bytes, values_bytes: bytes, config: RunConfig) -> str:
    h = hashlib.sha256()
    h.update(geometry_bytes)
    h.update(b"\x00")
    h.update(values_bytes)
    h.update(b"\x00")
    h.update(canonical_json(config.validated().to_dict()).encode("utf-8"))
    return h.hexdigest()


def cache_lookup(key: str, cache_dir) -> ResultSet | None:
    """Return the cached ResultSet for `key`, quarantining corrupt files."""
    path = Path(cache_dir) / f"{key}.json"
    if not path.exists():
        return None
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
        if doc.get("cache_key") != key or "result" not in doc:
            raise ValueError("cache key mismatch")
        return ResultSet(payload=doc["result"])
    except (ValueError, OSError) as exc:
        quarantine = path.with_suffix(".json.corrupt")
        try:
            path.rename(quarantine)
        except OSError:
            pass
        log.warning("corrupt cache file %s quarantined (%s)", path, exc)
        return None


def cache_store(key: str, rs: ResultSet, cache_dir) -> Path:
    root = Path(cache_dir)
    root.mkdir(parents=True, exist_ok=True)
    path = root / f"{key}.json"
    body = canonical_json({"cache_key": key, "result": rs.payload})
    path.write_text(body, encoding="utf-8")
    return path


def write_results(rs: ResultSet, path) -> None:
    out = Path(path)
    if not out.parent.exists():
        raise InputError(f"output directory does not exist: {out.parent}")
    out.write_text(rs.to_json(), encoding="utf-8")
