"""Input parsing and dataset assembly.

Geometry arrives as a GeoJSON FeatureCollection of polygonal areas, values as
a long-format CSV (id, timestep, value).  `join_dataset` aligns the two into a
location x timestep matrix and z-normalizes each timestep column over its
present entries.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateError, InputError

_NA_TOKENS = {"", "na", "n/a", "nan", "null", "none"}


@dataclass(frozen=True)
class Area:
    id: str
    name: str | None
    # Polygon geometry as parsed: list of polygons, each a list of rings,
    # each ring a list of [lon, lat] pairs (first == last).
    polygons: tuple


@dataclass(frozen=True)
class AreaSet:
    areas: tuple[Area, ...]

    def __len__(self) -> int:
        return len(self.areas)

    @property
    def ids(self) -> list[str]:
        return [a.id for a in self.areas]

    def index_of(self) -> dict[str, int]:
        return {a.id: i for i, a in enumerate(self.areas)}


@dataclass(frozen=True)
class ValueRow:
    id: str
    timestep: object
    value: float | None


@dataclass(frozen=True)
class TimeSeriesTable:
    rows: tuple[ValueRow, ...]

    def __len__(self) -> int:
        return len(self.rows)


@dataclass
class Dataset:
    """Joined, validated, z-normalized dataset.

    `values` and `zvalues` are location x timestep float matrices with NaN at
    missing cells; `present` is the matching boolean mask.  `analyzable` marks
    timesteps with >= 2 present values and nonzero spread; the others carry a
    warning and are skipped downstream.
    """

    areas: AreaSet
    timesteps: list
    values: np.ndarray
    zvalues: np.ndarray
    present: np.ndarray
    mu: np.ndarray
    sigma: np.ndarray
    analyzable: np.ndarray
    warnings: list[str] = field(default_factory=list)

    @property
    def n_locations(self) -> int:
        return self.values.shape[0]

    @property
    def n_timesteps(self) -> int:
        return self.values.shape[1]


def _ring_valid(ring) -> bool:
    return (
        isinstance(ring, list)
        and len(ring) >= 4
        and all(isinstance(p, list) and len(p) >= 2 for p in ring)
        and ring[0][:2] == ring[-1][:2]
    )


def _freeze(node):
    return tuple(_freeze(x) for x in node) if isinstance(node, (list, tuple)) else node


def parse_geometry(data: bytes, id_field: str, name_field: str | None = None) -> AreaSet:
    """Parse a GeoJSON FeatureCollection into an AreaSet.

    Feature ids are read from properties[id_field], falling back to the
    feature-level "id" member.  Only Polygon / MultiPolygon geometry is
    accepted; feature order is preserved.
    """
    try:
        doc = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise InputError(f"malformed GeoJSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("type") != "FeatureCollection":
        raise InputError("expected a GeoJSON FeatureCollection")
    features = doc.get("features")
    if not isinstance(features, list):
        raise InputError("FeatureCollection has no features array")

    areas: list[Area] = []
    seen: set[str] = set()
    for idx, feat in enumerate(features):
        props = feat.get("properties") or {}
        raw_id = props.get(id_field, feat.get("id"))
        if raw_id is None or str(raw_id) == "":
            raise InputError(f"feature {idx}: missing id field {id_field!r}")
        area_id = str(raw_id)
        if area_id in seen:
            raise InputError(f"feature {idx}: duplicate id {area_id!r}")
        seen.add(area_id)

        geom = feat.get("geometry") or {}
        gtype = geom.get("type")
        coords = geom.get("coordinates")
        if gtype == "Polygon":
            polygons = [coords]
        elif gtype == "MultiPolygon":
            polygons = coords
        else:
            raise InputError(f"feature {idx}: non-areal geometry {gtype!r}")
        for poly in polygons or []:
            for ring in poly:
                if not _ring_valid(ring):
                    raise InputError(
                        f"feature {idx}: invalid ring (need >= 4 closed coordinate pairs)"
                    )

        name = None
        if name_field is not None and props.get(name_field) is not None:
            name = str(props[name_field])
        areas.append(Area(id=area_id, name=name, polygons=_freeze(polygons)))
    return AreaSet(areas=tuple(areas))


def parse_values(data: bytes, id_col: str, time_col: str, value_col: str) -> TimeSeriesTable:
    """Parse a long-format CSV into a TimeSeriesTable.

    Empty or NA-like value cells become missing; any other non-numeric value
    is an error.  Duplicate (id, timestep) pairs are rejected.
    """
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise InputError(f"values file is not UTF-8: {exc}") from exc
    reader = csv.DictReader(io.StringIO(text))
    header = reader.fieldnames or []
    for col in (id_col, time_col, value_col):
        if col not in header:
            raise InputError(f"values file is missing column {col!r}")

    rows: list[ValueRow] = []
    seen: set[tuple[str, str]] = set()
    for line_no, rec in enumerate(reader, start=2):
        rid = str(rec[id_col]).strip()
        tlabel = str(rec[time_col]).strip()
        key = (rid, tlabel)
        if key in seen:
            raise InputError(f"line {line_no}: duplicate entry for ({rid}, {tlabel})")
        seen.add(key)
        raw = (rec[value_col] or "").strip()
        if raw.lower() in _NA_TOKENS:
            value = None
        else:
            try:
                value = float(raw)
            except ValueError as exc:
                raise InputError(f"line {line_no}: unparseable value {raw!r}") from exc
        rows.append(ValueRow(id=rid, timestep=tlabel, value=value))
    return TimeSeriesTable(rows=tuple(rows))


def zscore_timestep(values) -> np.ndarray:
    """Z-normalize one timestep column over its present (non-NaN) entries.

    Uses the population standard deviation, so the present z-scores satisfy
    sum(z) = 0 and sum(z^2) = n exactly (up to rounding).  Missing entries
    stay NaN.
    """
    x = np.asarray(
        [np.nan if v is None else float(v) for v in values]
        if not isinstance(values, np.ndarray)
        else values,
        dtype=np.float64,
    )
    mask = ~np.isnan(x)
    n = int(mask.sum())
    if n < 2:
        raise DegenerateError("insufficient data: need >= 2 present values")
    mu = float(x[mask].mean())
    sigma = float(x[mask].std())
    if sigma == 0.0:
        raise DegenerateError("degenerate timestep: all present values identical")
    z = np.full_like(x, np.nan)
    z[mask] = (x[mask] - mu) / sigma
    return z


def sort_timesteps(labels) -> list:
    """Numeric ascending when every label parses as a number, else lexicographic."""
    labels = list(labels)
    try:
        keyed = sorted(labels, key=lambda t: float(t))
        return keyed
    except (TypeError, ValueError):
        return sorted(labels, key=str)


def join_dataset(areas: AreaSet, table: TimeSeriesTable) -> Dataset:
    """Align a value table against an AreaSet into a Dataset.

    Rows are ordered by area file order, columns by sorted timestep label.
    Table ids unknown to the geometry are an error; areas without any rows
    get an all-missing row and a warning.
    """
    index = areas.index_of()
    unknown = sorted({r.id for r in table.rows if r.id not in index})
    if unknown:
        shown = ", ".join(unknown[:5])
        raise InputError(f"unknown location {shown}" + (" ..." if len(unknown) > 5 else ""))

    timesteps = sort_timesteps({r.timestep for r in table.rows})
    if not timesteps:
        raise InputError("values table has no rows")
    t_index = {t: j for j, t in enumerate(timesteps)}

    n, T = len(areas), len(timesteps)
    values = np.full((n, T), np.nan)
    for r in table.rows:
        if r.value is not None:
            values[index[r.id], t_index[r.timestep]] = r.value
    present = ~np.isnan(values)

    warnings: list[str] = []
    covered = {r.id for r in table.rows}
    for a in areas.areas:
        if a.id not in covered:
            warnings.append(f"location {a.id} has no value rows; treated as all-missing")

    zvalues = np.full((n, T), np.nan)
    mu = np.full(T, np.nan)
    sigma = np.full(T, np.nan)
    analyzable = np.zeros(T, dtype=bool)
    for j, label in enumerate(timesteps):
        try:
            zvalues[:, j] = zscore_timestep(values[:, j])
        except DegenerateError as exc:
            warnings.append(f"timestep {label}: {exc}; skipped")
            continue
        col = values[:, j][present[:, j]]
        mu[j] = col.mean()
        sigma[j] = col.std()
        analyzable[j] = True

    return Dataset(
        areas=areas,
        timesteps=timesteps,
        values=values,
        zvalues=zvalues,
        present=present,
        mu=mu,
        sigma=sigma,
        analyzable=analyzable,
        warnings=warnings,
    )
