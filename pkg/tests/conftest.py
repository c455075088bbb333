"""Shared fixtures: unit-square grids, checkerboard data, GeoJSON builders."""

import json

import numpy as np
import pytest

from lisakit.data_model import AreaSet, join_dataset, parse_geometry, parse_values
from lisakit.weights import NeighborGraph, row_normalize


def square_feature(fid, x, y, name=None, size=1.0):
    props = {"fips": fid}
    if name is not None:
        props["name"] = name
    return {
        "type": "Feature",
        "properties": props,
        "geometry": {
            "type": "Polygon",
            "coordinates": [[
                [x, y], [x + size, y], [x + size, y + size], [x, y + size], [x, y],
            ]],
        },
    }


def grid_geojson(rows, cols, size=1.0):
    feats = [
        square_feature(f"r{i}c{j}", j * size, i * size, size=size)
        for i in range(rows)
        for j in range(cols)
    ]
    return json.dumps({"type": "FeatureCollection", "features": feats}).encode()


def grid_areas(rows, cols) -> AreaSet:
    return parse_geometry(grid_geojson(rows, cols), "fips")


def grid_graph(rows, cols, rule="rook") -> NeighborGraph:
    """Adjacency of a rows x cols grid, built directly (independent of the
    polygon-hashing path)."""
    n = rows * cols
    steps = [(1, 0), (-1, 0), (0, 1), (0, -1)]
    if rule == "queen":
        steps += [(1, 1), (1, -1), (-1, 1), (-1, -1)]
    adj = [[] for _ in range(n)]
    for i in range(rows):
        for j in range(cols):
            for di, dj in steps:
                ii, jj = i + di, j + dj
                if 0 <= ii < rows and 0 <= jj < cols:
                    adj[i * cols + j].append(ii * cols + jj)
    return NeighborGraph(
        n=n, adjacency=tuple(tuple(sorted(a)) for a in adj)
    )


def grid_weights(rows, cols, rule="rook", include_self=False):
    return row_normalize(grid_graph(rows, cols, rule), include_self)


def checkerboard(rows, cols):
    """+1/-1 alternating values; exact z-scores of themselves on even grids."""
    vals = np.fromfunction(lambda i, j: (-1.0) ** (i + j), (rows, cols))
    return vals.ravel()


def values_csv(ids, timesteps, matrix) -> bytes:
    lines = ["fips,year,rate"]
    for i, loc in enumerate(ids):
        for j, t in enumerate(timesteps):
            v = matrix[i][j]
            cell = "" if v is None or (isinstance(v, float) and np.isnan(v)) else repr(float(v))
            lines.append(f"{loc},{t},{cell}")
    return ("\n".join(lines) + "\n").encode()


def grid_dataset(rows, cols, matrix, timesteps=None):
    """Dataset over a rows x cols grid with matrix[loc][t] values."""
    areas = grid_areas(rows, cols)
    timesteps = timesteps or list(range(len(matrix[0])))
    table = parse_values(values_csv(areas.ids, timesteps, matrix), "fips", "year", "rate")
    return join_dataset(areas, table)


@pytest.fixture
def cb4():
    """4x4 checkerboard: z-vector, rook W, self-included Wstar."""
    z = checkerboard(4, 4)
    return z, grid_weights(4, 4), grid_weights(4, 4, include_self=True)
