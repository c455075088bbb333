"""Contiguity neighbor graphs and row-normalized sparse weight matrices.

Neighbors are detected by hashing rounded ring vertices (queen) or rounded
undirected ring edges (rook), which is O(total vertices) and robust to tiny
coordinate noise below the snap precision.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from .data_model import AreaSet

ROW_SUM_TOL = 1e-12


@dataclass(frozen=True)
class NeighborGraph:
    """Symmetric, irreflexive adjacency over `n` locations."""

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    islands: tuple[int, ...] = ()


@dataclass(frozen=True)
class WeightMatrix:
    """CSR row-normalized weights; every nonempty row sums to 1."""

    n: int
    indptr: np.ndarray
    indices: np.ndarray
    weights: np.ndarray
    self_included: bool = False

    def row(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        lo, hi = self.indptr[i], self.indptr[i + 1]
        return self.indices[lo:hi], self.weights[lo:hi]

    def row_size(self, i: int) -> int:
        return int(self.indptr[i + 1] - self.indptr[i])

    def nonempty(self) -> np.ndarray:
        return np.diff(self.indptr) > 0

    def row_sums(self) -> np.ndarray:
        return np.add.reduceat(
            np.append(self.weights, 0.0), self.indptr[:-1]
        ) * (np.diff(self.indptr) > 0)


def _rounded(coord, snap: int) -> tuple[float, float]:
    return (round(float(coord[0]), snap), round(float(coord[1]), snap))


def build_contiguity(areas: AreaSet, rule: str = "queen", snap_precision: int = 6) -> NeighborGraph:
    """Derive queen (shared vertex) or rook (shared edge) adjacency.

    Coordinates are rounded to `snap_precision` decimal places before
    hashing.  Isolated areas are permitted; they are reported in `islands`.
    """
    if rule not in ("queen", "rook"):
        raise ValueError(f"unknown contiguity rule {rule!r}")
    n = len(areas)
    buckets: defaultdict = defaultdict(set)
    for i, area in enumerate(areas.areas):
        for poly in area.polygons:
            for ring in poly:
                pts = [_rounded(c, snap_precision) for c in ring]
                if rule == "queen":
                    for p in pts:
                        buckets[p].add(i)
                else:
                    for a, b in zip(pts[:-1], pts[1:]):
                        if a != b:
                            buckets[(min(a, b), max(a, b))].add(i)

    neighbors: list[set[int]] = [set() for _ in range(n)]
    for members in buckets.values():
        if len(members) > 1:
            for i in members:
                neighbors[i] |= members
    adjacency = tuple(tuple(sorted(s - {i})) for i, s in enumerate(neighbors))
    islands = tuple(i for i, adj in enumerate(adjacency) if not adj)
    return NeighborGraph(n=n, adjacency=adjacency, islands=islands)


def row_normalize(graph: NeighborGraph, include_self: bool = False) -> WeightMatrix:
    """Binary adjacency (plus the diagonal when `include_self`) divided by
    row count.  Rows with no adjacency stay empty either way, so an island is
    always recognizable downstream as "no neighbors"."""
    indptr = np.zeros(graph.n + 1, dtype=np.int64)
    indices: list[int] = []
    weights: list[float] = []
    for i, adj in enumerate(graph.adjacency):
        if adj:
            cols = sorted((*adj, i)) if include_self else list(adj)
            w = 1.0 / len(cols)
            indices.extend(cols)
            weights.extend([w] * len(cols))
        indptr[i + 1] = len(indices)
    return WeightMatrix(
        n=graph.n,
        indptr=indptr,
        indices=np.asarray(indices, dtype=np.int64),
        weights=np.asarray(weights, dtype=np.float64),
        self_included=include_self,
    )


def restrict_to_present(matrix: WeightMatrix, present: np.ndarray) -> WeightMatrix:
    """Drop columns that are missing at the current timestep and re-normalize.

    Rows of missing locations are emptied.  A present location whose
    neighbors are all missing keeps only its diagonal entry (self-included
    matrices) or becomes empty, both of which read as "no neighbors"."""
    present = np.asarray(present, dtype=bool)
    if present.shape[0] != matrix.n:
        raise ValueError("present mask length does not match matrix size")
    if present.all():
        return matrix

    indptr = np.zeros(matrix.n + 1, dtype=np.int64)
    indices: list[int] = []
    weights: list[float] = []
    for i in range(matrix.n):
        if present[i]:
            cols, w = matrix.row(i)
            keep = present[cols]
            if keep.any():
                kept_w = w[keep]
                indices.extend(cols[keep].tolist())
                weights.extend((kept_w / kept_w.sum()).tolist())
        indptr[i + 1] = len(indices)
    return WeightMatrix(
        n=matrix.n,
        indptr=indptr,
        indices=np.asarray(indices, dtype=np.int64),
        weights=np.asarray(weights, dtype=np.float64),
        self_included=matrix.self_included,
    )


def adjacency_json(graph: NeighborGraph, areas: AreaSet) -> dict:
    """Debug export: {id: [neighbor ids]}."""
    ids = areas.ids
    return {ids[i]: [ids[j] for j in adj] for i, adj in enumerate(graph.adjacency)}
