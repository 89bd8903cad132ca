"""Nearest-point projection onto linearly mapped simplices and complexes.

For a batch of queries and one simplex, the solver computes affine-hull
barycentric coordinates through a pseudoinverse; queries whose coordinates
are all nonnegative are done, the rest descend to the boundary face opposite
their first negative coordinate and recurse. Over a whole complex the search
runs facet by facet in index order with a deterministic tie rule, using the
affine-hull distance (a lower bound for the simplex distance) to skip facets
that provably cannot win.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .complexes import (
    EPS_LAMBDA,
    BarycentricPoint,
    Simplex,
    SimplicialComplex,
    as_simplex,
    smallest_containing_simplex,
)

# Relative singular-value cutoff: collapsed simplex images degrade gracefully
# to lower-dimensional (ultimately vertex-like) behavior instead of failing.
SV_CUTOFF = 1e-10

# Distances within this absolute band are treated as ties between facets,
# broken toward the lower facet index.
TIE_TOL = 1e-12


@dataclass
class LinearMap:
    """Vertex positions in R^m, extended over simplices by barycentric interpolation."""

    positions: np.ndarray

    def __post_init__(self):
        self.positions = np.asarray(self.positions, dtype=float)
        if self.positions.ndim != 2:
            raise ValueError("positions must be an (n_vertices, ambient_dim) array")
        if not np.isfinite(self.positions).all():
            raise ValueError("vertex positions must be finite")

    @property
    def vertex_count(self) -> int:
        return self.positions.shape[0]

    @property
    def ambient_dim(self) -> int:
        return self.positions.shape[1]

    def image_of(self, point: BarycentricPoint) -> np.ndarray:
        return point.coords @ self.positions[list(point.simplex)]


@dataclass
class ProjectionResult:
    """Nearest point on one simplex image: reduced barycentric point, its
    ambient image, the distance to the query, and the facet searched."""

    point: BarycentricPoint
    image: np.ndarray
    distance: float
    facet: Simplex


def pseudoinverse(matrix, sv_cutoff: float = SV_CUTOFF) -> np.ndarray:
    """Moore-Penrose pseudoinverse by SVD.

    Singular values below ``sv_cutoff`` times the largest are treated as zero,
    so rank-deficient inputs are handled rather than rejected.
    """
    matrix = np.asarray(matrix, dtype=float)
    if not np.isfinite(matrix).all():
        raise ValueError("matrix entries must be finite")
    return np.linalg.pinv(matrix, rcond=sv_cutoff)


def _project_batch(vertices: Simplex, positions: np.ndarray, batch: np.ndarray,
                   sv_cutoff: float, stats: dict | None = None, _depth: int = 0):
    """Project `batch` onto the simplex spanned by `vertices` under `positions`.

    Returns (coords, images): facet-level barycentric coordinates of shape
    (r, k) and nearest-point images of shape (r, m). Coordinates pinned to a
    boundary face are exact zeros.
    """
    if stats is not None:
        if _depth > 0:
            stats["calls"] = stats.get("calls", 0) + 1
        stats["max_depth"] = max(stats.get("max_depth", 0), _depth)
    k = len(vertices)
    r = batch.shape[0]
    W = positions[list(vertices)]
    if k == 1:
        return np.ones((r, 1)), np.broadcast_to(W[0], batch.shape).copy()

    M = (W[1:] - W[0]).T                      # (m, k-1), columns w_i - w_0
    B = pseudoinverse(M, sv_cutoff) @ (batch - W[0]).T
    full = np.empty((k, r))
    full[1:] = B
    full[0] = 1.0 - B.sum(axis=0)

    coords = np.empty((r, k))
    images = np.empty((r, positions.shape[1]))
    neg = full < 0.0
    todo = neg.any(axis=0)
    done = ~todo
    if done.any():
        coords[done] = full[:, done].T
        images[done] = coords[done] @ W
    for row in range(k):
        if not todo.any():
            break
        sel = todo & neg[row]
        if not sel.any():
            continue
        todo &= ~sel
        face = vertices[:row] + vertices[row + 1:]
        sub_coords, sub_images = _project_batch(
            face, positions, batch[sel], sv_cutoff, stats, _depth + 1
        )
        block = np.zeros((sub_coords.shape[0], k))
        block[:, [i for i in range(k) if i != row]] = sub_coords
        coords[sel] = block
        images[sel] = sub_images
    return coords, images


def _as_batch(batch, ambient_dim: int) -> np.ndarray:
    batch = np.atleast_2d(np.asarray(batch, dtype=float))
    if batch.shape[0] == 0:
        raise ValueError("point batch is empty")
    if batch.shape[1] != ambient_dim:
        raise ValueError(
            f"points have dimension {batch.shape[1]}, map has ambient dimension {ambient_dim}"
        )
    if not np.isfinite(batch).all():
        raise ValueError("point batch must be finite")
    return batch


def nearest_on_simplex(simplex, linmap: LinearMap, batch,
                       sv_cutoff: float = SV_CUTOFF,
                       eps_lambda: float = EPS_LAMBDA,
                       stats: dict | None = None) -> list[ProjectionResult]:
    """Nearest points on one mapped simplex for every query in the batch."""
    s = as_simplex(simplex)
    if s[-1] >= linmap.vertex_count:
        raise ValueError("simplex references a vertex outside the map")
    batch = _as_batch(batch, linmap.ambient_dim)
    coords, images = _project_batch(s, linmap.positions, batch, sv_cutoff, stats)
    dists = np.linalg.norm(batch - images, axis=1)
    return [
        ProjectionResult(
            smallest_containing_simplex(s, coords[i], eps_lambda),
            images[i],
            float(dists[i]),
            s,
        )
        for i in range(batch.shape[0])
    ]


def _facet_blocks(facets, max_pairs: int, n_points: int):
    """Consecutive runs of same-size facets, split so block_size * n_points stays bounded."""
    cap = max(1, max_pairs // max(n_points, 1))
    start = 0
    n = len(facets)
    while start < n:
        size = len(facets[start])
        end = start
        while end < n and len(facets[end]) == size and end - start < cap:
            end += 1
        yield start, end, size
        start = end


def _block_scan(facets, start: int, end: int, size: int,
                positions: np.ndarray, batch: np.ndarray, sv_cutoff: float):
    """Affine-solve a block of same-size facets against the whole batch.

    Returns (dist, has_neg): (F, r) arrays. `dist` is the distance to the
    affine hull of each facet image; where `has_neg` is False the hull
    projection lies inside the simplex and the distance is exact.
    """
    idx = np.array([facets[i] for i in range(start, end)], dtype=np.intp)
    W = positions[idx]                                    # (F, k, m)
    if size == 1:
        diff = batch[None, :, :] - W[:, 0, None, :]
        dist = np.sqrt(np.einsum("frm,frm->fr", diff, diff))
        return dist, np.zeros(dist.shape, dtype=bool)
    M = np.swapaxes(W[:, 1:, :] - W[:, :1, :], 1, 2)      # (F, m, k-1)
    P = np.linalg.pinv(M, rcond=sv_cutoff)                # (F, k-1, m)
    S = batch[None, :, :] - W[:, 0, None, :]              # (F, r, m)
    B = np.einsum("fdm,frm->frd", P, S)                   # (F, r, k-1)
    first = 1.0 - B.sum(axis=2)
    has_neg = (B < 0.0).any(axis=2) | (first < 0.0)
    images = first[:, :, None] * W[:, 0, None, :] + np.einsum("frd,fdm->frm", B, W[:, 1:, :])
    diff = batch[None, :, :] - images
    dist = np.sqrt(np.einsum("frm,frm->fr", diff, diff))
    return dist, has_neg


def nearest_on_complex(K: SimplicialComplex, linmap: LinearMap, batch,
                       restrict=None,
                       sv_cutoff: float = SV_CUTOFF,
                       eps_lambda: float = EPS_LAMBDA,
                       threads: int = 1) -> list[ProjectionResult]:
    """Nearest point over all facets of the complex, for every query.

    `restrict`, when given, lists for each point the facet indices allowed in
    its search. Facets are compared in ascending index order; a facet replaces
    the incumbent only when it is closer by more than the tie band, so results
    do not depend on the degree of parallelism.
    """
    if linmap.vertex_count < K.vertex_count:
        raise ValueError("map does not cover every vertex of the complex")
    batch = _as_batch(batch, linmap.ambient_dim)
    r = batch.shape[0]
    n_facets = len(K.facets)

    allowed = None
    if restrict is not None:
        if len(restrict) != r:
            raise ValueError("need one facet list per point")
        allowed = np.zeros((n_facets, r), dtype=bool)
        for p, facet_ids in enumerate(restrict):
            ids = np.asarray(list(facet_ids), dtype=np.intp)
            if ids.size == 0:
                raise ValueError(f"empty facet restriction for point {p}")
            if ids.min() < 0 or ids.max() >= n_facets:
                raise ValueError(f"facet restriction out of range for point {p}")
            allowed[ids, p] = True

    positions = linmap.positions
    best_dist = np.full(r, np.inf)
    best_facet = np.full(r, -1, dtype=np.intp)

    blocks = list(_facet_blocks(K.facets, max_pairs=2_000_000, n_points=r))

    def scan(block):
        start, end, size = block
        return _block_scan(K.facets, start, end, size, positions, batch, sv_cutoff)

    if threads > 1:
        pool = ThreadPoolExecutor(max_workers=threads)
        scanned = pool.map(scan, blocks)
    else:
        pool = None
        scanned = map(scan, blocks)

    try:
        for (start, end, _size), (dist, has_neg) in zip(blocks, scanned):
            for fi in range(start, end):
                row = fi - start
                d = dist[row]
                neg = has_neg[row]
                ok = allowed[fi] if allowed is not None else None
                exact = ~neg if ok is None else (~neg & ok)
                improved = exact & (d < best_dist - TIE_TOL)
                if improved.any():
                    best_dist[improved] = d[improved]
                    best_facet[improved] = fi
                # Affine distance is a lower bound on the simplex distance, so
                # facets it cannot bring under the incumbent are skipped.
                live = neg & (d < best_dist - TIE_TOL)
                if ok is not None:
                    live &= ok
                if live.any():
                    pts = np.nonzero(live)[0]
                    _, images = _project_batch(K.facets[fi], positions, batch[pts], sv_cutoff)
                    de = np.linalg.norm(batch[pts] - images, axis=1)
                    upd = de < best_dist[pts] - TIE_TOL
                    if upd.any():
                        best_dist[pts[upd]] = de[upd]
                        best_facet[pts[upd]] = fi
    finally:
        if pool is not None:
            pool.shutdown(wait=False)

    if (best_facet < 0).any():
        missing = int(np.nonzero(best_facet < 0)[0][0])
        raise ValueError(f"no facet available for point {missing}")

    # Re-solve each point on its winning facet to materialize coordinates.
    results: list[ProjectionResult | None] = [None] * r
    for fi in np.unique(best_facet):
        pts = np.nonzero(best_facet == fi)[0]
        facet = K.facets[fi]
        coords, images = _project_batch(facet, positions, batch[pts], sv_cutoff)
        dists = np.linalg.norm(batch[pts] - images, axis=1)
        for j, p in enumerate(pts):
            results[p] = ProjectionResult(
                smallest_containing_simplex(facet, coords[j], eps_lambda),
                images[j],
                float(dists[j]),
                facet,
            )
    return results  # type: ignore[return-value]


def write_positions(linmap: LinearMap, path) -> None:
    with open(path, "w") as fh:
        json.dump({"positions": linmap.positions.tolist()}, fh)
        fh.write("\n")


def read_positions(path) -> LinearMap:
    with open(path) as fh:
        data = json.load(fh)
    try:
        return LinearMap(np.asarray(data["positions"], dtype=float))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed positions record: {exc}") from exc
