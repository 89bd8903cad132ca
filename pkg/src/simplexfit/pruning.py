"""Second stage: project fitted points toward boundary simplices and drop
simplices left without interior support.

Each point descends from its fitted projection one boundary face at a time,
as long as the acceptance test passes: in euclidean mode the hop distance
must stay within the threshold, in barycentric-min mode the point's smallest
coordinate in its current simplex must (a scale-free notion of being near
the boundary). The pruned complex is the union of the final simplices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .complexes import (
    BarycentricPoint,
    SimplicialComplex,
    boundary_faces,
    compact_complex,
)
from .nearest import TIE_TOL, LinearMap, nearest_on_simplex
from .fitting import FitResult

EUCLIDEAN = "euclidean"
BARY_MIN = "bary-min"


@dataclass
class PruneConfig:
    alpha: float
    mode: str = EUCLIDEAN
    # Per accepted step the threshold is multiplied by this; 1.0 keeps it fixed.
    alpha_decay: float = 1.0

    def __post_init__(self):
        if self.alpha < 0:
            raise ValueError("alpha must be >= 0")
        if self.mode not in (EUCLIDEAN, BARY_MIN):
            raise ValueError(f"unknown prune mode {self.mode!r}")
        if self.alpha_decay <= 0:
            raise ValueError("alpha_decay must be > 0")


@dataclass
class PruneResult:
    complex: SimplicialComplex        # union of final simplices, original vertex indices
    points: list[BarycentricPoint]    # final reduced point per cloud index


def _nearest_on_boundary(simplex, linmap: LinearMap, query: np.ndarray):
    """Best projection of `query` onto the boundary faces of the simplex.

    Faces are tried in removed-vertex order; a later face wins only by more
    than the tie band.
    """
    best = None
    for face in boundary_faces(simplex):
        res = nearest_on_simplex(face, linmap, query[None, :])[0]
        if best is None or res.distance < best.distance - TIE_TOL:
            best = res
    return best


def prune(fit_result: FitResult, K: SimplicialComplex, config: PruneConfig) -> PruneResult:
    """Run the boundary descent for every fitted point and assemble the
    surviving subcomplex."""
    linmap = fit_result.linear_map
    if linmap.vertex_count < K.vertex_count:
        raise ValueError("fit map does not cover every vertex of the complex")
    finals: list[BarycentricPoint] = []
    for res in fit_result.assignments:
        point = res.point
        if not all(v < K.vertex_count for v in point.simplex):
            raise ValueError("fit assignments reference vertices outside the complex")
        alpha = config.alpha
        while len(point.simplex) > 1:
            candidate = _nearest_on_boundary(point.simplex, linmap, linmap.image_of(point))
            if config.mode == EUCLIDEAN:
                accept = candidate.distance <= alpha
            else:
                accept = float(point.coords.min()) <= alpha
            if not accept:
                break
            point = candidate.point
            alpha *= config.alpha_decay
        finals.append(point)
    facets = {bp.simplex for bp in finals}
    pruned = SimplicialComplex(facets, vertex_count=K.vertex_count)
    return PruneResult(pruned, finals)


def reduced_representation(result: PruneResult, linmap: LinearMap, index: int):
    """Barycentric code of one point and its ambient reconstruction."""
    bp = result.points[index]
    return bp.simplex, bp.coords.copy(), linmap.image_of(bp)


def write_prune_json(result: PruneResult, path) -> None:
    """Pruned complex with compact vertex numbering plus the map back to the
    original indices."""
    compacted, original_ids = compact_complex(result.complex)
    with open(path, "w") as fh:
        json.dump({"complex": compacted.to_dict(), "vertex_map": original_ids}, fh)
        fh.write("\n")


def write_codes_jsonl(result: PruneResult, linmap: LinearMap, cloud, path) -> None:
    """One record per data point: simplex id, barycentric code, reconstruction,
    and the residual against the original point."""
    cloud = np.atleast_2d(np.asarray(cloud, dtype=float))
    if cloud.shape[0] != len(result.points):
        raise ValueError("cloud size does not match pruned point count")
    with open(path, "w") as fh:
        for i, bp in enumerate(result.points):
            recon = linmap.image_of(bp)
            record = {
                "y_index": i,
                "simplex": list(bp.simplex),
                "lambda": [float(v) for v in bp.coords],
                "reconstruction": [float(v) for v in recon],
                "residual": float(np.linalg.norm(cloud[i] - recon)),
            }
            fh.write(json.dumps(record) + "\n")
