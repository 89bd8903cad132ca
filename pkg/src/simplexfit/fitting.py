"""Iterative fitting of a mapped simplicial complex to a point cloud.

Each iteration projects every data point onto the current image of the
complex, collects per-vertex pulls weighted by barycentric coordinates, and
moves all vertices simultaneously to the centroid of their blended pulls.
With a 0-dimensional complex and zero learning rate this is exactly Lloyd's
k-means iteration on the vertex positions.
"""

from __future__ import annotations

import json
import warnings
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from .complexes import BarycentricPoint, SimplicialComplex
from .nearest import LinearMap, ProjectionResult, nearest_on_complex

INTERIOR = "interior"
CLOSED = "closed"

# With facet restriction active, an unrestricted search is re-run this often
# to bound drift from stale assignments.
FULL_SEARCH_PERIOD = 25


@dataclass
class FitConfig:
    learning_rate: float = 0.1
    neighborhood_mode: str = INTERIOR
    stop_tol: float | None = None  # None: 1e-6 x bounding-box diagonal of map and cloud
    max_iters: int = 200
    adjacent_facet_accel: bool = False
    accel_warmup_iters: int = 5
    threads: int = 1

    def __post_init__(self):
        if self.learning_rate < 0:
            raise ValueError("learning_rate must be >= 0")
        if self.neighborhood_mode not in (INTERIOR, CLOSED):
            raise ValueError(f"unknown neighborhood mode {self.neighborhood_mode!r}")
        if self.stop_tol is not None and self.stop_tol <= 0:
            raise ValueError("stop_tol must be > 0")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")


@dataclass
class FitResult:
    linear_map: LinearMap
    assignments: list[ProjectionResult]
    iterations_run: int
    ssd_trace: list[float]          # mean squared projection distance, one per
                                    # iteration start plus a final-map entry
    displacement_trace: list[float]  # max vertex move per iteration, 0.0 final


def vertex_update(current, pulls, learning_rate: float = 0.0) -> np.ndarray:
    """Centroid of per-pull blends between the vertex and its data points.

    Each pull (weight, y) contributes ((1-weight) * current + ... y) with the
    learning rate mixed in; weight 1 hands the vertex fully to y. No pulls
    leave the vertex in place.
    """
    current = np.asarray(current, dtype=float)
    if len(pulls) == 0:
        return current.copy()
    lam = np.array([w for w, _ in pulls], dtype=float)
    ys = np.array([y for _, y in pulls], dtype=float)
    s = learning_rate
    blended = ((1.0 - lam) / (1.0 + s))[:, None] * current + ((lam + s) / (1.0 + s))[:, None] * ys
    return blended.mean(axis=0)


def build_neighborhoods(assignments, cloud, mode: str = INTERIOR) -> dict[int, list]:
    """Per-vertex pull lists (weight, point) from the current assignments.

    Interior mode: a point pulls only the vertices of the smallest simplex
    carrying its projection. Closed mode: it also pulls the remaining
    vertices of the facet it was found through, with weight zero.
    """
    if mode not in (INTERIOR, CLOSED):
        raise ValueError(f"unknown neighborhood mode {mode!r}")
    pulls: dict[int, list] = defaultdict(list)
    for y, res in zip(np.asarray(cloud, dtype=float), assignments):
        bp = res.point
        if mode == INTERIOR:
            for v, w in zip(bp.simplex, bp.coords):
                pulls[v].append((float(w), y))
        else:
            carrier = dict(zip(bp.simplex, bp.coords))
            for v in res.facet:
                pulls[v].append((float(carrier.get(v, 0.0)), y))
    return dict(pulls)


def _bbox_diagonal(*point_sets) -> float:
    stacked = np.vstack(point_sets)
    return float(np.linalg.norm(stacked.max(axis=0) - stacked.min(axis=0)))


def fit(K: SimplicialComplex, initial_map: LinearMap, cloud,
        config: FitConfig | None = None, on_iteration=None) -> FitResult:
    """Run the fitting iteration until vertex displacement stalls or max_iters.

    `on_iteration(i, linmap, mean_ssd, displacement)` is called after every
    update, e.g. for checkpoints or rendering. Final assignments are
    recomputed against the final map with an unrestricted search.
    """
    config = config or FitConfig()
    cloud = np.atleast_2d(np.asarray(cloud, dtype=float))
    if cloud.shape[0] == 0:
        raise ValueError("point cloud is empty")
    if initial_map.vertex_count < K.vertex_count:
        raise ValueError("initial map does not cover every vertex of the complex")
    if cloud.shape[1] != initial_map.ambient_dim:
        raise ValueError("cloud and map ambient dimensions differ")
    if config.neighborhood_mode == CLOSED and config.learning_rate == 0:
        warnings.warn(
            "closed neighborhoods with zero learning rate cannot move "
            "opposite-face vertices; consider learning_rate > 0",
            stacklevel=2,
        )
    stop_tol = config.stop_tol
    if stop_tol is None:
        diag = _bbox_diagonal(initial_map.positions[: K.vertex_count], cloud)
        stop_tol = 1e-6 * diag if diag > 0 else 1e-12

    positions = initial_map.positions.copy()
    ssd_trace: list[float] = []
    displacement_trace: list[float] = []
    previous: list[ProjectionResult] | None = None
    iterations = 0

    for it in range(config.max_iters):
        restrict = None
        if (
            config.adjacent_facet_accel
            and previous is not None
            and it > config.accel_warmup_iters
            and it % FULL_SEARCH_PERIOD != 0
        ):
            restrict = [K.adjacent_facet_indices(res.point.simplex) for res in previous]
        current = LinearMap(positions)
        assignments = nearest_on_complex(
            K, current, cloud, restrict=restrict, threads=config.threads
        )
        ssd_trace.append(float(np.mean([res.distance ** 2 for res in assignments])))

        pulls = build_neighborhoods(assignments, cloud, config.neighborhood_mode)
        new_positions = positions.copy()
        for v, plist in pulls.items():
            new_positions[v] = vertex_update(positions[v], plist, config.learning_rate)
        if not np.isfinite(new_positions).all():
            raise FloatingPointError("non-finite vertex position during fitting")
        displacement = float(
            np.linalg.norm(new_positions[: K.vertex_count] - positions[: K.vertex_count], axis=1).max()
        )
        displacement_trace.append(displacement)
        positions = new_positions
        previous = assignments
        iterations = it + 1
        if on_iteration is not None:
            on_iteration(it, LinearMap(positions), ssd_trace[-1], displacement)
        if displacement < stop_tol:
            break

    final_map = LinearMap(positions)
    final_assignments = nearest_on_complex(K, final_map, cloud, threads=config.threads)
    ssd_trace.append(float(np.mean([res.distance ** 2 for res in final_assignments])))
    displacement_trace.append(0.0)
    return FitResult(final_map, final_assignments, iterations, ssd_trace, displacement_trace)


def write_trace_csv(result: FitResult, path) -> None:
    """Per-iteration trace: iter, mean_ssd, max_displacement."""
    with open(path, "w") as fh:
        fh.write("iter,mean_ssd,max_displacement\n")
        for i, (ssd, disp) in enumerate(zip(result.ssd_trace, result.displacement_trace)):
            fh.write(f"{i},{ssd!r},{disp!r}\n")


def write_checkpoint(linmap: LinearMap, iteration: int, path) -> None:
    with open(path, "w") as fh:
        json.dump({"iteration": iteration, "positions": linmap.positions.tolist()}, fh)
        fh.write("\n")


def _assignment_to_dict(res: ProjectionResult) -> dict:
    return {
        "facet": list(res.facet),
        "simplex": list(res.point.simplex),
        "lambda": [float(v) for v in res.point.coords],
        "image": [float(v) for v in res.image],
        "distance": float(res.distance),
    }


def _assignment_from_dict(data: dict) -> ProjectionResult:
    return ProjectionResult(
        BarycentricPoint(tuple(data["simplex"]), np.asarray(data["lambda"], dtype=float)),
        np.asarray(data["image"], dtype=float),
        float(data["distance"]),
        tuple(data["facet"]),
    )


def write_fit_json(result: FitResult, K: SimplicialComplex, path,
                   config: FitConfig | None = None) -> None:
    """Self-contained fit record: complex, final map, assignments, traces."""
    record = {
        "complex": K.to_dict(),
        "positions": result.linear_map.positions.tolist(),
        "iterations_run": result.iterations_run,
        "ssd_trace": [float(v) for v in result.ssd_trace],
        "displacement_trace": [float(v) for v in result.displacement_trace],
        "assignments": [_assignment_to_dict(res) for res in result.assignments],
    }
    if config is not None:
        record["config"] = {
            "learning_rate": config.learning_rate,
            "neighborhood_mode": config.neighborhood_mode,
            "stop_tol": config.stop_tol,
            "max_iters": config.max_iters,
        }
    with open(path, "w") as fh:
        json.dump(record, fh)
        fh.write("\n")


def read_fit_json(path) -> tuple[FitResult, SimplicialComplex]:
    with open(path) as fh:
        data = json.load(fh)
    try:
        K = SimplicialComplex.from_dict(data["complex"])
        result = FitResult(
            LinearMap(np.asarray(data["positions"], dtype=float)),
            [_assignment_from_dict(a) for a in data["assignments"]],
            int(data["iterations_run"]),
            [float(v) for v in data["ssd_trace"]],
            [float(v) for v in data["displacement_trace"]],
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed fit record: {exc}") from exc
    return result, K
