"""Fit-quality diagnostics: mean squared projection distance and a sampled
Hausdorff distance between the cloud and the mapped complex."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

import numpy as np
from scipy.spatial.distance import cdist

from .complexes import SimplicialComplex
from .nearest import LinearMap, nearest_on_complex


def mean_ssd(cloud, assignments) -> float:
    """Mean squared distance between points and their assigned projections."""
    cloud = np.atleast_2d(np.asarray(cloud, dtype=float))
    if cloud.shape[0] != len(assignments):
        raise ValueError("cloud size does not match assignment count")
    return float(np.mean([res.distance ** 2 for res in assignments]))


@lru_cache(maxsize=None)
def _bary_grid(k: int, density: int) -> np.ndarray:
    """Barycentric sample grid on a (k-1)-simplex: the union of the level-L
    lattices {counts / L} for L = 1..density. Unions over increasing density
    are nested, so refining never loses sample points."""
    rows = []
    for level in range(1, density + 1):
        for cut in combinations(range(level + k - 1), k - 1):
            prev = -1
            counts = []
            for c in cut:
                counts.append(c - prev - 1)
                prev = c
            counts.append(level + k - 2 - prev)
            rows.append([c / level for c in counts])
    return np.unique(np.asarray(rows, dtype=float), axis=0)


def hausdorff(cloud, K: SimplicialComplex, linmap: LinearMap,
              sample_density: int = 10) -> float:
    """Two-sided distance between the cloud and the mapped complex.

    The cloud-to-complex direction is exact (projection search); the
    complex-to-cloud direction is evaluated on a barycentric sample grid of
    each facet and is a lower bound that grows toward the true value as
    `sample_density` increases.
    """
    if sample_density < 1:
        raise ValueError("sample_density must be >= 1")
    cloud = np.atleast_2d(np.asarray(cloud, dtype=float))
    results = nearest_on_complex(K, linmap, cloud)
    to_complex = max(res.distance for res in results)

    to_cloud = 0.0
    for facet in K.facets:
        W = linmap.positions[list(facet)]
        samples = _bary_grid(len(facet), sample_density) @ W
        d = cdist(samples, cloud).min(axis=1).max()
        to_cloud = max(to_cloud, float(d))
    return max(to_complex, to_cloud)
