"""Abstract simplicial complexes stored by their facets.

A complex is represented by its maximal simplices only; any simplex is
identified by the sorted tuple of its vertex indices and the full face
lattice is never materialized (it is exponential in the facet dimension).
Instances are immutable after construction and safe for concurrent reads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations

import numpy as np

# Zero tolerance for barycentric coordinates: values at or below this are
# treated as lying on the boundary face opposite the vertex.
EPS_LAMBDA = 1e-9

Simplex = tuple[int, ...]


def as_simplex(vertices) -> Simplex:
    """Normalize a vertex collection to a sorted tuple of distinct indices."""
    vs = tuple(sorted(int(v) for v in vertices))
    if not vs:
        raise ValueError("a simplex needs at least one vertex")
    if vs[0] < 0:
        raise ValueError(f"negative vertex index in simplex {vertices!r}")
    if any(a == b for a, b in zip(vs, vs[1:])):
        raise ValueError(f"duplicate vertex indices in simplex {vertices!r}")
    return vs


def boundary_faces(simplex) -> list[Simplex]:
    """Faces obtained by removing one vertex each, in removed-index order.

    The k-th entry omits the k-th smallest vertex, so e.g. (0,1,2) gives
    [(1,2), (0,2), (0,1)].
    """
    s = as_simplex(simplex)
    if len(s) < 2:
        raise ValueError("a vertex has no boundary faces")
    return [s[:k] + s[k + 1:] for k in range(len(s))]


@dataclass
class BarycentricPoint:
    """A point of a simplex: nonnegative weights over its sorted vertex list.

    By convention `simplex` is the smallest simplex containing the point,
    i.e. every coordinate exceeds the zero tolerance it was reduced with
    (see :func:`smallest_containing_simplex`).
    """

    simplex: Simplex
    coords: np.ndarray

    def __post_init__(self):
        self.simplex = as_simplex(self.simplex)
        self.coords = np.asarray(self.coords, dtype=float)
        if self.coords.shape != (len(self.simplex),):
            raise ValueError("need exactly one coordinate per simplex vertex")
        if abs(float(self.coords.sum()) - 1.0) > 1e-9:
            raise ValueError("barycentric coordinates must sum to 1")
        if float(self.coords.min()) < -1e-9:
            raise ValueError("barycentric coordinates must be nonnegative")

    @property
    def dim(self) -> int:
        return len(self.simplex) - 1


def smallest_containing_simplex(simplex, coords, eps_lambda: float = EPS_LAMBDA) -> BarycentricPoint:
    """Reduce facet-level coordinates to the smallest containing simplex.

    Coordinates at or below ``eps_lambda`` are dropped (tiny negatives from
    floating-point projection noise are clamped to zero first) and the
    survivors are renormalized to sum to 1.
    """
    s = as_simplex(simplex)
    lam = np.asarray(coords, dtype=float)
    if lam.shape != (len(s),):
        raise ValueError("need exactly one coordinate per simplex vertex")
    if abs(float(lam.sum()) - 1.0) > 1e-6:
        raise ValueError("coordinates must sum to 1")
    if float(lam.min()) < -eps_lambda:
        raise ValueError("negative barycentric coordinate beyond tolerance")
    lam = np.where(lam < 0.0, 0.0, lam)
    keep = lam > eps_lambda
    if not keep.any():
        raise ValueError("all coordinates at zero tolerance; no containing simplex")
    kept = lam[keep]
    return BarycentricPoint(
        tuple(v for v, k in zip(s, keep) if k),
        kept / kept.sum(),
    )


def _drop_non_maximal(facets: list[Simplex]) -> list[Simplex]:
    """Remove facets that are subsets of a larger facet. Input is deduplicated."""
    sizes = {len(f) for f in facets}
    if len(sizes) == 1:
        return facets  # equal-size distinct sets cannot contain one another
    # Incidence of strictly larger facets only; process large to small.
    by_vertex: dict[int, set[int]] = {}
    kept: list[Simplex] = []
    for f in sorted(facets, key=len, reverse=True):
        hits = None
        for v in f:
            ids = by_vertex.get(v)
            if ids is None:
                hits = set()
                break
            hits = ids.copy() if hits is None else hits & ids
            if not hits:
                break
        if hits:  # contained in some kept, strictly larger facet
            continue
        fid = len(kept)
        kept.append(f)
        for v in f:
            by_vertex.setdefault(v, set()).add(fid)
    return kept


class SimplicialComplex:
    """A simplicial complex given by facets (maximal simplices).

    Facets are stored sorted lexicographically; declared facets that are
    duplicates or subsets of another facet are dropped.
    """

    def __init__(self, facets, vertex_count: int | None = None):
        normalized = sorted({as_simplex(f) for f in facets})
        if not normalized:
            raise ValueError("a complex needs at least one facet")
        normalized = sorted(_drop_non_maximal(normalized))
        max_index = max(f[-1] for f in normalized)
        if vertex_count is None:
            vertex_count = max_index + 1
        elif vertex_count <= max_index:
            raise ValueError("vertex_count must exceed the largest facet index")
        self.vertex_count = int(vertex_count)
        self.facets: tuple[Simplex, ...] = tuple(normalized)
        self._vertex_to_facets: list[list[int]] | None = None

    @property
    def dim(self) -> int:
        return max(len(f) for f in self.facets) - 1

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) == 1

    def vertex_to_facets(self) -> list[list[int]]:
        """Facet indices incident to each vertex (cached)."""
        if self._vertex_to_facets is None:
            table: list[list[int]] = [[] for _ in range(self.vertex_count)]
            for fi, f in enumerate(self.facets):
                for v in f:
                    table[v].append(fi)
            self._vertex_to_facets = table
        return self._vertex_to_facets

    def contains_simplex(self, simplex) -> bool:
        s = as_simplex(simplex)
        if s[-1] >= self.vertex_count:
            return False
        table = self.vertex_to_facets()
        candidates = set(table[s[0]])
        for v in s[1:]:
            candidates &= set(table[v])
            if not candidates:
                return False
        return bool(candidates)

    def adjacent_facet_indices(self, simplex) -> list[int]:
        """Indices of facets sharing at least one vertex with the simplex, ascending."""
        s = as_simplex(simplex)
        table = self.vertex_to_facets()
        hit: set[int] = set()
        for v in s:
            if v < self.vertex_count:
                hit.update(table[v])
        return sorted(hit)

    def adjacent_facets(self, simplex) -> list[Simplex]:
        return [self.facets[i] for i in self.adjacent_facet_indices(simplex)]

    def edges(self) -> list[Simplex]:
        """All 1-simplices of the complex, sorted."""
        es = {e for f in self.facets for e in combinations(f, 2)}
        return sorted(es)

    def to_dict(self) -> dict:
        return {"vertices": self.vertex_count, "facets": [list(f) for f in self.facets]}

    @classmethod
    def from_dict(cls, data: dict) -> "SimplicialComplex":
        try:
            return cls(data["facets"], vertex_count=int(data["vertices"]))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed complex record: {exc}") from exc

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SimplicialComplex)
            and self.vertex_count == other.vertex_count
            and self.facets == other.facets
        )

    def __repr__(self) -> str:
        return f"SimplicialComplex({len(self.facets)} facets, {self.vertex_count} vertices, dim {self.dim})"


def build_complex(facets) -> SimplicialComplex:
    """Validated complex from declared facets; vertex count is 1 + max index."""
    return SimplicialComplex(facets)


def compact_complex(K: SimplicialComplex) -> tuple[SimplicialComplex, list[int]]:
    """Renumber vertices to 0..k-1; returns the complex and old indices by new."""
    used = sorted({v for f in K.facets for v in f})
    remap = {old: new for new, old in enumerate(used)}
    facets = [tuple(remap[v] for v in f) for f in K.facets]
    return SimplicialComplex(facets, vertex_count=len(used)), used


def write_complex(K: SimplicialComplex, path) -> None:
    with open(path, "w") as fh:
        json.dump(K.to_dict(), fh)
        fh.write("\n")


def read_complex(path) -> SimplicialComplex:
    with open(path) as fh:
        return SimplicialComplex.from_dict(json.load(fh))
