"""Generators for the complexes used in the experiments.

All generators return a complex together with a canonical placement (a
:class:`LinearMap`) living on the unit interval/square/cube; moving a mesh
into data coordinates is a separate affine step (:func:`place_in_bbox`,
:func:`transform_map`).
"""

from __future__ import annotations

from collections import Counter
from itertools import permutations, product

import numpy as np

from .complexes import SimplicialComplex, boundary_faces
from .nearest import LinearMap


def line_complex(segments: int) -> tuple[SimplicialComplex, LinearMap]:
    """Path with `segments` edges; vertices placed at 0..1 in R^1."""
    if segments < 1:
        raise ValueError("segments must be >= 1")
    facets = [(i, i + 1) for i in range(segments)]
    positions = np.linspace(0.0, 1.0, segments + 1)[:, None]
    return SimplicialComplex(facets), LinearMap(positions)


def grid1d_complex(p: int, q: int) -> tuple[SimplicialComplex, LinearMap]:
    """Edge skeleton of a p x q lattice in the unit square: p(q-1)+q(p-1) edges."""
    if p < 2 or q < 2:
        raise ValueError("grid extents must be >= 2")
    index = lambda i, j: i * q + j
    facets = []
    for i in range(p):
        for j in range(q):
            if i + 1 < p:
                facets.append((index(i, j), index(i + 1, j)))
            if j + 1 < q:
                facets.append((index(i, j), index(i, j + 1)))
    positions = np.array([
        [i / (p - 1), j / (q - 1)] for i in range(p) for j in range(q)
    ])
    return SimplicialComplex(facets), LinearMap(positions)


def cycle_complex(sides: int, subdivisions: int) -> tuple[SimplicialComplex, LinearMap]:
    """Cycle graph on a polygon outline, each side split into `subdivisions` edges.

    Four sides use the unit-square outline; any other count uses the regular
    polygon inscribed in the unit circle.
    """
    if sides < 3:
        raise ValueError("a polygon needs at least 3 sides")
    if subdivisions < 1:
        raise ValueError("subdivisions must be >= 1")
    if sides == 4:
        corners = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
    else:
        angles = 2.0 * np.pi * np.arange(sides) / sides
        corners = np.column_stack([np.cos(angles), np.sin(angles)])
    pts = []
    for j in range(sides):
        a, b = corners[j], corners[(j + 1) % sides]
        for t in range(subdivisions):
            pts.append(a + (t / subdivisions) * (b - a))
    n = len(pts)
    facets = [(i, (i + 1) % n) for i in range(n)]
    return SimplicialComplex(facets), LinearMap(np.array(pts))


def freudenthal_mesh(extents) -> tuple[SimplicialComplex, LinearMap]:
    """Triangulated d-dimensional box mesh: each unit cell split into d!
    simplices along coordinate-sorted paths, compatible across shared faces.

    `extents` counts lattice cells per axis; vertices are the lattice points,
    placed canonically in the unit cube.
    """
    extents = [int(e) for e in extents]
    if len(extents) < 1 or any(e < 1 for e in extents):
        raise ValueError("extents must be a nonempty list of integers >= 1")
    d = len(extents)
    shape = tuple(e + 1 for e in extents)
    strides = np.cumprod([1] + list(shape[::-1][:-1]))[::-1]

    def index(coord):
        return int(np.dot(coord, strides))

    facets = []
    for cell in product(*(range(e) for e in extents)):
        base = np.array(cell)
        for perm in permutations(range(d)):
            cur = base.copy()
            verts = [index(cur)]
            for axis in perm:
                cur[axis] += 1
                verts.append(index(cur))
            facets.append(tuple(sorted(verts)))
    grid = np.array(list(product(*(range(s) for s in shape))), dtype=float)
    positions = grid / np.asarray(extents, dtype=float)
    return SimplicialComplex(facets), LinearMap(positions)


def boundary_complex(K: SimplicialComplex) -> SimplicialComplex:
    """Subcomplex of the faces contained in exactly one top-dimensional facet."""
    if not K.is_pure():
        raise ValueError("boundary requires a pure complex (equal facet dimensions)")
    if K.dim < 1:
        raise ValueError("0-dimensional complexes have no boundary faces")
    counts = Counter(face for f in K.facets for face in boundary_faces(f))
    rim = [face for face, c in counts.items() if c == 1]
    if not rim:
        raise ValueError("complex has no boundary (every face is shared)")
    return SimplicialComplex(rim, vertex_count=K.vertex_count)


def disjoint_union(parts) -> tuple[SimplicialComplex, LinearMap]:
    """Concatenate complexes with vertex indices offset; placements are stacked."""
    parts = list(parts)
    if not parts:
        raise ValueError("disjoint union needs at least one part")
    dims = {lm.ambient_dim for _, lm in parts}
    if len(dims) != 1:
        raise ValueError("all parts must share the same ambient dimension")
    facets = []
    blocks = []
    offset = 0
    for K, lm in parts:
        if lm.vertex_count < K.vertex_count:
            raise ValueError("placement does not cover every vertex of its part")
        facets.extend(tuple(v + offset for v in f) for f in K.facets)
        blocks.append(lm.positions[: K.vertex_count])
        offset += K.vertex_count
    return SimplicialComplex(facets, vertex_count=offset), LinearMap(np.vstack(blocks))


def transform_map(linmap: LinearMap, scale=1.0, offset=0.0) -> LinearMap:
    """Affine reposition of a placement: positions * scale + offset."""
    scale = np.asarray(scale, dtype=float)
    if np.any(scale == 0.0):
        raise ValueError("degenerate placement: zero scale")
    return LinearMap(linmap.positions * scale + np.asarray(offset, dtype=float))


def pad_ambient(linmap: LinearMap, ambient_dim: int, axes=None) -> LinearMap:
    """Embed a k-dimensional placement into R^m along the given axes (zeros elsewhere)."""
    k = linmap.ambient_dim
    if axes is None:
        axes = list(range(k))
    if len(axes) != k or ambient_dim < k or max(axes) >= ambient_dim:
        raise ValueError("axes must pick one target axis per placement axis")
    out = np.zeros((linmap.vertex_count, ambient_dim))
    out[:, list(axes)] = linmap.positions
    return LinearMap(out)


def place_in_bbox(linmap: LinearMap, cloud, axes=None, scale: float = 1.0) -> LinearMap:
    """Scale and center a canonical placement onto a point cloud's bounding box.

    The placement's k axes are mapped onto the cloud axes in `axes` (first k
    axes by default); remaining cloud axes get the box midpoint. `scale`
    shrinks the target box around its center.
    """
    cloud = np.atleast_2d(np.asarray(cloud, dtype=float))
    m = cloud.shape[1]
    k = linmap.ambient_dim
    if axes is None:
        axes = list(range(k))
    if len(axes) != k or max(axes) >= m:
        raise ValueError("axes must pick one cloud axis per placement axis")
    lo, hi = cloud.min(axis=0), cloud.max(axis=0)
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo) * scale

    src = linmap.positions
    s_lo, s_hi = src.min(axis=0), src.max(axis=0)
    s_mid = 0.5 * (s_lo + s_hi)
    s_half = np.where(s_hi > s_lo, 0.5 * (s_hi - s_lo), 1.0)

    out = np.tile(mid, (linmap.vertex_count, 1))
    for j, axis in enumerate(axes):
        out[:, axis] = mid[axis] + (src[:, j] - s_mid[j]) / s_half[j] * half[axis]
    return LinearMap(out)


def build_mesh(spec: dict) -> tuple[SimplicialComplex, LinearMap]:
    """Build a complex and placement from a mesh-spec record.

    Schema by kind:
      {"kind": "line", "segments": 60}
      {"kind": "grid1d", "shape": [p, q]}
      {"kind": "cycle", "sides": 4, "subdivisions": 4}
      {"kind": "tri-mesh-d", "shape": [n1, ..., nd]}
      {"kind": "boundary-of", "of": {...mesh spec...}}
      {"kind": "disjoint-union", "parts": [{...mesh spec...}, ...]}
    Any record may carry "scale" and "offset" (scalar or per-axis) applied to
    the canonical placement.
    """
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ValueError("mesh spec must be a mapping with a 'kind' field")
    kind = spec["kind"]
    try:
        if kind == "line":
            K, lm = line_complex(int(spec["segments"]))
        elif kind == "grid1d":
            p, q = spec["shape"]
            K, lm = grid1d_complex(int(p), int(q))
        elif kind == "cycle":
            K, lm = cycle_complex(int(spec.get("sides", 4)), int(spec["subdivisions"]))
        elif kind == "tri-mesh-d":
            K, lm = freudenthal_mesh(spec["shape"])
        elif kind == "boundary-of":
            K_full, lm = build_mesh(spec["of"])
            K = boundary_complex(K_full)
        elif kind == "disjoint-union":
            K, lm = disjoint_union(build_mesh(part) for part in spec["parts"])
        else:
            raise ValueError(f"unknown mesh kind {kind!r}")
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed mesh spec for kind {kind!r}: {exc}") from exc
    if "scale" in spec or "offset" in spec:
        lm = transform_map(lm, spec.get("scale", 1.0), spec.get("offset", 0.0))
    return K, lm
