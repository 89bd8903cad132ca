"""Seeded synthetic point-cloud generators.

Clouds are reproducible: generation uses numpy's default_rng (PCG64), so the
same spec and seed give the same cloud on any platform. Gaussian ambient
noise with standard deviation `noise_sigma` is added after the base draw.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# Documented constants for shapes the figure presets leave open.
SWISS_ROLL_TURNS = (1.5 * np.pi, 4.5 * np.pi)  # angle range before rescaling
SWISS_ROLL_HEIGHT = 0.3
LINE_SEGMENT_2D = ((-1.5, -1.5), (1.5, 1.5))
LINE_SEGMENT_3D = ((-1.5, -1.5, -1.5), (1.5, 1.5, 1.5))

KINDS = (
    "swiss-roll",
    "circle",
    "circle-plus-line",
    "sphere2",
    "sphere2-plus-line",
    "surface-fn",
    "sphere3",
)


@dataclass
class SampleSpec:
    kind: str
    count: int
    noise_sigma: float = 0.0
    seed: int = 0
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown sample kind {self.kind!r}")
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if self.noise_sigma < 0:
            raise ValueError("noise_sigma must be >= 0")

    @classmethod
    def from_dict(cls, data: dict) -> "SampleSpec":
        try:
            return cls(
                kind=data["kind"],
                count=int(data["count"]),
                noise_sigma=float(data.get("noise_sigma", 0.0)),
                seed=int(data.get("seed", 0)),
                params=dict(data.get("params", {})),
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed sample spec: {exc}") from exc


def _unit_sphere(rng, count, dim):
    v = rng.normal(size=(count, dim))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def _segment(rng, count, endpoints):
    a, b = (np.asarray(e, dtype=float) for e in endpoints)
    t = rng.uniform(0.0, 1.0, size=count)
    return a + t[:, None] * (b - a)


def _swiss_roll(rng, count, params):
    t = rng.uniform(*SWISS_ROLL_TURNS, size=count)
    x = t * np.cos(t) / SWISS_ROLL_TURNS[1]
    z = t * np.sin(t) / SWISS_ROLL_TURNS[1]
    if params.get("planar", False):
        return np.column_stack([x, z])
    height = float(params.get("height", SWISS_ROLL_HEIGHT))
    h = rng.uniform(0.0, height, size=count)
    return np.column_stack([x, h, z])


def _surface_fn(rng, count):
    x = rng.uniform(0.0, 1.0, size=count)
    y = rng.uniform(0.0, 1.0, size=count)
    z = np.cos(5 * x) * np.sin(5 * y) / 3.0 + (x - y) / 5.0
    return np.column_stack([x, y, z])


def sample(spec: SampleSpec) -> np.ndarray:
    """Draw the cloud described by the spec; deterministic given the seed."""
    rng = np.random.default_rng(spec.seed)
    n = spec.count
    params = spec.params
    if spec.kind == "swiss-roll":
        pts = _swiss_roll(rng, n, params)
    elif spec.kind == "circle":
        theta = rng.uniform(0.0, 2.0 * np.pi, size=n)
        pts = np.column_stack([np.cos(theta), np.sin(theta)])
    elif spec.kind == "circle-plus-line":
        n_circle = n // 2
        theta = rng.uniform(0.0, 2.0 * np.pi, size=n_circle)
        circle = np.column_stack([np.cos(theta), np.sin(theta)])
        seg = _segment(rng, n - n_circle,
                       (params.get("line_from", LINE_SEGMENT_2D[0]),
                        params.get("line_to", LINE_SEGMENT_2D[1])))
        pts = np.vstack([circle, seg])
    elif spec.kind == "sphere2":
        pts = _unit_sphere(rng, n, 3)
    elif spec.kind == "sphere2-plus-line":
        n_sphere = n // 2
        sphere = _unit_sphere(rng, n_sphere, 3)
        seg = _segment(rng, n - n_sphere,
                       (params.get("line_from", LINE_SEGMENT_3D[0]),
                        params.get("line_to", LINE_SEGMENT_3D[1])))
        pts = np.vstack([sphere, seg])
    elif spec.kind == "surface-fn":
        pts = _surface_fn(rng, n)
    elif spec.kind == "sphere3":
        pts = _unit_sphere(rng, n, 4)
    else:  # pragma: no cover - guarded by SampleSpec
        raise ValueError(f"unknown sample kind {spec.kind!r}")
    if spec.noise_sigma > 0:
        pts = pts + rng.normal(0.0, spec.noise_sigma, size=pts.shape)
    return pts


def write_cloud_csv(cloud: np.ndarray, path) -> None:
    """One row per point, header x0..x{m-1}; floats written in repr form."""
    cloud = np.atleast_2d(np.asarray(cloud, dtype=float))
    m = cloud.shape[1]
    with open(path, "w") as fh:
        fh.write(",".join(f"x{j}" for j in range(m)) + "\n")
        for row in cloud:
            fh.write(",".join(repr(float(v)) for v in row) + "\n")


def read_cloud_csv(path) -> np.ndarray:
    with open(path) as fh:
        header = fh.readline().strip()
        if not header.startswith("x0"):
            raise ValueError(f"{path}: expected point-cloud header x0,..")
        rows = []
        for line_no, line in enumerate(fh, start=2):
            line = line.strip()
            if not line:
                continue
            try:
                rows.append([float(v) for v in line.split(",")])
            except ValueError as exc:
                raise ValueError(f"{path}:{line_no}: bad value: {exc}") from exc
    if not rows:
        raise ValueError(f"{path}: empty point cloud")
    cloud = np.asarray(rows, dtype=float)
    if not np.isfinite(cloud).all():
        raise ValueError(f"{path}: non-finite values in point cloud")
    return cloud
