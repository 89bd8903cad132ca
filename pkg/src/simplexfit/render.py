"""Figure rendering: 2-D projections of a point cloud with the mapped edge
skeleton of a complex, and mean-SSD trace plots."""

from __future__ import annotations

import numpy as np

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.collections import LineCollection

from .complexes import SimplicialComplex
from .nearest import LinearMap

PROJECTIONS = ("xy", "xz", "pca2")


def projection_matrix(proj: str, cloud: np.ndarray) -> np.ndarray:
    """(m, 2) orthographic or PCA basis; the PCA basis comes from the cloud."""
    m = cloud.shape[1]
    if proj == "xy":
        axes = (0, 1)
    elif proj == "xz":
        axes = (0, 2)
    elif proj == "pca2":
        centered = cloud - cloud.mean(axis=0)
        _, _, vt = np.linalg.svd(centered, full_matrices=False)
        basis = np.zeros((m, 2))
        basis[:, : min(2, vt.shape[0])] = vt[:2].T[:, : min(2, vt.shape[0])]
        return basis
    else:
        raise ValueError(f"unknown projection {proj!r}")
    if m <= max(axes):
        raise ValueError(f"projection {proj!r} needs ambient dimension > {max(axes)}")
    basis = np.zeros((m, 2))
    basis[axes[0], 0] = 1.0
    basis[axes[1], 1] = 1.0
    return basis


def render_state(cloud, K: SimplicialComplex, linmap: LinearMap, out_path,
                 proj: str = "xy", title: str | None = None) -> None:
    """Scatter the cloud and draw the mapped edges of the complex into a file."""
    cloud = np.atleast_2d(np.asarray(cloud, dtype=float))
    basis = projection_matrix(proj, cloud)
    pts2 = cloud @ basis
    verts2 = linmap.positions[: K.vertex_count] @ basis

    fig, ax = plt.subplots(figsize=(6, 6))
    ax.scatter(pts2[:, 0], pts2[:, 1], s=8, c="#9db4d0", zorder=1)
    edges = K.edges()
    if edges:
        segments = [(verts2[a], verts2[b]) for a, b in edges]
        ax.add_collection(LineCollection(segments, colors="#b03030", linewidths=1.2, zorder=2))
    used = sorted({v for f in K.facets for v in f})
    ax.scatter(verts2[used, 0], verts2[used, 1], s=14, c="#b03030", zorder=3)
    ax.set_aspect("equal", adjustable="datalim")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(out_path)
    plt.close(fig)


def render_ssd_traces(traces: dict[str, list[float]], out_path,
                      title: str = "mean squared distance per iteration") -> None:
    """Line plot of one or more mean-SSD traces."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for label, trace in traces.items():
        ax.plot(range(len(trace)), trace, label=label)
    ax.set_xlabel("iteration")
    ax.set_ylabel("mean SSD")
    ax.set_yscale("log")
    ax.set_title(title)
    if len(traces) > 1:
        ax.legend()
    fig.tight_layout()
    fig.savefig(out_path)
    plt.close(fig)
