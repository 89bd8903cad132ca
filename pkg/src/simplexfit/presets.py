"""Experiment presets for the demo pipeline.

Each preset pins every constant the experiments leave open: sample sizes and
noise levels, mesh shapes, initial placement (cloud axes and box fraction),
learning rate, neighborhood mode, iteration counts, the pruning threshold,
snapshot milestones, and the render projection. Presets are data; the demo
command only interprets them.
"""

from __future__ import annotations

import copy

# A run is one (mesh, placement, fit) combination; most presets have one run,
# preset fig10 compares two meshes against the same cloud.
PRESETS: dict[str, dict] = {
    "fig1": {
        "sample": {"kind": "swiss-roll", "count": 200, "noise_sigma": 0.0},
        "runs": [{
            "name": "line60",
            "mesh": {"kind": "line", "segments": 60},
            "place": {"axes": [0], "scale": 0.9},
        }],
        "fit": {"max_iters": 200, "learning_rate": 0.1, "neighborhood_mode": "interior"},
        "alpha": 0.02,
        "snapshots": [0, 200],
        "proj": "xz",
    },
    "fig2": {
        "sample": {"kind": "swiss-roll", "count": 200, "noise_sigma": 0.0},
        "runs": [{
            "name": "grid5x5",
            "mesh": {"kind": "grid1d", "shape": [5, 5]},
            "place": {"axes": [0, 2], "scale": 0.35},
        }],
        "fit": {"max_iters": 150, "learning_rate": 0.1, "neighborhood_mode": "interior"},
        "alpha": 0.02,
        "snapshots": [0, 20, 150],
        "proj": "xz",
    },
    "fig3": {
        "sample": {"kind": "circle-plus-line", "count": 300, "noise_sigma": 0.05},
        "runs": [{
            "name": "mesh6x6",
            "mesh": {"kind": "tri-mesh-d", "shape": [6, 6]},
            "place": {"axes": [0, 1], "scale": 1.0},
        }],
        "fit": {"max_iters": 100, "learning_rate": 0.1, "neighborhood_mode": "interior"},
        "alpha": 0.05,
        "snapshots": [0, 100],
        "proj": "xy",
    },
    "fig4": {
        "sample": {"kind": "surface-fn", "count": 1000, "noise_sigma": 0.0},
        "runs": [{
            "name": "mesh9x9",
            "mesh": {"kind": "tri-mesh-d", "shape": [9, 9]},
            "place": {"axes": [0, 1], "scale": 1.0},
        }],
        "fit": {"max_iters": 40, "learning_rate": 0.1, "neighborhood_mode": "interior"},
        "alpha": 0.05,
        "snapshots": [0, 40],
        "proj": "xy",
    },
    "fig5": {
        "sample": {"kind": "sphere2-plus-line", "count": 300, "noise_sigma": 0.05},
        "runs": [{
            "name": "cube3",
            "mesh": {"kind": "tri-mesh-d", "shape": [3, 3, 3]},
            "place": {"axes": [0, 1, 2], "scale": 1.0},
        }],
        "fit": {"max_iters": 40, "learning_rate": 0.1, "neighborhood_mode": "interior"},
        "alpha": 0.05,
        "snapshots": [0, 40],
        "proj": "xy",
    },
    "fig6": {
        # A circle next to a separate line segment; two mesh clusters, each
        # pre-placed over one structure, so no bounding-box placement.
        "sample": {
            "kind": "circle-plus-line",
            "count": 350,
            "noise_sigma": 0.05,
            "params": {"line_from": [2.5, -1.0], "line_to": [4.0, 1.0]},
        },
        "runs": [{
            "name": "clusters",
            "mesh": {"kind": "disjoint-union", "parts": [
                {"kind": "tri-mesh-d", "shape": [3, 3], "scale": [2.4, 2.4], "offset": [-1.2, -1.2]},
                {"kind": "tri-mesh-d", "shape": [3, 3], "scale": [1.8, 2.4], "offset": [2.4, -1.2]},
            ]},
            "place": None,
        }],
        "fit": {"max_iters": 150, "learning_rate": 0.1, "neighborhood_mode": "interior"},
        "alpha": 0.05,
        "snapshots": [0, 150],
        "proj": "xy",
    },
    "fig7": {
        "sample": {"kind": "sphere2", "count": 800, "noise_sigma": 0.05},
        "runs": [{
            "name": "mesh8x8",
            "mesh": {"kind": "tri-mesh-d", "shape": [8, 8]},
            "place": {"axes": [0, 1], "scale": 1.0},
        }],
        "fit": {"max_iters": 150, "learning_rate": 0.1, "neighborhood_mode": "interior"},
        "alpha": 0.05,
        "snapshots": [0, 150],
        "proj": "xy",
    },
    "fig8": {
        "sample": {"kind": "sphere2", "count": 1000, "noise_sigma": 0.0},
        "runs": [{
            "name": "shell5",
            "mesh": {"kind": "boundary-of", "of": {"kind": "tri-mesh-d", "shape": [5, 5, 5]}},
            "place": {"axes": [0, 1, 2], "scale": 1.0},
        }],
        "fit": {"max_iters": 150, "learning_rate": 0.1, "neighborhood_mode": "closed"},
        "alpha": 0.05,
        "snapshots": [0, 10, 150],
        "proj": "xy",
    },
    "fig9": {
        "sample": {"kind": "circle", "count": 200, "noise_sigma": 0.0},
        "runs": [{
            "name": "square4",
            "mesh": {"kind": "cycle", "sides": 4, "subdivisions": 4},
            "place": {"axes": [0, 1], "scale": 0.5},
        }],
        "fit": {"max_iters": 150, "learning_rate": 0.1, "neighborhood_mode": "closed"},
        "alpha": 0.02,
        "snapshots": [0, 150],
        "proj": "xy",
    },
    "fig10": {
        "sample": {"kind": "sphere3", "count": 2000, "noise_sigma": 0.05},
        "runs": [
            {
                "name": "mesh4x4x4",
                "mesh": {"kind": "tri-mesh-d", "shape": [4, 4, 4]},
                "place": {"axes": [0, 1, 2], "scale": 1.0},
            },
            {
                "name": "shell3x3x3x3",
                "mesh": {"kind": "boundary-of", "of": {"kind": "tri-mesh-d", "shape": [3, 3, 3, 3]}},
                "place": {"axes": [0, 1, 2, 3], "scale": 1.0},
            },
        ],
        "fit": {"max_iters": 100, "learning_rate": 0.1, "neighborhood_mode": "interior"},
        "alpha": 0.05,
        "snapshots": [0, 100],
        "proj": "xy",
    },
}


def preset_names() -> list[str]:
    return sorted(PRESETS)


def get_preset(name: str) -> dict:
    if name not in PRESETS:
        raise ValueError(f"unknown preset {name!r}")
    return copy.deepcopy(PRESETS[name])
