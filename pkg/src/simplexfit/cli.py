"""Command-line front end: data/mesh generation, fitting, pruning, metrics,
rendering, and end-to-end preset demos.

Exit codes: 0 success, 1 usage error, 2 data error (malformed files,
dimension mismatches), 3 numerical failure (non-finite values).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import complexes, fitting, metrics, meshgen, nearest, presets, pruning, sampling


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _preset_choices():
    return presets.preset_names()


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="simplexfit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen-data",
                       help="write a synthetic point cloud as CSV")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", choices=_preset_choices(),
                     help="use a figure preset's sample spec")
    src.add_argument("--spec", help="JSON sample-spec file")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen_data)

    p = sub.add_parser("gen-complex",
                       help="build a mesh complex and its canonical placement")
    p.add_argument("--spec", required=True, help="JSON mesh-spec file")
    p.add_argument("--out", required=True, help="complex JSON output")
    p.add_argument("--positions", required=True, help="positions JSON output")
    p.set_defaults(func=cmd_gen_complex)

    p = sub.add_parser("fit",
                       help="fit a placed complex to a point cloud")
    p.add_argument("--cloud", required=True)
    p.add_argument("--complex", dest="complex_path", required=True)
    p.add_argument("--positions", required=True)
    p.add_argument("--s", type=float, default=0.1, help="learning rate")
    p.add_argument("--mode", choices=("interior", "closed"), default="interior")
    p.add_argument("--iters", type=int, default=200)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", required=True, help="fit JSON output")
    p.add_argument("--trace", help="per-iteration CSV trace")
    p.add_argument("--snapshots", help="directory for checkpoint JSON files")
    p.add_argument("--every", type=int, default=10, help="checkpoint period")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("prune",
                       help="delete redundant simplices from a fit")
    p.add_argument("--fit", dest="fit_path", required=True)
    p.add_argument("--cloud", required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--mode", choices=("euclidean", "bary-min"), default="euclidean")
    p.add_argument("--alpha-decay", type=float, default=1.0)
    p.add_argument("--out", required=True, help="pruned-complex JSON output")
    p.add_argument("--codes", required=True, help="barycentric codes JSONL output")
    p.set_defaults(func=cmd_prune)

    p = sub.add_parser("metrics",
                       help="fit-quality metrics for a finished fit")
    p.add_argument("--cloud", required=True)
    p.add_argument("--fit", dest="fit_path", required=True)
    p.add_argument("--density", type=int, default=10)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("render",
                       help="render cloud and mapped complex to a figure file")
    p.add_argument("--fit", dest="fit_path", required=True)
    p.add_argument("--cloud", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--proj", choices=("xy", "xz", "pca2"), default="xy")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("demo",
                       help="run a figure preset end to end")
    p.add_argument("--figure", type=int, required=True,
                   choices=sorted(int(n[3:]) for n in _preset_choices()))
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--outdir", required=True)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--iters", type=int, default=None,
                   help="override the preset iteration count")
    p.set_defaults(func=cmd_demo)

    return parser


def _load_sample_spec(args) -> sampling.SampleSpec:
    if args.preset:
        record = presets.get_preset(args.preset)["sample"]
    else:
        with open(args.spec) as fh:
            record = json.load(fh)
    record.setdefault("seed", args.seed)
    if args.preset:
        record["seed"] = args.seed
    return sampling.SampleSpec.from_dict(record)


def cmd_gen_data(args) -> int:
    cloud = sampling.sample(_load_sample_spec(args))
    sampling.write_cloud_csv(cloud, args.out)
    return 0


def cmd_gen_complex(args) -> int:
    with open(args.spec) as fh:
        record = json.load(fh)
    K, linmap = meshgen.build_mesh(record)
    complexes.write_complex(K, args.out)
    nearest.write_positions(linmap, args.positions)
    return 0


def _run_fit(K, linmap, cloud, config, snapshots=None, every=10):
    callback = None
    if snapshots is not None:
        snapdir = Path(snapshots)
        snapdir.mkdir(parents=True, exist_ok=True)
        fitting.write_checkpoint(linmap, 0, snapdir / "checkpoint_000000.json")

        def callback(it, current, ssd, disp):
            if (it + 1) % every == 0:
                fitting.write_checkpoint(current, it + 1, snapdir / f"checkpoint_{it + 1:06d}.json")

    return fitting.fit(K, linmap, cloud, config, on_iteration=callback)


def cmd_fit(args) -> int:
    cloud = sampling.read_cloud_csv(args.cloud)
    K = complexes.read_complex(args.complex_path)
    linmap = nearest.read_positions(args.positions)
    config = fitting.FitConfig(
        learning_rate=args.s,
        neighborhood_mode=args.mode,
        stop_tol=args.tol,
        max_iters=args.iters,
        threads=args.threads,
    )
    result = _run_fit(K, linmap, cloud, config, args.snapshots, args.every)
    fitting.write_fit_json(result, K, args.out, config)
    if args.trace:
        fitting.write_trace_csv(result, args.trace)
    return 0


def cmd_prune(args) -> int:
    fit_result, K = fitting.read_fit_json(args.fit_path)
    cloud = sampling.read_cloud_csv(args.cloud)
    config = pruning.PruneConfig(alpha=args.alpha, mode=args.mode,
                                 alpha_decay=args.alpha_decay)
    result = pruning.prune(fit_result, K, config)
    pruning.write_prune_json(result, args.out)
    pruning.write_codes_jsonl(result, fit_result.linear_map, cloud, args.codes)
    return 0


def cmd_metrics(args) -> int:
    fit_result, K = fitting.read_fit_json(args.fit_path)
    cloud = sampling.read_cloud_csv(args.cloud)
    record = {
        "mean_ssd": metrics.mean_ssd(cloud, fit_result.assignments),
        "hausdorff": metrics.hausdorff(cloud, K, fit_result.linear_map, args.density),
        "sample_density": args.density,
    }
    with open(args.out, "w") as fh:
        json.dump(record, fh)
        fh.write("\n")
    return 0


def cmd_render(args) -> int:
    from . import render

    fit_result, K = fitting.read_fit_json(args.fit_path)
    cloud = sampling.read_cloud_csv(args.cloud)
    render.render_state(cloud, K, fit_result.linear_map, args.out, proj=args.proj)
    return 0


def cmd_demo(args) -> int:
    from . import render

    name = f"fig{args.figure}"
    preset = presets.get_preset(name)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    spec_record = dict(preset["sample"])
    spec_record["seed"] = args.seed
    cloud = sampling.sample(sampling.SampleSpec.from_dict(spec_record))
    sampling.write_cloud_csv(cloud, outdir / "cloud.csv")

    fit_params = dict(preset["fit"])
    if args.iters is not None:
        fit_params["max_iters"] = args.iters
    milestones = [m for m in preset["snapshots"] if m <= fit_params["max_iters"]]
    proj = preset["proj"]
    traces: dict[str, list[float]] = {}

    for run in preset["runs"]:
        rundir = outdir / run["name"] if len(preset["runs"]) > 1 else outdir
        rundir.mkdir(parents=True, exist_ok=True)
        K, canonical = meshgen.build_mesh(run["mesh"])
        place = run.get("place")
        if place is None:
            linmap = canonical
        else:
            linmap = meshgen.place_in_bbox(canonical, cloud,
                                           axes=place.get("axes"),
                                           scale=place.get("scale", 1.0))
        complexes.write_complex(K, rundir / "complex.json")
        nearest.write_positions(linmap, rundir / "positions.json")

        def snapshot(it, current, ssd, disp, _K=K, _dir=rundir):
            if (it + 1) in milestones:
                fitting.write_checkpoint(current, it + 1, _dir / f"checkpoint_{it + 1:06d}.json")
                render.render_state(cloud, _K, current,
                                    _dir / f"state_iter{it + 1:06d}.svg", proj=proj,
                                    title=f"{name}: {it + 1} iterations")

        if 0 in milestones:
            render.render_state(cloud, K, linmap, rundir / "state_iter000000.svg",
                                proj=proj, title=f"{name}: 0 iterations")

        config = fitting.FitConfig(threads=args.threads, **fit_params)
        result = fitting.fit(K, linmap, cloud, config, on_iteration=snapshot)
        fitting.write_fit_json(result, K, rundir / "fit.json", config)
        fitting.write_trace_csv(result, rundir / "trace.csv")
        render.render_state(cloud, K, result.linear_map, rundir / "state_final.svg",
                            proj=proj, title=f"{name}: {result.iterations_run} iterations")
        traces[run["name"]] = result.ssd_trace

        prune_config = pruning.PruneConfig(alpha=preset["alpha"])
        prune_result = pruning.prune(result, K, prune_config)
        pruning.write_prune_json(prune_result, rundir / "prune.json")
        pruning.write_codes_jsonl(prune_result, result.linear_map, cloud,
                                  rundir / "codes.jsonl")

        record = {
            "mean_ssd": metrics.mean_ssd(cloud, result.assignments),
            "hausdorff": metrics.hausdorff(cloud, K, result.linear_map),
            "sample_density": 10,
        }
        with open(rundir / "metrics.json", "w") as fh:
            json.dump(record, fh)
            fh.write("\n")

    render.render_ssd_traces(traces, outdir / "ssd_trace.svg",
                             title=f"{name}: mean SSD per iteration")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FloatingPointError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
