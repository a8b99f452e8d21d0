"""Command-line front end: cluster, evaluate, generate, bench, plot.

Exit codes: 0 success, 1 usage or input error, 2 internal invariant violation.
"""
from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .baselines import kmeans, normal_mst_cluster
from .data_io import (
    FAMILIES,
    GeneratorSpec,
    dataset_to_csv,
    generate,
    minmax_points,
    parse_csv,
)
from .errors import EmptyFile, GBMSTError, InvariantViolation
from .gb_cluster import ClusterConfig, Clustering, cluster
from .gb_core import Dataset, GenerationConfig
from .metrics import evaluate
from .plot import render_svg

ALGORITHMS = ("gbmst", "normal-mst", "kmeans")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def default_seed() -> int:
    raw = os.environ.get("GBMST_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"GBMST_SEED must be an integer, got {raw!r}") from None


def run_algorithm(dataset: Dataset, algo: str, k: int, normalize: bool = True,
                  generation: GenerationConfig = None, seed: int = 0) -> Clustering:
    if algo == "gbmst":
        return cluster(dataset, ClusterConfig(k, normalize, generation or GenerationConfig()))
    work = dataset.with_points(minmax_points(dataset.points)) if normalize else dataset
    if algo == "normal-mst":
        return normal_mst_cluster(work, k)
    if algo == "kmeans":
        return kmeans(work, k, seed=seed)
    raise UsageError(f"unknown algorithm {algo!r}")


def check_clustering(result: Clustering, n: int) -> None:
    labels = result.point_labels
    if labels.shape[0] != n or labels.min() < 0:
        raise InvariantViolation("every point must carry a non-negative label")
    balls = result.info.get("balls")
    if balls is not None:
        try:
            balls.check()
        except AssertionError as exc:
            raise InvariantViolation(f"granular-balls do not partition the data: {exc}") from None
        owner = balls.point_to_ball()
        if not np.array_equal(labels, result.ball_labels[owner]):
            raise InvariantViolation("point labels disagree with their ball labels")


def labels_csv(labels) -> str:
    lines = ["point_index,label"] + [f"{i},{int(v)}" for i, v in enumerate(labels)]
    return "\n".join(lines) + "\n"


def mst_csv(mst) -> str:
    lines = ["a,b,weight"] + [f"{e.a},{e.b},{e.weight:.12g}" for e in mst.edges]
    return "\n".join(lines) + "\n"


def build_report(algo, config, dataset, result, fingerprint, runtime, deterministic=False) -> dict:
    timings = dict(result.info.get("stage_timings", {}))
    if deterministic:
        runtime = 0.0
        timings = {k: 0.0 for k in timings}
    metrics = None
    if dataset.labels is not None:
        metrics = evaluate(result.point_labels, dataset.labels, runtime_seconds=runtime,
                           stage_timings=timings).to_dict()
    provenance = {
        "n_points": dataset.n,
        "dim": dataset.dim,
        "clusters_found": result.k,
        "cut_weights": result.info.get("cut_weights", []),
    }
    for key in ("ball_count", "core_count", "outlier_count", "outlier_fallback", "iterations", "inertia"):
        if key in result.info:
            provenance[key] = result.info[key]
    return {
        "algorithm": algo,
        "config": config,
        "metrics": metrics,
        "runtime_seconds": runtime,
        "stage_timings": timings,
        "provenance": provenance,
        "input_sha256": fingerprint,
        "version": __version__,
    }


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _emit(text: str, path, stdout) -> None:
    if path in (None, "-"):
        stdout.write(text)
    else:
        Path(path).write_bytes(text.encode("utf-8"))


def _read_dataset(path, args) -> tuple[Dataset, str]:
    raw = Path(path).read_bytes()
    label_col = None if args.label_column == "none" else args.label_column
    if not raw.strip():
        raise EmptyFile(f"{path} is empty")
    ds = parse_csv(raw.decode("utf-8"), has_header=not args.no_header, label_column=label_col,
                   name=Path(path).stem)
    return ds, hashlib.sha256(raw).hexdigest()


def cmd_cluster(args, stdout) -> int:
    dataset, fingerprint = _read_dataset(args.input, args)
    gen = GenerationConfig(
        min_ball_size=args.min_ball_size,
        oversize_factor=args.oversize_factor,
        farthest_pair_mode="exact" if args.exact_diameter else "heuristic",
    )
    seed = default_seed() if args.seed is None else args.seed
    t0 = time.perf_counter()
    result = run_algorithm(dataset, args.algo, args.k, args.normalize, gen, seed)
    runtime = time.perf_counter() - t0
    check_clustering(result, dataset.n)

    config = {"k": args.k, "normalize": args.normalize}
    if args.algo == "gbmst":
        config.update(
            min_ball_size=result.info["balls"].config.min_ball_size,
            oversize_factor=args.oversize_factor,
            farthest_pair_mode=gen.farthest_pair_mode,
        )
    if args.algo == "kmeans":
        config["seed"] = seed
    report = build_report(args.algo, config, dataset, result, fingerprint, runtime,
                          deterministic=args.deterministic_report)

    if args.labels_out:
        _emit(labels_csv(result.point_labels), args.labels_out, stdout)
    if args.mst_out:
        if "mst" not in result.info:
            raise UsageError("--mst-out needs an MST-based algorithm")
        _emit(mst_csv(result.info["mst"]), args.mst_out, stdout)
    if args.plot_out:
        if dataset.dim != 2:
            raise UsageError("--plot-out needs 2-d data")
        pts = result.info.get("points")
        if pts is None:
            pts = minmax_points(dataset.points) if args.normalize else dataset.points
        balls = result.info.get("balls")
        svg = render_svg(
            pts, result.point_labels,
            balls=balls.balls if balls is not None and not args.no_balls else None,
            ball_labels=result.ball_labels if balls is not None else None,
            title=f"{args.algo} k={args.k} {Path(args.input).name}",
        )
        _emit(svg, args.plot_out, stdout)
    _emit(dump_json(report), args.report_out, stdout)
    return 0


def _read_labels(path) -> np.ndarray:
    rows = list(csv.reader(io.StringIO(Path(path).read_text(encoding="utf-8"))))
    if rows and rows[0] and not rows[0][-1].strip().lstrip("-").isdigit():
        rows = rows[1:]
    try:
        return np.array([int(r[-1]) for r in rows if r], dtype=np.int64)
    except ValueError as exc:
        raise GBMSTError(f"{path}: {exc}") from None


def cmd_evaluate(args, stdout) -> int:
    pred = _read_labels(args.pred)
    truth, _ = _read_dataset(args.truth, args)
    if truth.labels is None:
        raise UsageError(f"{args.truth} has no label column")
    _emit(evaluate(pred, truth.labels).to_json(), args.out, stdout)
    return 0


def _floats(text: str) -> list:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from None


def cmd_generate(args, stdout) -> int:
    spec = GeneratorSpec(
        family=args.family,
        n_points=args.n,
        noise_fraction=args.noise,
        noise_sigma=args.sigma,
        seed=default_seed() if args.seed is None else args.seed,
        n_clusters=args.clusters,
        radii=_floats(args.radii),
        sigmas=_floats(args.sigmas) if args.sigmas else None,
        arms=args.arms,
        turns=args.turns,
    )
    data = dataset_to_csv(generate(spec))
    _emit(data, args.out, stdout)
    if args.out not in (None, "-"):
        Path(args.out).with_suffix(".json").write_text(spec.to_json(), encoding="utf-8")
    return 0


def bench_rows(family, sizes, k, repeats, algos, seed=0, sigma=0.1, timer=time.perf_counter):
    rows = []
    for algo in algos:
        prev = None
        for n in sizes:
            spec = GeneratorSpec(family, n, 0.0, sigma, seed, n_clusters=k)
            ds = generate(spec)
            times = []
            for _ in range(repeats):
                t0 = timer()
                run_algorithm(ds, algo, k, True, GenerationConfig(), seed)
                times.append(timer() - t0)
            mean = sum(times) / len(times)
            rows.append({
                "algorithm": algo,
                "n": n,
                "repeats": repeats,
                "mean_seconds": mean,
                "growth_ratio": None if prev is None else mean / prev,
            })
            prev = mean
    return rows


def bench_csv(rows, contended=False) -> str:
    lines = ["algorithm,n,repeats,mean_seconds,growth_ratio,contended"]
    for r in rows:
        ratio = "" if r["growth_ratio"] is None else f"{r['growth_ratio']:.4f}"
        lines.append(f"{r['algorithm']},{r['n']},{r['repeats']},{r['mean_seconds']:.6f},{ratio},{int(contended)}")
    return "\n".join(lines) + "\n"


def cmd_bench(args, stdout) -> int:
    sizes = [int(v) for v in args.sizes.split(",") if v.strip()]
    if not sizes or sizes != sorted(sizes):
        raise UsageError("--sizes must be a non-empty ascending list")
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    for a in algos:
        if a not in ALGORITHMS:
            raise UsageError(f"unknown algorithm {a!r}")
    seed = default_seed() if args.seed is None else args.seed
    if args.parallel:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor() as pool:
            parts = pool.map(bench_rows, *zip(*[(args.family, sizes, args.k, args.repeats, [a], seed) for a in algos]))
            rows = [r for part in parts for r in part]
    else:
        rows = bench_rows(args.family, sizes, args.k, args.repeats, algos, seed)
    _emit(bench_csv(rows, contended=args.parallel), args.out, stdout)
    return 0


def cmd_plot(args, stdout) -> int:
    dataset, _ = _read_dataset(args.input, args)
    if dataset.dim != 2:
        raise UsageError("only 2-d data can be plotted")
    labels = _read_labels(args.labels) if args.labels else (
        dataset.labels if dataset.labels is not None else np.zeros(dataset.n, dtype=np.int64))
    if len(labels) != dataset.n:
        raise UsageError(f"{len(labels)} labels for {dataset.n} points")
    _emit(render_svg(dataset.points, labels, title=Path(args.input).name), args.out, stdout)
    return 0


def _add_input_flags(p):
    p.add_argument("--no-header", action="store_true", help="input CSV has no header row")
    p.add_argument("--label-column", default="auto",
                   help="label column name or index; 'auto' picks label/class/target; 'none' disables")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gbmst", description="Granular-ball MST clustering")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("cluster", help="cluster a CSV dataset")
    p.add_argument("input")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--algo", choices=ALGORITHMS, default="gbmst")
    p.add_argument("--normalize", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--min-ball-size", type=int, default=None)
    p.add_argument("--oversize-factor", type=float, default=2.0)
    p.add_argument("--exact-diameter", action="store_true")
    p.add_argument("--seed", type=int, default=None, help="k-means seed (default $GBMST_SEED or 0)")
    p.add_argument("--labels-out")
    p.add_argument("--report-out", help="JSON report path (default stdout)")
    p.add_argument("--plot-out", help="SVG scatter plot path (2-d data)")
    p.add_argument("--no-balls", action="store_true", help="omit the ball overlay in the plot")
    p.add_argument("--mst-out", help="MST edge list CSV path")
    p.add_argument("--deterministic-report", action="store_true", help="zero all timing fields")
    _add_input_flags(p)
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("evaluate", help="score a labels CSV against ground truth")
    p.add_argument("--pred", required=True)
    p.add_argument("--truth", required=True)
    p.add_argument("--out")
    _add_input_flags(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("generate", help="write a seeded synthetic dataset")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--noise", type=float, default=0.0)
    p.add_argument("--sigma", type=float, default=0.05)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--clusters", type=int, default=2)
    p.add_argument("--radii", default="1,2")
    p.add_argument("--sigmas", help="per-blob std, comma-separated (blobs only)")
    p.add_argument("--arms", type=int, default=2)
    p.add_argument("--turns", type=float, default=1.0)
    p.add_argument("--out", help="CSV path; a .json spec sidecar is written next to it")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("bench", help="wall-clock scaling sweep")
    p.add_argument("--family", default="blobs", choices=FAMILIES)
    p.add_argument("--sizes", default="10000,20000,40000")
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--algos", default="gbmst,normal-mst")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--parallel", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("plot", help="SVG scatter plot of a 2-d dataset")
    p.add_argument("input")
    p.add_argument("--labels", help="labels CSV (default: the dataset's own labels)")
    p.add_argument("--out", required=True)
    _add_input_flags(p)
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, stdout)
    except UsageError as exc:
        stderr.write(f"usage error: {exc}\n")
        return 1
    except (GBMSTError, OSError, UnicodeDecodeError) as exc:
        stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1
    except (InvariantViolation, AssertionError) as exc:
        stderr.write(f"internal error: {type(exc).__name__}: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
