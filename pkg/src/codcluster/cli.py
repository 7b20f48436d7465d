"""Command-line interface: simulate, cluster, evaluate, bench.

Exit codes: 0 success, 2 usage/configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import sys
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path

import numpy as np

from .exceptions import ArgumentError, ModelError
from .io import Dataset, read_dataset, read_result, write_dataset, write_result
from .metrics import adjusted_rand_index, sensitivity_specificity
from .partition import Partition, partition_from_labels
from .pipelines import (
    MeanLayerSpec,
    PipelineOptions,
    StopRule,
    cluster_naive,
    cluster_nested,
    cluster_one_step,
    cluster_two_step,
)
from .presets import PRESET_NAMES, preset
from .simulate import (
    SimConfig,
    TensorSimConfig,
    sample_matrix_normal_dataset,
    sample_tensor_dataset,
)
from .tensor import cluster_tensor_identity, matricize
from .tuning import select_alpha
from .weights import identity_weight


def _tool_version() -> str:
    try:
        return version("codcluster")
    except PackageNotFoundError:
        return "unknown"


def _simulate_dataset(name: str, n: int, seed: int) -> Dataset:
    config = preset(name, n, seed)
    if isinstance(config, TensorSimConfig):
        data, parts = sample_tensor_dataset(config)
        truth = {f"mode{j + 1}": part for j, part in enumerate(parts)}
        provenance = {
            "preset": name,
            "seed": seed,
            "sizes": [list(mode) for mode in config.sizes],
            "decays": list(config.decays),
            "noise_var": config.noise_var,
        }
    else:
        data, model = sample_matrix_normal_dataset(config)
        truth = {"rows": model.row_partition, "columns": model.col_partition}
        provenance = {
            "preset": name,
            "seed": seed,
            "row_sizes": list(config.row_sizes),
            "col_sizes": list(config.col_sizes),
            "u_decay": config.u_decay,
            "v_decay": config.v_decay,
            "noise": {
                "regime": config.noise.regime,
                "mean": config.noise.mean,
                "h": config.noise.h,
            },
        }
    return Dataset(data, truth, provenance)


def cmd_simulate(args) -> int:
    write_dataset(_simulate_dataset(args.preset, args.n, args.seed), args.output)
    return 0


def _axis_values(values, count: int, what: str):
    """Broadcast a 1-value flag to `count` axes, or require exactly `count`."""
    if values is None:
        return [None] * count
    if len(values) == 1:
        return list(values) * count
    if len(values) != count:
        raise ArgumentError(f"{what} takes 1 or {count} values")
    return list(values)


def _stop_rules(args, count: int) -> list[StopRule]:
    chosen = sum(x is not None and x is not False for x in (args.alpha, args.k, args.tune))
    if chosen != 1:
        raise ArgumentError("specify exactly one of --alpha, --k, --tune")
    if args.alpha is not None:
        return [StopRule("threshold", a) for a in _axis_values(args.alpha, count, "--alpha")]
    if args.k is not None:
        return [StopRule("k", k) for k in _axis_values(args.k, count, "--k")]
    return [StopRule("tuned")] * count


def _metrics(truth: Partition, est: Partition) -> dict:
    rep = sensitivity_specificity(truth, est)
    return {
        "ari": adjusted_rand_index(truth, est),
        "sensitivity": rep.sensitivity,
        "specificity": rep.specificity,
        "sensitivity_defined": rep.sensitivity_defined,
        "specificity_defined": rep.specificity_defined,
    }


def _tensor_tuned_stops(data: np.ndarray, seed: int) -> list[StopRule]:
    stops = []
    for mode in (1, 2, 3):
        unfolded = np.stack([matricize(data[i], mode) for i in range(data.shape[0])])
        weight = identity_weight(unfolded.shape[2])
        rule = StopRule("tuned")
        report = select_alpha(
            unfolded,
            weight,
            "rows",
            seed=seed + mode,
            n_splits=rule.splits,
            tree_fraction=rule.fraction,
        )
        stops.append(StopRule("threshold", report.alpha))
    return stops


def _cluster_tensor(dataset: Dataset, args) -> dict:
    if args.tune:
        stops = _tensor_tuned_stops(dataset.data, args.seed)
    else:
        stops = _stop_rules(args, 3)
    parts = cluster_tensor_identity(dataset.data, tuple(stops))
    out = {"method": "tensor", "partitions": {}, "metrics": {}}
    for j, part in enumerate(parts):
        axis = f"mode{j + 1}"
        out["partitions"][axis] = part.labels.tolist()
        if axis in dataset.truth:
            out["metrics"][axis] = _metrics(dataset.truth[axis], part)
    out["stops"] = [{"kind": s.kind, "value": s.value} for s in stops]
    return out


def _trace_json(trace) -> list[dict]:
    out = []
    for step in trace:
        d = {
            "name": step.name,
            "mode": step.mode,
            "weight": step.weight_tag,
            "stop": step.stop,
            "n_clusters": step.n_clusters,
            "degenerate": step.degenerate,
        }
        if step.tuning is not None:
            d["tuned_alpha"] = step.tuning.alpha
        out.append(d)
    return out


def _cluster_matrix(dataset: Dataset, args) -> dict:
    row_stop, col_stop = _stop_rules(args, 2)
    opts = PipelineOptions(
        row_stop=row_stop,
        col_stop=col_stop,
        standardize=args.standardize == "on",
        split=args.split == "seeded",
        seed=args.seed,
    )
    method = args.method
    parts: dict[str, Partition] = {}
    if method == "naive":
        traces = ()
        axes = ("rows", "columns") if args.axis == "both" else (args.axis,)
        for axis in axes:
            res = cluster_naive(dataset.data, axis, opts)
            part = res.row_partition if axis == "rows" else res.col_partition
            parts[axis] = part
            traces = traces + res.trace
    elif method in ("one-step", "two-step"):
        if args.axis != "both":
            raise ArgumentError(f"--method {method} clusters both axes")
        run = cluster_one_step if method == "one-step" else cluster_two_step
        res = run(dataset.data, opts)
        parts = {"rows": res.row_partition, "columns": res.col_partition}
        traces = res.trace
    elif method == "nested":
        if args.mean_k is None:
            raise ArgumentError("--method nested requires --mean-k")
        mk = _axis_values(args.mean_k, 2, "--mean-k")
        mean_layer = MeanLayerSpec(StopRule("k", mk[0]), StopRule("k", mk[1]))
        res = cluster_nested(dataset.data, mean_layer, opts)
        parts = {"rows": res.rows, "columns": res.cols}
        traces = res.traces
    else:
        raise ArgumentError(f"unknown method {method!r}")
    out = {
        "method": method,
        "partitions": {axis: part.labels.tolist() for axis, part in parts.items()},
        "trace": _trace_json(traces),
        "metrics": {},
        "seed": args.seed,
    }
    for axis, part in parts.items():
        if axis in dataset.truth:
            out["metrics"][axis] = _metrics(dataset.truth[axis], part)
    return out


def cmd_cluster(args) -> int:
    dataset = read_dataset(args.dataset)
    if dataset.kind == "tensor":
        if args.method not in (None, "tensor"):
            raise ArgumentError("tensor datasets are clustered with --method tensor")
        result = _cluster_tensor(dataset, args)
    else:
        if args.method in (None, "tensor"):
            raise ArgumentError("matrix datasets need --method naive|one-step|two-step|nested")
        result = _cluster_matrix(dataset, args)
    result["tool_version"] = _tool_version()
    write_result(result, args.output)
    return 0


def _load_partitions(path: str) -> dict[str, Partition]:
    p = Path(path)
    if p.is_dir():
        return read_dataset(p).truth
    doc = read_result(p)
    labels = doc.get("partitions", doc)
    if not isinstance(labels, dict):
        raise ArgumentError(f"{path} does not contain partitions")
    return {
        axis: partition_from_labels(np.asarray(v, dtype=np.int64))
        for axis, v in labels.items()
        if isinstance(v, list)
    }


def cmd_evaluate(args) -> int:
    truth = _load_partitions(args.truth)
    est = _load_partitions(args.est)
    shared = [axis for axis in truth if axis in est]
    if not shared:
        raise ArgumentError("no common axes between truth and estimate")
    for axis in shared:
        if len(truth[axis]) != len(est[axis]):
            raise ArgumentError(f"axis {axis}: label vectors differ in length")
        m = _metrics(truth[axis], est[axis])
        print(
            f"{axis} ari={m['ari']:.6f} sn={m['sensitivity']:.6f} "
            f"sp={m['specificity']:.6f}"
        )
    return 0


def _bench_matrix(config: SimConfig, method: str, tune: bool, ks) -> dict[str, float]:
    data, model = sample_matrix_normal_dataset(config)
    truth = {"rows": model.row_partition, "columns": model.col_partition}
    if tune:
        row_stop = col_stop = StopRule("tuned")
    else:
        row_stop = StopRule("k", ks[0])
        col_stop = StopRule("k", ks[1])
    opts = PipelineOptions(row_stop=row_stop, col_stop=col_stop, seed=config.seed)
    if method == "naive":
        parts = {
            "rows": cluster_naive(data, "rows", opts).row_partition,
            "columns": cluster_naive(data, "columns", opts).col_partition,
        }
    elif method == "one-step":
        res = cluster_one_step(data, opts)
        parts = {"rows": res.row_partition, "columns": res.col_partition}
    elif method == "two-step":
        res = cluster_two_step(data, opts)
        parts = {"rows": res.row_partition, "columns": res.col_partition}
    else:
        raise ArgumentError(f"unknown bench method {method!r}")
    return {axis: adjusted_rand_index(truth[axis], parts[axis]) for axis in parts}


def _bench_tensor(config: TensorSimConfig, tune: bool, seed: int) -> dict[str, float]:
    data, parts_true = sample_tensor_dataset(config)
    if tune:
        stops = tuple(_tensor_tuned_stops(data, seed))
    else:
        stops = tuple(StopRule("k", len(mode)) for mode in config.sizes)
    parts = cluster_tensor_identity(data, stops)
    return {
        f"mode{j + 1}": adjusted_rand_index(t, e)
        for j, (t, e) in enumerate(zip(parts_true, parts))
    }


def cmd_bench(args) -> int:
    n_list = [int(v) for v in args.n_list.split(",")]
    methods = args.methods.split(",")
    rows = []
    for method in methods:
        for n in n_list:
            per_axis: dict[str, list[float]] = {}
            for rep in range(args.reps):
                rep_seed = args.seed + 1000 * rep
                config = preset(args.preset, n, rep_seed)
                if isinstance(config, TensorSimConfig):
                    if method != "tensor":
                        raise ArgumentError("tensor presets bench with --methods tensor")
                    aris = _bench_tensor(config, args.tune, rep_seed)
                else:
                    if method == "tensor":
                        raise ArgumentError("matrix presets cannot bench method tensor")
                    ks = (len(config.row_sizes), len(config.col_sizes))
                    aris = _bench_matrix(config, method, args.tune, ks)
                for axis, v in aris.items():
                    per_axis.setdefault(axis, []).append(v)
            for axis, values in sorted(per_axis.items()):
                arr = np.asarray(values)
                rows.append(
                    {
                        "method": method,
                        "n": n,
                        "axis": axis,
                        "mean_ari": f"{arr.mean():.6f}",
                        "sd_ari": f"{arr.std(ddof=1) if len(arr) > 1 else 0.0:.6f}",
                        "reps": args.reps,
                    }
                )
    out = Path(args.output)
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", newline="") as fh:
        writer = csv.DictWriter(
            fh, fieldnames=["method", "n", "axis", "mean_ari", "sd_ari", "reps"]
        )
        writer.writeheader()
        writer.writerows(rows)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="codcluster",
        description="Row/column clustering of matrix data via covariance differences",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="generate a dataset from a named design")
    sim.add_argument("--preset", required=True, choices=PRESET_NAMES)
    sim.add_argument("--n", type=int, required=True)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("-o", "--output", required=True)
    sim.set_defaults(func=cmd_simulate)

    clu = sub.add_parser("cluster", help="cluster a dataset directory")
    clu.add_argument("dataset")
    clu.add_argument(
        "--method",
        choices=["naive", "one-step", "two-step", "nested", "tensor"],
        default=None,
    )
    clu.add_argument("--axis", choices=["rows", "columns", "both"], default="both")
    clu.add_argument("--alpha", type=float, nargs="+", default=None)
    clu.add_argument("--k", type=int, nargs="+", default=None)
    clu.add_argument("--tune", action="store_true")
    clu.add_argument("--mean-k", type=int, nargs="+", default=None)
    clu.add_argument("--standardize", choices=["on", "off"], default="on")
    clu.add_argument("--split", choices=["off", "seeded"], default="off")
    clu.add_argument("--seed", type=int, default=0)
    clu.add_argument("-o", "--output", required=True)
    clu.set_defaults(func=cmd_cluster)

    ev = sub.add_parser("evaluate", help="score estimated partitions against truth")
    ev.add_argument("--truth", required=True)
    ev.add_argument("--est", required=True)
    ev.set_defaults(func=cmd_evaluate)

    ben = sub.add_parser("bench", help="repeat simulate+cluster and tabulate ARI")
    ben.add_argument("--preset", required=True, choices=PRESET_NAMES)
    ben.add_argument("--n-list", required=True)
    ben.add_argument("--reps", type=int, default=30)
    ben.add_argument("--methods", required=True)
    ben.add_argument("--tune", action="store_true")
    ben.add_argument("--seed", type=int, default=0)
    ben.add_argument("-o", "--output", required=True)
    ben.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except ArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ModelError, np.linalg.LinAlgError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
