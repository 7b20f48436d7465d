"""Text dataset and result formats.

A dataset is a directory with `manifest.json` (dimensions, layout, optional
truth labels, provenance) and `data.txt` (one line per sample, the sample's
entries row-major, printed with 17 significant digits so 64-bit floats
round-trip exactly). Results are single JSON files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .exceptions import ArgumentError
from .partition import Partition, partition_from_labels

FORMAT_VERSION = 1


@dataclass(frozen=True)
class Dataset:
    """In-memory dataset: (n, *dims) data plus optional truth partitions.

    `truth` maps axis names ("rows", "columns" for matrices; "mode1".."mode3"
    for tensors) to partitions. `provenance` is free-form config metadata.
    """

    data: np.ndarray
    truth: dict[str, Partition]
    provenance: dict

    @property
    def kind(self) -> str:
        return "tensor" if self.data.ndim == 4 else "matrix"


def write_dataset(dataset: Dataset, path) -> None:
    path = Path(path)
    path.mkdir(parents=True, exist_ok=True)
    data = np.asarray(dataset.data, dtype=np.float64)
    if data.ndim not in (3, 4):
        raise ArgumentError("dataset must be an (n, p, q) or (n, J, P, Q) array")
    manifest = {
        "format_version": FORMAT_VERSION,
        "kind": "tensor" if data.ndim == 4 else "matrix",
        "n": int(data.shape[0]),
        "dims": [int(d) for d in data.shape[1:]],
        "layout": "row-major",
        "truth": {k: v.labels.tolist() for k, v in dataset.truth.items()},
        "provenance": dataset.provenance,
    }
    (path / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    flat = data.reshape(data.shape[0], -1)
    with open(path / "data.txt", "w") as fh:
        for row in flat:
            fh.write(" ".join(f"{v:.17g}" for v in row) + "\n")


def read_dataset(path) -> Dataset:
    path = Path(path)
    manifest_path = path / "manifest.json"
    data_path = path / "data.txt"
    if not manifest_path.is_file() or not data_path.is_file():
        raise ArgumentError(f"{path} is not a dataset directory")
    manifest = json.loads(manifest_path.read_text())
    dims = tuple(int(d) for d in manifest["dims"])
    n = int(manifest["n"])
    flat = np.loadtxt(data_path, ndmin=2)
    if flat.shape != (n, int(np.prod(dims))):
        raise ArgumentError(
            f"data shape {flat.shape} does not match manifest (n={n}, dims={dims})"
        )
    truth = {
        k: partition_from_labels(np.asarray(v, dtype=np.int64))
        for k, v in manifest.get("truth", {}).items()
    }
    return Dataset(flat.reshape(n, *dims), truth, manifest.get("provenance", {}))


def write_result(result: dict, path) -> None:
    """Write a result JSON (partitions as canonical label lists, traces,
    thresholds, metrics)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(result, indent=2, sort_keys=True) + "\n")


def read_result(path) -> dict:
    path = Path(path)
    if not path.is_file():
        raise ArgumentError(f"no result file at {path}")
    return json.loads(path.read_text())
