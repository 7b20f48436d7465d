"""Command-line interface: simulate, cluster, evaluate, bench."""

import csv
import json

import pytest

from codcluster.cli import main


def run(*argv):
    return main([str(a) for a in argv])


@pytest.fixture()
def small_dataset(tmp_path):
    path = tmp_path / "ds"
    assert run("simulate", "--preset", "supp-table1", "--n", "40", "--seed", "3", "-o", path) == 0
    return path


@pytest.fixture()
def tensor_dataset(tmp_path):
    path = tmp_path / "tds"
    assert run("simulate", "--preset", "tensor-g32", "--n", "20", "--seed", "1", "-o", path) == 0
    return path


def test_simulate_writes_expected_layout(small_dataset):
    manifest = json.loads((small_dataset / "manifest.json").read_text())
    assert manifest["dims"] == [30, 30]
    assert manifest["n"] == 40
    assert set(manifest["truth"]) == {"rows", "columns"}
    assert manifest["provenance"]["preset"] == "supp-table1"
    assert (small_dataset / "data.txt").is_file()


def test_simulate_tensor_dims(tensor_dataset):
    manifest = json.loads((tensor_dataset / "manifest.json").read_text())
    assert manifest["dims"] == [15, 10, 10]
    assert set(manifest["truth"]) == {"mode1", "mode2", "mode3"}


def test_simulate_is_reproducible(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    run("simulate", "--preset", "supp-table1", "--n", "5", "--seed", "7", "-o", a)
    run("simulate", "--preset", "supp-table1", "--n", "5", "--seed", "7", "-o", b)
    assert (a / "data.txt").read_text() == (b / "data.txt").read_text()


def test_cluster_two_step_with_target_k(small_dataset, tmp_path):
    out = tmp_path / "res.json"
    code = run("cluster", small_dataset, "--method", "two-step", "--k", "4", "-o", out)
    assert code == 0
    res = json.loads(out.read_text())
    assert res["method"] == "two-step"
    assert set(res["partitions"]) == {"rows", "columns"}
    assert len(res["partitions"]["rows"]) == 30
    assert res["metrics"]["rows"]["ari"] > 0.8
    assert [t["name"] for t in res["trace"]] == ["rows", "columns", "rows-refined"]


def test_cluster_per_axis_values_and_determinism(small_dataset, tmp_path):
    out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
    args = ("cluster", small_dataset, "--method", "one-step", "--k", "4", "3")
    assert run(*args, "-o", out1) == 0
    assert run(*args, "-o", out2) == 0
    assert out1.read_text() == out2.read_text()
    res = json.loads(out1.read_text())
    assert res["trace"][0]["stop"] == "k=4"
    assert res["trace"][1]["stop"] == "k=3"


def test_cluster_naive_single_axis(small_dataset, tmp_path):
    out = tmp_path / "res.json"
    assert run(
        "cluster", small_dataset, "--method", "naive", "--axis", "rows",
        "--alpha", "0.2", "-o", out,
    ) == 0
    res = json.loads(out.read_text())
    assert set(res["partitions"]) == {"rows"}


def test_cluster_tuned(small_dataset, tmp_path):
    out = tmp_path / "res.json"
    assert run("cluster", small_dataset, "--method", "two-step", "--tune", "-o", out) == 0
    res = json.loads(out.read_text())
    assert all("tuned_alpha" in t for t in res["trace"])


def test_cluster_nested_requires_mean_k(small_dataset, tmp_path):
    out = tmp_path / "res.json"
    assert run("cluster", small_dataset, "--method", "nested", "--k", "4", "-o", out) == 2
    assert run(
        "cluster", small_dataset, "--method", "nested", "--k", "4",
        "--mean-k", "1", "-o", out,
    ) == 0
    res = json.loads(out.read_text())
    assert set(res["partitions"]) == {"rows", "columns"}


def test_cluster_tensor_dataset(tensor_dataset, tmp_path):
    out = tmp_path / "res.json"
    assert run("cluster", tensor_dataset, "--k", "5", "4", "4", "-o", out) == 0
    res = json.loads(out.read_text())
    assert set(res["partitions"]) == {"mode1", "mode2", "mode3"}
    assert res["metrics"]["mode3"]["ari"] > 0.5
    # matrix methods are rejected on tensor data
    assert run("cluster", tensor_dataset, "--method", "naive", "--k", "5", "-o", out) == 2


def test_evaluate_truth_against_result(small_dataset, tmp_path, capsys):
    out = tmp_path / "res.json"
    run("cluster", small_dataset, "--method", "two-step", "--k", "4", "-o", out)
    assert run("evaluate", "--truth", small_dataset, "--est", out) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 2
    for line in lines:
        axis, ari, sn, sp = line.split()
        assert axis in ("rows", "columns")
        assert ari.startswith("ari=") and sn.startswith("sn=") and sp.startswith("sp=")
    # truth against itself scores 1 everywhere
    capsys.readouterr()
    assert run("evaluate", "--truth", small_dataset, "--est", small_dataset) == 0
    for line in capsys.readouterr().out.strip().splitlines():
        assert "ari=1.000000" in line


def test_evaluate_rejects_disjoint_axes(small_dataset, tensor_dataset):
    assert run("evaluate", "--truth", small_dataset, "--est", tensor_dataset) == 2


def test_bench_produces_reproducible_csv(tmp_path):
    out1, out2 = tmp_path / "b1.csv", tmp_path / "b2.csv"
    args = (
        "bench", "--preset", "supp-table1", "--n-list", "30", "--reps", "2",
        "--methods", "naive,two-step", "--seed", "11",
    )
    assert run(*args, "-o", out1) == 0
    assert run(*args, "-o", out2) == 0
    assert out1.read_text() == out2.read_text()
    with open(out1) as fh:
        rows = list(csv.DictReader(fh))
    assert {r["method"] for r in rows} == {"naive", "two-step"}
    assert {r["axis"] for r in rows} == {"rows", "columns"}
    for r in rows:
        assert 0.0 <= abs(float(r["mean_ari"])) <= 1.0
        assert r["reps"] == "2"


def test_usage_errors_exit_2(tmp_path):
    assert run("simulate", "--preset", "bogus", "--n", "5", "-o", tmp_path / "x") == 2
    assert run("nonsense") == 2
    ds = tmp_path / "ds"
    run("simulate", "--preset", "supp-table1", "--n", "6", "-o", ds)
    out = tmp_path / "res.json"
    # no stop rule / conflicting stop rules
    assert run("cluster", ds, "--method", "two-step", "-o", out) == 2
    assert run("cluster", ds, "--method", "two-step", "--k", "4", "--tune", "-o", out) == 2
    # one-step is a both-axes method
    assert run("cluster", ds, "--method", "one-step", "--axis", "rows", "--k", "4", "-o", out) == 2
    # missing dataset directory
    assert run("cluster", tmp_path / "nope", "--method", "naive", "--k", "4", "-o", out) == 2
