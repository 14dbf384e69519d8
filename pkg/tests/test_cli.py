import csv
import json
from importlib import resources

import jsonschema
import pytest

from ccenum.cli import main, read_solutions
from ccenum.generators import write_graph, write_membership
from ccenum.graph import SignedGraph
from ccenum.oracle import oracle_optima
from ccenum.partition import Membership

from conftest import balanced_two_modules, frustrated_triangle


def _schema():
    with resources.files("ccenum").joinpath("stats_schema.json").open() as fh:
        return json.load(fh)


def test_generate_writes_instances_and_manifest(tmp_path):
    out = tmp_path / "inst"
    rc = main(["generate", "--dataset", "1", "--n", "9", "--l0", "3",
               "--d", "1.0", "--qm", "0.1", "--seeds", "3", "--out", str(out)])
    assert rc == 0
    manifest = json.loads((out / "manifest.json").read_text())
    assert len(manifest["files"]) == 3
    for entry in manifest["files"]:
        assert (out / entry["graph"]).exists()


def test_generate_is_deterministic(tmp_path):
    a = tmp_path / "a"
    b = tmp_path / "b"
    for out in (a, b):
        rc = main(["generate", "--dataset", "2", "--n", "8", "--l0", "2",
                   "--d", "1.0", "--qm", "0.2", "--seeds", "2", "--out", str(out)])
        assert rc == 0
    for name in ("manifest.json",) + tuple(e["graph"] for e in
                                           json.loads((a / "manifest.json").read_text())["files"]):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_generate_rejects_bad_flags(tmp_path):
    rc = main(["generate", "--dataset", "1", "--n", "3", "--l0", "9",
               "--out", str(tmp_path)])
    assert rc == 3


def test_enumerate_triangle(tmp_path):
    gpath = tmp_path / "tri.graph"
    write_graph(gpath, frustrated_triangle())
    out = tmp_path / "res"
    rc = main(["enumerate", str(gpath), "--out", str(out)])
    assert rc == 0
    sols = read_solutions(out / "tri.solutions.txt")
    assert sols == {(0, 0, 0), (0, 0, 1), (0, 1, 0)}
    record = json.loads((out / "tri.stats.json").read_text())
    assert record["istar"] == 1
    assert record["solutions_found"] == 3
    assert record["termination"] == "exhausted"
    jsonschema.validate(record, _schema())
    with open(out / "runs.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 1 and rows[0]["instance"] == "tri"


def test_enumerate_solution_cap_exit_code(tmp_path):
    gpath = tmp_path / "tri.graph"
    write_graph(gpath, frustrated_triangle())
    out = tmp_path / "res"
    rc = main(["enumerate", str(gpath), "--max-solutions", "1", "--out", str(out)])
    assert rc == 2
    record = json.loads((out / "tri.stats.json").read_text())
    assert record["termination"] == "solution_cap"
    assert record["solutions_found"] == 1
    jsonschema.validate(record, _schema())


def test_enumerate_solutions_file_roundtrip(tmp_path):
    gpath = tmp_path / "b.graph"
    write_graph(gpath, balanced_two_modules(3))
    out = tmp_path / "res"
    assert main(["enumerate", str(gpath), "--out", str(out)]) == 0
    sols = read_solutions(out / "b.solutions.txt")
    assert sols == oracle_optima(balanced_two_modules(3)).label_tuples()


def test_enumerate_modes_agree(tmp_path):
    gpath = tmp_path / "tri.graph"
    write_graph(gpath, frustrated_triangle())
    results = {}
    for mode in ("enumcc", "sequential"):
        out = tmp_path / mode
        assert main(["enumerate", str(gpath), "--mode", mode, "--out", str(out)]) == 0
        results[mode] = read_solutions(out / "tri.solutions.txt")
    assert results["enumcc"] == results["sequential"]


def test_enumerate_pruning_toggles(tmp_path):
    gpath = tmp_path / "tri.graph"
    write_graph(gpath, frustrated_triangle())
    out = tmp_path / "res"
    assert main(["enumerate", str(gpath), "--no-mvmo", "--no-atomic",
                 "--out", str(out)]) == 0
    record = json.loads((out / "tri.stats.json").read_text())
    assert record["pruning"]["int_mvmo"] is False
    assert record["pruning"]["ext_atomic"] is False
    jsonschema.validate(record, _schema())


def test_enumerate_missing_file(tmp_path):
    assert main(["enumerate", str(tmp_path / "absent.graph")]) == 3


def test_verify_ok_and_trivial(tmp_path):
    gpath = tmp_path / "tri.graph"
    write_graph(gpath, frustrated_triangle())
    assert main(["verify", str(gpath)]) == 0
    empty = tmp_path / "empty.graph"
    write_graph(empty, SignedGraph(3, []))
    assert main(["verify", str(empty)]) == 0


def test_bench_empty_directory(tmp_path):
    out = tmp_path / "bench.csv"
    rc = main(["bench", str(tmp_path), "--out", str(out)])
    assert rc == 0
    with open(out, newline="") as fh:
        rows = list(csv.reader(fh))
    assert len(rows) == 1  # header only
    assert rows[0][0] == "instance"


def test_bench_with_instances(tmp_path):
    gdir = tmp_path / "inst"
    assert main(["generate", "--dataset", "2", "--n", "9", "--l0", "3",
                 "--d", "1.0", "--qm", "0.1", "--seeds", "2",
                 "--out", str(gdir)]) == 0
    out = tmp_path / "bench.csv"
    assert main(["bench", str(gdir), "--r", "2", "--out", str(out)]) == 0
    with open(out, newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 2
    for row in rows:
        assert row["with_mvmo_neighbors"] == row["without_mvmo_neighbors"]
        assert int(row["with_mvmo_candidates"]) <= int(row["without_mvmo_candidates"])
