import json

import pytest

from coprimenet import __version__
from coprimenet.cli import main, scan_grid, UsageError
from coprimenet.config import OUT_DIR_ENV, RunConfig
from coprimenet.export import read_table, write_table
from coprimenet.network import read_edge_list


def run(tmp_path, *args):
    return main([*args, "--out", str(tmp_path), "--no-timestamp"])


def test_build_n25(tmp_path, capsys):
    assert run(tmp_path, "build", "--n", "25") == 0
    edges = read_edge_list(tmp_path / "edges_n25.txt")
    assert len({v for e in edges for v in e}) == 15
    config, rows = read_table(tmp_path / "nodes_n25.csv")
    assert len(rows) == 15 and config["n"] == 25
    assert "N=15" in capsys.readouterr().out


def test_build_n4_and_n10(tmp_path):
    assert run(tmp_path, "build", "--n", "4") == 0
    assert read_edge_list(tmp_path / "edges_n4.txt") == []
    _, rows = read_table(tmp_path / "nodes_n4.csv")
    assert len(rows) == 1
    assert run(tmp_path, "build", "--n", "10") == 0
    assert read_edge_list(tmp_path / "edges_n10.txt") == [(4, 9), (8, 9), (9, 10)]


def test_build_all_tables(tmp_path):
    assert run(tmp_path, "build", "--n", "30", "--tables", "clustering", "cycles", "histogram",
               "--format", "json") == 0
    doc = json.loads((tmp_path / "cycles_n30.json").read_text())
    assert doc["version"] == __version__ and doc["config"]["n"] == 30
    assert [r["r"] for r in doc["rows"]] == [3, 4, 5]
    hist = json.loads((tmp_path / "histogram_n30.json").read_text())
    assert sum(r["count"] for r in hist["rows"]) == 19


def test_build_cap_and_usage(tmp_path, capsys):
    assert run(tmp_path, "build", "--n", "5000", "--max-n", "1000") == 3
    assert run(tmp_path, "build", "--n", "3") == 2
    with pytest.raises(SystemExit) as info:
        main(["build"])
    assert info.value.code == 2


def test_scan_rows_and_header(tmp_path):
    assert run(tmp_path, "scan", "--range", "100..1000", "--points", "5",
               "--metric", "N", "avg_degree", "diameter", "lambda1_ratio") == 0
    config, rows = read_table(tmp_path / "scan.csv")
    assert [int(r["n"]) for r in rows] == scan_grid(100, 1000, 5, None)
    assert config["command"] == "scan" and config["n_range"] == [100, 1000]
    assert all(r["error"] == "" for r in rows)
    assert all(0.5 < float(r["lambda1_ratio"]) < 1.5 for r in rows)


def test_scan_row_level_errors(tmp_path):
    # node 30 stays isolated until 49 joins, so lambda_2 errors below 49 and the sweep continues
    assert run(tmp_path, "scan", "--range", "46..50", "--stride", "1", "--metric", "diameter", "lambda2") == 0
    _, rows = read_table(tmp_path / "scan.csv")
    by_n = {int(r["n"]): r for r in rows}
    assert sorted(by_n) == [46, 47, 48, 49, 50]
    assert "DisconnectedError" in by_n[48]["error"] and by_n[48]["lambda2"] == ""
    assert by_n[48]["diameter"] == "disconnected(2)"
    assert by_n[49]["error"] == "" and float(by_n[49]["lambda2"]) > 0


def test_scan_empty_range(tmp_path):
    assert run(tmp_path, "scan", "--range", "50..10") == 2
    with pytest.raises(UsageError):
        scan_grid(10, 5, None, None)


def test_scan_grid():
    grid = scan_grid(100, 10_000, 3, None)
    assert grid == [100, 1000, 10_000]
    assert scan_grid(10, 20, None, 5) == [10, 15, 20]


def test_scan_deterministic(tmp_path):
    for sub in ("a", "b"):
        assert main(["scan", "--range", "100..400", "--points", "3", "--metric", "lambda2",
                     "--out", str(tmp_path), "--no-timestamp", "--format", "json"]) == 0
        (tmp_path / "scan.json").rename(tmp_path / f"{sub}.json")
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_verify_exit_codes(tmp_path, capsys):
    assert run(tmp_path, "verify", "L8", "--t", "4..20") == 0
    out = capsys.readouterr().out
    assert "[PASS] L8" in out
    doc = json.loads((tmp_path / "verify.json").read_text())
    assert doc["reports"][0]["details"]["t6_tight"] is True
    assert run(tmp_path, "verify", "T6", "--range", "49..288") == 0
    assert run(tmp_path, "verify", "T1", "--range", "20..60") == 1
    assert run(tmp_path, "verify", "T9") == 2
    assert run(tmp_path, "verify", "T1", "--range", "49..200000") == 3


def test_compare_smoke_and_determinism(tmp_path, capsys):
    assert run(tmp_path, "compare", "--n", "10") == 0
    first = (tmp_path / "compare_n10.csv").read_bytes()
    assert run(tmp_path, "compare", "--n", "10") == 0
    assert (tmp_path / "compare_n10.csv").read_bytes() == first
    _, rows = read_table(tmp_path / "compare_n10.csv")
    assert [r["family"] for r in rows] == ["coprime", "ER", "BA"]
    assert rows[0]["note"] == "disconnected(2)"


def test_compare_ordering(tmp_path):
    assert run(tmp_path, "compare", "--n", "600", "--seed", "7") == 0
    _, rows = read_table(tmp_path / "compare_n600.csv")
    ratio = {r["family"]: float(r["ratio"]) for r in rows}
    assert ratio["coprime"] > ratio["ER"] and ratio["coprime"] > ratio["BA"]
    assert int(rows[1]["E_actual"]) == int(rows[0]["E_target"])


def test_env_default_out_dir(tmp_path, monkeypatch):
    monkeypatch.setenv(OUT_DIR_ENV, str(tmp_path))
    assert main(["build", "--n", "12"]) == 0
    assert (tmp_path / "edges_n12.txt").exists()
    assert RunConfig("x").out == str(tmp_path)


def test_write_table_roundtrip(tmp_path):
    cfg = RunConfig("x", n=5, timestamp=False).to_dict()
    path = write_table(tmp_path / "t", ["a", "b"], [{"a": 1, "b": float("nan")}, {"a": 2, "b": 0.5}], cfg)
    config, rows = read_table(path)
    assert config == json.loads(json.dumps(cfg))
    assert rows == [{"a": "1", "b": ""}, {"a": "2", "b": "0.5"}]
    assert "timestamp" not in config and config["rng"]
