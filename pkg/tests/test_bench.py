import csv
import io
import json

import pytest

from zxheur.bench import CSV_KEYS, GridPoint, load_corpus, parse_grid, run_benchmark, strategy_grid
from zxheur.circuit import Circuit, emit_qasm
from zxheur.corpus import write_corpus


def tiny_corpus():
    a = Circuit(2).add("H", 0).add("T", 0).add("CNOT", 0, 1).add("T", 1).add("CNOT", 0, 1).add("H", 1)
    b = Circuit(3).add("CCX", 0, 1, 2).add("CNOT", 2, 0)
    return [("a", a), ("b", b)]


def test_default_grid_size():
    g = parse_grid("default")
    # greedy variants: one point per bound; random variants: five seeds per bound
    assert len(g) == 2 * 3 + 2 * 3 * 5
    assert GridPoint("random", -20, 4) in g


def test_quick_grid():
    assert parse_grid("quick") == [GridPoint("greedy", 1), GridPoint("random", 1, 0),
                                   GridPoint("greedy-nu", 1), GridPoint("random-nu", 1, 0)]


def test_custom_grid():
    g = parse_grid("strategies=greedy,random;bounds=1,-5;seeds=0..2")
    assert len(g) == 2 + 6
    assert parse_grid("strategies=clifford") == [GridPoint("clifford")]
    with pytest.raises(ValueError):
        parse_grid("colour=blue")
    with pytest.raises(ValueError):
        parse_grid("seeds=-1")
    with pytest.raises(ValueError):
        strategy_grid(["sideways"])


def test_deterministic_apart_from_runtime():
    runs = [run_benchmark(tiny_corpus(), "quick", verify="tensor") for _ in range(2)]
    strip = [[{k: v for k, v in r.items() if k != "runtime_ms"} for r in res.rows] for res in runs]
    assert strip[0] == strip[1]
    assert runs[0].ok


def test_rows_and_best():
    res = run_benchmark(tiny_corpus(), "quick", verify="tensor")
    assert len(res.rows) == 2 * 5  # four grid points plus the baseline, per circuit
    assert res.circuits() == ["a", "b"]
    best = res.best()
    assert set(best) == {"a", "b"}
    for name, row in best.items():
        assert row["strategy"] != "clifford"
        assert all(row["gates_2q_after"] <= r["gates_2q_after"] for r in res.rows
                   if r["circuit"] == name and r["strategy"] != "clifford")
    assert set(res.baseline()) == {"a", "b"}


def test_csv_and_json():
    res = run_benchmark(tiny_corpus()[:1], "strategies=greedy;bounds=1", verify="tensor")
    rows = list(csv.DictReader(io.StringIO(res.to_csv())))
    assert tuple(rows[0]) == CSV_KEYS
    assert len(rows) == 2 and {r["status"] for r in rows} == {"ok"}
    data = json.loads(res.to_json())
    assert set(data) == {"rows", "failures", "best", "baseline", "average_reduction"}


def test_corpus_from_directory_and_file(tmp_path):
    write_corpus(tmp_path, ["Toff-NC3"])
    (tmp_path / "extra.qasm").write_text(emit_qasm(tiny_corpus()[0][1]))
    assert [n for n, _ in load_corpus(tmp_path)] == ["extra", "tof_3"]
    res = run_benchmark(tmp_path / "extra.qasm", "strategies=greedy;bounds=1", baseline=False)
    assert [r["circuit"] for r in res.rows] == ["extra"]
    with pytest.raises(FileNotFoundError):
        load_corpus(tmp_path / "nothing")


def test_failures_are_recorded(monkeypatch):
    from zxheur import bench

    def boom(*args, **kwargs):
        raise RuntimeError("kaput")
    monkeypatch.setattr(bench, "run_pipeline", boom)
    res = run_benchmark(tiny_corpus()[:1], "strategies=greedy;bounds=1", baseline=False)
    assert not res.ok and res.failures[0]["error"] == "RuntimeError: kaput"
    assert "failed" in res.to_csv()
