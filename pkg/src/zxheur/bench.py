"""Benchmark harness: the optimisation pipeline over a corpus and a grid.

A grid is a list of :class:`GridPoint` (strategy, lower bound, seed).
Deterministic strategies ignore the seed and are run once per bound.
Every run yields either a metrics row or a failure record; rows are only
emitted for outputs that extracted and were not shown to differ from the
input.  Apart from ``runtime_ms`` the report depends only on the corpus
and the grid.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .circuit import Circuit, parse_qasm
from .heuristics import Strategy, StrategyConfig
from .pipeline import STATS_KEYS, PipelineError, run_pipeline

GRID_STRATEGIES = ("greedy", "random", "greedy-nu", "random-nu")
GRID_BOUNDS = (1, -5, -20)
GRID_SEEDS = (0, 1, 2, 3, 4)
BASELINE = "clifford"

EXTRA_KEYS = ("nu_applied", "gflow_rejected", "wires_before", "wires_after", "truncated")
CSV_KEYS = STATS_KEYS + EXTRA_KEYS + ("status", "error")


@dataclass(frozen=True)
class GridPoint:
    strategy: str
    min_gain: int = 1
    seed: Optional[int] = None

    def config(self, max_steps: Optional[int] = None) -> StrategyConfig:
        return StrategyConfig(self.strategy, min_gain=self.min_gain, seed=self.seed,
                              max_steps=max_steps)

    @property
    def label(self) -> str:
        s = f"{self.strategy}({self.min_gain})"
        return s if self.seed is None else f"{s}#{self.seed}"


def strategy_grid(strategies: Sequence[str] = GRID_STRATEGIES,
                  bounds: Sequence[int] = GRID_BOUNDS,
                  seeds: Sequence[int] = GRID_SEEDS) -> List[GridPoint]:
    """All combinations, with a single seedless point per bound for the
    deterministic strategies and a single point for clifford/full."""
    out: List[GridPoint] = []
    for name in strategies:
        s = Strategy(name)
        if not s.heuristic:
            out.append(GridPoint(s.value))
            continue
        for b in bounds:
            if s.randomized:
                out.extend(GridPoint(s.value, b, seed) for seed in seeds)
            else:
                out.append(GridPoint(s.value, b))
    return out


def _int_list(text: str) -> List[int]:
    vals: List[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            lo, hi = part.split("..")
            vals.extend(range(int(lo), int(hi) + 1))
        else:
            vals.append(int(part))
    return vals


def parse_grid(text: str) -> List[GridPoint]:
    """Parse a grid description.

    ``default`` is the full grid (4 strategies, bounds 1/-5/-20, seeds
    0..4); ``quick`` uses bound 1 and seed 0 only.  Otherwise the text is a
    ``;``-separated list of ``strategies=...``, ``bounds=...`` and
    ``seeds=...`` items, e.g. ``strategies=greedy,random;bounds=1,-5;seeds=0..2``.
    """
    text = text.strip()
    if text in ("", "default"):
        return strategy_grid()
    if text == "quick":
        return strategy_grid(bounds=(1,), seeds=(0,))
    strategies: Sequence[str] = GRID_STRATEGIES
    bounds: Sequence[int] = GRID_BOUNDS
    seeds: Sequence[int] = GRID_SEEDS
    for item in text.split(";"):
        if not item.strip():
            continue
        key, _, value = item.partition("=")
        key = key.strip()
        if key == "strategies":
            strategies = [v.strip() for v in value.split(",") if v.strip()]
        elif key == "bounds":
            bounds = _int_list(value)
        elif key == "seeds":
            seeds = _int_list(value)
        else:
            raise ValueError(f"unknown grid key {key!r}")
    if any(s < 0 for s in seeds):
        raise ValueError("seeds must be non-negative")
    return strategy_grid(strategies, bounds, seeds)


def load_corpus(path: str | Path) -> List[Tuple[str, Circuit]]:
    """``(name, circuit)`` for a QASM file or every ``*.qasm`` in a directory
    (sorted by file name)."""
    path = Path(path)
    files = sorted(path.glob("*.qasm")) if path.is_dir() else [path]
    if not files:
        raise FileNotFoundError(f"no QASM files in {path}")
    return [(f.stem, parse_qasm(f.read_text(), name=f.stem)) for f in files]


@dataclass
class BenchResult:
    rows: List[Dict[str, object]] = field(default_factory=list)
    failures: List[Dict[str, object]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def circuits(self) -> List[str]:
        seen: Dict[str, None] = {}
        for r in self.rows + self.failures:
            seen.setdefault(str(r["circuit"]), None)
        return list(seen)

    def best(self) -> Dict[str, Dict[str, object]]:
        """Per circuit, the heuristic row with the fewest two-qubit gates
        (ties: fewer gates overall, then grid order)."""
        out: Dict[str, Dict[str, object]] = {}
        for r in self.rows:
            if not Strategy(r["strategy"]).heuristic:
                continue
            key = (r["gates_2q_after"], r["gates_total_after"])
            cur = out.get(r["circuit"])
            if cur is None or key < (cur["gates_2q_after"], cur["gates_total_after"]):
                out[r["circuit"]] = r
        return out

    def baseline(self) -> Dict[str, Dict[str, object]]:
        return {r["circuit"]: r for r in self.rows if r["strategy"] == BASELINE}

    def average_reduction(self) -> Dict[str, Dict[str, float]]:
        """Mean relative reduction of total and two-qubit gates, for the best
        heuristic rows and for the baseline rows (positive = fewer gates)."""
        def avg(rows: Iterable[Dict[str, object]]) -> Dict[str, float]:
            rows = list(rows)
            if not rows:
                return {"total": 0.0, "2q": 0.0, "circuits": 0}
            tot = [1 - r["gates_total_after"] / r["gates_total_before"] for r in rows
                   if r["gates_total_before"]]
            two = [1 - r["gates_2q_after"] / r["gates_2q_before"] for r in rows if r["gates_2q_before"]]
            return {"total": sum(tot) / len(tot) if tot else 0.0,
                    "2q": sum(two) / len(two) if two else 0.0,
                    "circuits": len(rows)}
        return {"heuristic": avg(self.best().values()), "baseline": avg(self.baseline().values())}

    def to_json(self) -> str:
        best = self.best()
        return json.dumps({
            "rows": self.rows,
            "failures": self.failures,
            "best": best,
            "baseline": self.baseline(),
            "average_reduction": self.average_reduction(),
        }, indent=2, sort_keys=False)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(CSV_KEYS), extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        for r in self.rows:
            w.writerow({**r, "status": "ok", "error": ""})
        for f in self.failures:
            w.writerow({**f, "status": "failed"})
        return buf.getvalue()

    def write(self, path: str | Path, fmt: str) -> Path:
        path = Path(path)
        if fmt == "csv":
            path.write_text(self.to_csv())
        elif fmt == "json":
            path.write_text(self.to_json())
        else:
            raise ValueError("report format must be csv or json")
        return path


def _run_one(task: Tuple[str, Circuit, GridPoint, str, Optional[int]]) -> Tuple[str, Dict[str, object]]:
    name, circuit, point, verify, max_steps = task
    try:
        _, rep = run_pipeline(circuit, point.config(max_steps), verify=verify, name=name)
    except PipelineError as e:
        return "failed", {**e.report.stats(), "error": str(e)}
    except Exception as e:  # a crash in one row must not stop the run
        return "failed", {"circuit": name, "strategy": point.strategy, "min_gain": point.min_gain,
                          "seed": point.seed, "error": f"{type(e).__name__}: {e}"}
    row = rep.stats()
    row.update({k: getattr(rep, k) for k in EXTRA_KEYS})
    return "ok", row


def run_benchmark(corpus: str | Path | Sequence[Tuple[str, Circuit]],
                  grid: Optional[Sequence[GridPoint] | str] = None, verify: str = "zx",
                  baseline: bool = True, jobs: int = 1,
                  max_steps: Optional[int] = None) -> BenchResult:
    """Run every circuit of ``corpus`` through every grid point.

    ``corpus`` is a directory or file of QASM, or a list of ``(name,
    circuit)``.  With ``baseline`` the clifford pipeline is run once per
    circuit as well.  ``jobs > 1`` runs rows in worker processes; the
    report is assembled in corpus-then-grid order either way.
    """
    circuits = load_corpus(corpus) if isinstance(corpus, (str, Path)) else list(corpus)
    points = parse_grid(grid or "default") if isinstance(grid, str) or grid is None else list(grid)
    if baseline and not any(p.strategy == BASELINE for p in points):
        points = points + [GridPoint(BASELINE)]
    tasks = [(name, c, p, verify, max_steps) for name, c in circuits for p in points]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_one, tasks))
    else:
        results = [_run_one(t) for t in tasks]
    res = BenchResult()
    for status, record in results:
        (res.rows if status == "ok" else res.failures).append(record)
    return res
