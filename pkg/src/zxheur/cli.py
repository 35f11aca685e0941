"""Command-line front end.

``zxheur --input in.qasm --output out.qasm [options]`` optimises one
circuit; ``zxheur bench --corpus DIR`` runs the benchmark grid;
``zxheur corpus DIR`` writes the rebuilt benchmark circuits as QASM.
The exit code is 0 when every output was produced and none was shown to
differ from its input, 1 otherwise.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from .bench import BASELINE, parse_grid, run_benchmark
from .circuit import CircuitError, emit_qasm, parse_qasm
from .corpus import write_corpus
from .heuristics import Strategy, StrategyConfig
from .pipeline import VERIFY_MODES, PipelineError, run_pipeline

STRATEGIES = [s.value for s in Strategy]


def _uint(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("expected a non-negative integer")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return v


def optimize_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zxheur", description="Optimise a Clifford+T circuit with ZX heuristics.",
                                epilog="Subcommands: 'zxheur bench --help', 'zxheur corpus --help'.")
    p.add_argument("--input", "-i", required=True, help="input OpenQASM 2.0 file ('-' for stdin)")
    p.add_argument("--output", "-o", help="output QASM file (default: stdout)")
    p.add_argument("--strategy", choices=STRATEGIES, default="greedy")
    p.add_argument("--min-gain", type=int, default=1, help="lower bound on the heuristic score")
    p.add_argument("--seed", type=_uint, help="seed for the random strategies (default 0)")
    p.add_argument("--max-steps", type=_positive, help="cap on rule applications")
    p.add_argument("--allow-boundary", action="store_true", help="also rewrite spiders next to a boundary")
    p.add_argument("--stats", help="write the run statistics as JSON to this path")
    p.add_argument("--verify", choices=VERIFY_MODES, default="both")
    return p


def bench_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zxheur bench", description="Run the strategy grid over a QASM corpus.")
    p.add_argument("--corpus", required=True, help="directory of .qasm files, or one file")
    p.add_argument("--grid", default="default",
                   help="'default', 'quick' or e.g. 'strategies=greedy,random;bounds=1,-5;seeds=0..4'")
    p.add_argument("--report", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="report path (default: stdout)")
    p.add_argument("--verify", choices=VERIFY_MODES, default="zx")
    p.add_argument("--jobs", type=_positive, default=1, help="worker processes")
    p.add_argument("--max-steps", type=_positive)
    p.add_argument("--no-baseline", action="store_true", help=f"skip the {BASELINE} reference run")
    return p


def corpus_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zxheur corpus", description="Write the benchmark circuits as QASM.")
    p.add_argument("directory")
    p.add_argument("--names", help="comma-separated subset (display names or file stems)")
    return p


def _read_input(path: str) -> tuple[str, str]:
    if path == "-":
        return sys.stdin.read(), "stdin"
    return Path(path).read_text(), Path(path).stem


def run_optimize(args: argparse.Namespace) -> int:
    try:
        text, name = _read_input(args.input)
        circuit = parse_qasm(text, name=name)
    except (OSError, CircuitError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    seed = args.seed
    if seed is None and Strategy(args.strategy).randomized:
        seed = 0
    cfg = StrategyConfig(args.strategy, min_gain=args.min_gain, allow_boundary=args.allow_boundary,
                         seed=seed, max_steps=args.max_steps)
    try:
        out, rep = run_pipeline(circuit, cfg, verify=args.verify, name=name)
    except PipelineError as e:
        print(f"error: {e}", file=sys.stderr)
        if args.stats:
            Path(args.stats).write_text(json.dumps(e.report.stats(), indent=2))
        return 1
    qasm = emit_qasm(out)
    if args.output:
        Path(args.output).write_text(qasm)
    else:
        sys.stdout.write(qasm)
    if args.stats:
        Path(args.stats).write_text(json.dumps(rep.stats(), indent=2))
    print(f"{rep.circuit}: total {rep.gates_total_before} -> {rep.gates_total_after}, "
          f"2q {rep.gates_2q_before} -> {rep.gates_2q_after}, "
          f"T {rep.t_count_before} -> {rep.t_count_after}, verdict {rep.verdict}", file=sys.stderr)
    return 0


def run_bench(args: argparse.Namespace) -> int:
    try:
        grid = parse_grid(args.grid)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    res = run_benchmark(args.corpus, grid, verify=args.verify, baseline=not args.no_baseline,
                        jobs=args.jobs, max_steps=args.max_steps)
    text = res.to_csv() if args.report == "csv" else res.to_json()
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    avg = res.average_reduction()
    print(f"{len(res.rows)} rows, {len(res.failures)} failures; "
          f"best heuristic avg reduction: total {avg['heuristic']['total']:.1%}, "
          f"2q {avg['heuristic']['2q']:.1%}", file=sys.stderr)
    return 0 if res.ok else 1


def run_corpus(args: argparse.Namespace) -> int:
    names = [n.strip() for n in args.names.split(",")] if args.names else None
    try:
        paths = write_corpus(args.directory, names)
    except KeyError as e:
        print(f"error: unknown benchmark {e}", file=sys.stderr)
        return 2
    for p in paths:
        print(p)
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv and argv[0] == "bench":
        return run_bench(bench_parser().parse_args(argv[1:]))
    if argv and argv[0] == "corpus":
        return run_corpus(corpus_parser().parse_args(argv[1:]))
    return run_optimize(optimize_parser().parse_args(argv))


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
