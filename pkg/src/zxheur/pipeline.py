"""The optimisation pipeline: peephole, phase teleportation, simplification,
extraction, peephole, followed by an equivalence check."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from typing import Dict, Optional

from .circuit import Circuit, decompose_toffoli, metrics, peephole
from .convert import circuit_to_diagram, to_graph_like, wire_count
from .extract import ExtractionError, extract_circuit
from .heuristics import StrategyConfig, non_clifford_count, run_strategy
from .teleport import phase_teleportation
from .verify import DISPROVEN, UNKNOWN, PROVEN, Verdict, check_identity_reduction

VERIFY_MODES = ("zx", "tensor", "both", "off")

STATS_KEYS = ("circuit", "qubits", "gates_total_before", "gates_total_after", "gates_2q_before",
              "gates_2q_after", "t_count_before", "t_count_after", "strategy", "min_gain", "seed",
              "steps", "runtime_ms", "verdict")


class PipelineError(RuntimeError):
    """Extraction failed or the output was shown to differ from the input.

    ``report`` carries the metrics gathered so far; no circuit is returned.
    """

    def __init__(self, message: str, report: "Report") -> None:
        super().__init__(message)
        self.report = report


@dataclass
class Report:
    circuit: str
    qubits: int
    gates_total_before: int
    gates_2q_before: int
    t_count_before: int
    strategy: str
    min_gain: int
    seed: Optional[int]
    gates_total_after: int = 0
    gates_2q_after: int = 0
    t_count_after: int = 0
    steps: int = 0
    runtime_ms: float = 0.0
    verdict: str = UNKNOWN
    verdict_reason: str = ""
    wires_before: int = 0
    wires_after: int = 0
    non_clifford_before: int = 0
    non_clifford_after: int = 0
    nu_applied: int = 0
    gflow_rejected: int = 0
    truncated: bool = False
    t_count_teleported: int = 0
    extra: Dict[str, object] = field(default_factory=dict)

    def stats(self) -> Dict[str, object]:
        """The stats record with exactly the documented keys."""
        d = asdict(self)
        return {k: d[k] for k in STATS_KEYS}

    @property
    def verified(self) -> bool:
        return self.verdict == PROVEN


def run_pipeline(c: Circuit, cfg: Optional[StrategyConfig] = None, verify: str = "both",
                 name: Optional[str] = None) -> "tuple[Circuit, Report]":
    """Optimise ``c`` with the strategy of ``cfg``.

    Steps: peephole optimisation, phase teleportation, conversion to a
    graph-like diagram, simplification, extraction, peephole optimisation.
    The "before" metrics count Toffolis in their seven-T decomposition.
    ``verify`` selects the equivalence check (``zx``, ``tensor``, ``both``
    or ``off``).  Raises :class:`PipelineError` when extraction fails or the
    check finds a difference.
    """
    if verify not in VERIFY_MODES:
        raise ValueError(f"verify must be one of {VERIFY_MODES}")
    cfg = cfg or StrategyConfig()
    start = time.perf_counter()
    original = decompose_toffoli(c)
    total0, two0, t0 = metrics(original)
    rep = Report(circuit=name or c.name, qubits=c.qubit_count, gates_total_before=total0,
                 gates_2q_before=two0, t_count_before=t0, strategy=cfg.strategy.value,
                 min_gain=cfg.min_gain, seed=cfg.seed)

    stage = peephole(original)
    stage = peephole(phase_teleportation(stage))
    rep.t_count_teleported = metrics(stage)[2]
    d = to_graph_like(circuit_to_diagram(stage))
    rep.wires_before = wire_count(d)
    rep.non_clifford_before = non_clifford_count(d)
    res = run_strategy(d, cfg)
    rep.steps = res.steps
    rep.nu_applied = res.nu_applied
    rep.gflow_rejected = res.gflow_rejected
    rep.truncated = res.truncated
    rep.wires_after = wire_count(d)
    rep.non_clifford_after = non_clifford_count(d)
    try:
        out = extract_circuit(d)
    except ExtractionError as e:
        rep.runtime_ms = (time.perf_counter() - start) * 1000
        rep.verdict = DISPROVEN
        rep.verdict_reason = f"extraction failed: {e}"
        raise PipelineError(str(e), rep) from e
    out = peephole(out)
    out.name = c.name
    rep.gates_total_after, rep.gates_2q_after, rep.t_count_after = metrics(out)

    verdict: Verdict = check_identity_reduction(original, out, verify)
    rep.verdict, rep.verdict_reason = verdict.status, verdict.reason
    rep.runtime_ms = (time.perf_counter() - start) * 1000
    if verdict.status == DISPROVEN:
        raise PipelineError(f"optimised circuit differs from the input ({verdict.reason})", rep)
    return out, rep
