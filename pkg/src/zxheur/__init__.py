"""ZX-calculus circuit optimisation with wire-count heuristics.

Circuits are turned into graph-like ZX diagrams, simplified by local
complementation and pivoting chosen greedily or at random by their exact
effect on the number of Hadamard wires (optionally after neighbour
unfusion), extracted back into circuits and checked for equivalence.
"""

from .bench import BenchResult, GridPoint, parse_grid, run_benchmark, strategy_grid
from .circuit import (Circuit, CircuitError, Gate, QasmError, adjoint, decompose_toffoli, emit_qasm,
                      metrics, parse_qasm, peephole)
from .convert import circuit_to_diagram, is_graph_like, to_graph_like, wire_count
from .extract import ExtractionError, extract_circuit
from .gflow import GFlow, find_gflow, gflow_violations, same_extraction_qubit
from .graph import Diagram, DiagramError, EdgeKind, MeasurementPlane, VertexKind
from .heuristics import (SimplifyResult, Strategy, StrategyConfig, clifford_simp, enumerate_matches,
                         full_reduce, lch, ph, run_strategy, score_local_complementation, score_pivot,
                         simplify_greedy, simplify_random)
from .phase import Phase
from .pipeline import PipelineError, Report, run_pipeline
from .rules import RuleError, RuleKind, RuleMatch, Unfusion
from .teleport import phase_teleportation
from .verify import Verdict, check_identity_reduction, circuit_matrix, diagram_tensor, proportional

__version__ = "0.1.0"

__all__ = [
    "BenchResult", "Circuit", "CircuitError", "Diagram", "DiagramError", "EdgeKind", "ExtractionError",
    "GFlow", "Gate", "GridPoint", "MeasurementPlane", "Phase", "PipelineError", "QasmError", "Report",
    "RuleError", "RuleKind", "RuleMatch", "SimplifyResult", "Strategy", "StrategyConfig", "Unfusion",
    "Verdict", "VertexKind", "adjoint", "check_identity_reduction", "circuit_matrix", "circuit_to_diagram",
    "clifford_simp", "decompose_toffoli", "diagram_tensor", "emit_qasm", "enumerate_matches",
    "extract_circuit", "find_gflow", "full_reduce", "gflow_violations", "is_graph_like", "lch", "metrics",
    "parse_grid", "parse_qasm", "peephole", "ph", "phase_teleportation", "proportional", "run_benchmark",
    "run_pipeline", "run_strategy", "same_extraction_qubit", "score_local_complementation", "score_pivot",
    "simplify_greedy", "simplify_random", "strategy_grid", "to_graph_like", "wire_count",
]
