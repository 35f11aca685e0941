"""Random circuits and diagrams for fuzzing and property tests."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional, Sequence

from .circuit import ARITY, Circuit, Gate
from .graph import Diagram, EdgeKind, VertexKind
from .phase import Phase

CLIFFORD_T_GATES = ("H", "X", "Z", "S", "Sdg", "T", "Tdg", "CNOT", "CZ")
DEFAULT_PHASES = (Fraction(0), Fraction(1, 2), Fraction(-1, 2), Fraction(1),
                  Fraction(1, 4), Fraction(-1, 4))


def random_circuit(qubits: int, gates: int, rng: Optional[random.Random] = None,
                   vocabulary: Sequence[str] = CLIFFORD_T_GATES, name: str = "") -> Circuit:
    """A uniformly random gate sequence over ``vocabulary``."""
    rng = rng or random.Random()
    c = Circuit(qubits, name=name)
    usable = [g for g in vocabulary if ARITY[g] <= qubits]
    for _ in range(gates):
        g = rng.choice(usable)
        if ARITY[g] > 1:
            c.append(Gate(g, tuple(rng.sample(range(qubits), ARITY[g]))))
        elif g in ("RZ", "RX"):
            c.append(Gate(g, (rng.randrange(qubits),), Phase(Fraction(rng.randrange(8), 4))))
        else:
            c.append(Gate(g, (rng.randrange(qubits),)))
    return c


def random_graph_like(spiders: int, qubits: int = 2, edge_prob: float = 0.3,
                      rng: Optional[random.Random] = None,
                      phases: Sequence[Fraction] = DEFAULT_PHASES) -> Diagram:
    """A random graph-like diagram.

    ``qubits`` inputs and outputs are attached by plain wires to distinct
    spiders; spider-spider wires are Hadamard with probability ``edge_prob``.
    """
    rng = rng or random.Random()
    if spiders < qubits:
        raise ValueError("need at least one spider per qubit")
    d = Diagram()
    vs = [d.add_vertex(VertexKind.Z, rng.choice(phases), qubit=i % max(qubits, 1), row=i + 1)
          for i in range(spiders)]
    for i in range(spiders):
        for j in range(i + 1, spiders):
            if rng.random() < edge_prob:
                d.add_edge(vs[i], vs[j], EdgeKind.HADAMARD)
    in_spiders = rng.sample(vs, qubits)
    out_spiders = rng.sample(vs, qubits)
    ins, outs = [], []
    for q in range(qubits):
        b = d.add_vertex(VertexKind.BOUNDARY, qubit=q, row=0)
        d.add_edge(b, in_spiders[q])
        ins.append(b)
        o = d.add_vertex(VertexKind.BOUNDARY, qubit=q, row=spiders + 1)
        d.add_edge(o, out_spiders[q])
        outs.append(o)
    d.set_inputs(ins)
    d.set_outputs(outs)
    return d
