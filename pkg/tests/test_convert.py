import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import H, PLAIN, Z, open_line
from zxheur.circuit import Circuit, Gate
from zxheur.convert import (circuit_to_diagram, graph_like_violations, is_graph_like, to_graph_like,
                            wire_count)
from zxheur.generate import random_circuit, random_graph_like
from zxheur.graph import Diagram, DiagramError, EdgeKind, VertexKind
from zxheur.verify import circuit_matrix, diagram_tensor, proportional


@st.composite
def small_circuits(draw, max_qubits=4, max_gates=25):
    q = draw(st.integers(1, max_qubits))
    seed = draw(st.integers(0, 2 ** 32 - 1))
    vocab = ("H", "X", "Z", "S", "Sdg", "T", "Tdg", "RZ", "RX", "CNOT", "CZ")
    return random_circuit(q, draw(st.integers(0, max_gates)), random.Random(seed), vocab)


def test_cnot_translation():
    d = circuit_to_diagram(Circuit(2, [Gate("CNOT", (0, 1))]))
    spiders = d.spiders()
    assert len(spiders) == 2
    z = [v for v in spiders if d.kind(v) is VertexKind.Z]
    x = [v for v in spiders if d.kind(v) is VertexKind.X]
    assert len(z) == len(x) == 1
    assert d.qubit(z[0]) == 0 and d.qubit(x[0]) == 1
    assert d.edge_kind(z[0], x[0]) is EdgeKind.PLAIN


def test_empty_circuit_is_a_wire():
    d = circuit_to_diagram(Circuit(1))
    assert d.num_spiders() == 0
    assert d.connected(d.inputs[0], d.outputs[0])
    assert np.allclose(diagram_tensor(d), np.eye(2))


def test_three_qubit_example_has_six_spiders():
    c = Circuit(3)
    c.add("CNOT", 0, 1).add("CNOT", 1, 2).add("CNOT", 0, 2)
    d = circuit_to_diagram(c)
    assert d.num_spiders() == 6
    assert len(d.inputs) == len(d.outputs) == 3


@given(small_circuits())
def test_translation_preserves_semantics(c):
    assert proportional(diagram_tensor(circuit_to_diagram(c)), circuit_matrix(c))


@given(small_circuits())
def test_graph_like_form(c):
    d = to_graph_like(circuit_to_diagram(c))
    assert graph_like_violations(d) == []
    assert proportional(diagram_tensor(d), circuit_matrix(c))


def test_x_gate_becomes_z_spider():
    d = to_graph_like(circuit_to_diagram(Circuit(1, [Gate("X", (0,))])))
    assert is_graph_like(d)
    assert all(d.kind(v) is VertexKind.Z for v in d.spiders())
    assert any(d.phase(v) == 1 for v in d.spiders())
    assert proportional(diagram_tensor(d), np.array([[0, 1], [1, 0]]))


def test_fusion_sums_phases():
    c = Circuit(1)
    c.add("T", 0).add("S", 0)
    d = to_graph_like(circuit_to_diagram(c))
    phases = [d.phase(v) for v in d.spiders() if not d.phase(v).is_zero()]
    assert [p.fraction for p in phases] == [pytest.approx(0.75)]


def test_graph_like_is_idempotent():
    rng = random.Random(3)
    for _ in range(20):
        c = random_circuit(3, 20, rng)
        d = to_graph_like(circuit_to_diagram(c))
        again = to_graph_like(d)
        assert wire_count(again) == wire_count(d)
        assert again.num_spiders() == d.num_spiders()


def test_wire_count_examples():
    assert wire_count(open_line([0])) == 0
    assert wire_count(open_line([0, "1/2", 1])) == 2
    rng = random.Random(7)
    for _ in range(30):
        d = random_graph_like(rng.randint(3, 12), 2, 0.4, rng)
        hadamard = sum(1 for u, v, k in d.edges() if k is EdgeKind.HADAMARD
                       and d.is_spider(u) and d.is_spider(v))
        assert wire_count(d) == hadamard


def test_wire_count_rejects_non_graph_like():
    d = circuit_to_diagram(Circuit(2, [Gate("CNOT", (0, 1))]))
    with pytest.raises(DiagramError):
        wire_count(d)


def test_violations_are_reported():
    d = Diagram()
    a, b = d.add_vertex(Z), d.add_vertex(Z)
    d.add_edge(a, b, PLAIN)
    assert graph_like_violations(d)
