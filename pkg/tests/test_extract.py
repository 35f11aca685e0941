import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import same_tensor, same_unitary
from test_gflow import no_gflow_diagram
from zxheur.circuit import Circuit, metrics
from zxheur.convert import circuit_to_diagram, to_graph_like
from zxheur.extract import ExtractionError, extract_circuit, gauss_ops
from zxheur.generate import random_circuit
from zxheur.heuristics import StrategyConfig, clifford_simp, full_reduce, run_strategy

F = Fraction


def two_qubit_example(a1, a2, j, k, b1, g1, g2):
    """Four CZ couplings with interleaved phases and Hadamards; after a
    pivot on the two Pauli spiders it extracts to one CZ and one CNOT."""
    c = Circuit(2)
    c.add("RZ", 0, phase=a1).add("H", 0).add("CZ", 0, 1).add("RZ", 1, phase=a2).add("H", 1).add("CZ", 0, 1)
    c.add("RZ", 0, phase=j).add("H", 0).add("CZ", 0, 1).add("RZ", 1, phase=b1).add("H", 1).add("CZ", 0, 1)
    c.add("RZ", 0, phase=k).add("H", 0).add("RZ", 0, phase=g1).add("RZ", 1, phase=g2)
    return c


def test_identity_diagram_extracts_to_empty_circuit():
    d = circuit_to_diagram(Circuit(3))
    assert extract_circuit(d).gates == []


@pytest.mark.parametrize("phases", [
    (F(1, 4), F(3, 4), 0, 1, F(1, 4), F(1, 2), F(7, 4)),
    (F(1, 8), F(1, 4), 1, 0, F(3, 8), F(1, 4), F(1, 2)),
])
def test_pivot_example_extraction(phases):
    c = two_qubit_example(*phases)
    assert metrics(c)[1] == 4
    plain = to_graph_like(circuit_to_diagram(c))
    assert metrics(extract_circuit(plain))[1] >= 2
    d = plain.copy()
    run_strategy(d, StrategyConfig("greedy"))
    out = extract_circuit(d)
    names = sorted(g.name for g in out.gates if len(g.qubits) == 2)
    assert names == ["CNOT", "CZ"]
    assert same_unitary(c, out)


def test_missing_gflow_raises():
    d = no_gflow_diagram()
    with pytest.raises(ExtractionError) as err:
        extract_circuit(d)
    assert err.value.diagram is d


def test_extraction_leaves_input_untouched():
    c = random_circuit(3, 25, random.Random(4))
    d = to_graph_like(circuit_to_diagram(c))
    before = sorted(d.edges()), d.num_spiders()
    extract_circuit(d)
    assert (sorted(d.edges()), d.num_spiders()) == before


@given(st.lists(st.integers(0, 31), min_size=1, max_size=6))
def test_gauss_ops_reach_reduced_echelon_form(rows):
    ops = gauss_ops(rows, 5)
    work = list(rows)
    for t, c in ops:
        work[t] ^= work[c]
    pivots = [r & -r for r in work if r]
    assert len(set(pivots)) == len(pivots)
    for p in pivots:
        assert sum(1 for r in work if r & p) == 1


@given(st.integers(0, 2 ** 32 - 1), st.sampled_from(["none", "clifford", "full"]))
def test_extraction_preserves_semantics(seed, simp):
    rng = random.Random(seed)
    c = random_circuit(rng.randint(1, 6), rng.randint(0, 40), rng)
    d = to_graph_like(circuit_to_diagram(c))
    if simp == "clifford":
        clifford_simp(d)
    elif simp == "full":
        full_reduce(d)
    out = extract_circuit(d)
    assert out.qubit_count == c.qubit_count
    assert same_unitary(c, out)
