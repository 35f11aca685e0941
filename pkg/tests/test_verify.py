import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import open_line
from zxheur.circuit import Circuit, Gate, peephole
from zxheur.convert import circuit_to_diagram, to_graph_like
from zxheur.generate import random_circuit
from zxheur.verify import (check_identity_reduction, circuit_matrix, diagram_tensor, proportional,
                           zx_identity_check)

CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])


def test_hadamard_matrix():
    m = circuit_matrix(Circuit(1, [Gate("H", (0,))]))
    assert np.allclose(m, np.array([[1, 1], [1, -1]]) / np.sqrt(2))


def test_empty_circuit_matrix():
    assert np.allclose(circuit_matrix(Circuit(1)), np.eye(2))


def test_cnot_matrix():
    assert np.allclose(circuit_matrix(Circuit(2, [Gate("CNOT", (0, 1))])), CNOT)


def test_matrix_width_cap():
    with pytest.raises(ValueError):
        circuit_matrix(Circuit(12))


def test_z_spider_tensor():
    d = open_line([Fraction(1, 3)])
    t = diagram_tensor(d)
    assert proportional(t, np.diag([1, np.exp(1j * np.pi / 3)]))


def test_bare_wire_tensor():
    d = circuit_to_diagram(Circuit(1))
    assert np.allclose(diagram_tensor(d), np.eye(2))


def test_cnot_diagram_tensor():
    d = circuit_to_diagram(Circuit(2, [Gate("CNOT", (0, 1))]))
    assert proportional(diagram_tensor(d), CNOT)


def test_proportional():
    m = np.array([[1, 2j], [0.5, -1]])
    assert proportional(2 * m, m)
    assert proportional(m + 1e-12, m)
    assert not proportional(m + 1e-3, m)
    hxh = circuit_matrix(Circuit(1, [Gate("H", (0,)), Gate("X", (0,)), Gate("H", (0,))]))
    assert proportional(hxh, circuit_matrix(Circuit(1, [Gate("Z", (0,))])))
    with pytest.raises(ValueError):
        proportional(m, np.zeros((2, 2)))


@given(st.integers(0, 2 ** 32 - 1))
def test_diagram_tensor_matches_circuit_matrix(seed):
    rng = random.Random(seed)
    c = random_circuit(rng.randint(1, 6), rng.randint(0, 40), rng,
                       ("H", "X", "Z", "S", "Sdg", "T", "Tdg", "RZ", "RX", "CNOT", "CZ", "CCX"))
    assert proportional(diagram_tensor(circuit_to_diagram(c)), circuit_matrix(c))


def test_identity_check_same_circuit():
    c = random_circuit(4, 30, random.Random(2))
    v = check_identity_reduction(c, c, "zx")
    assert v.status == "Proven"


@given(st.integers(0, 2 ** 32 - 1))
def test_identity_check_after_peephole(seed):
    rng = random.Random(seed)
    c = random_circuit(rng.randint(1, 5), rng.randint(0, 30), rng)
    v = check_identity_reduction(c, peephole(c), "both")
    assert v.status == "Proven"


def test_extra_t_is_disproven():
    c = random_circuit(3, 20, random.Random(9))
    bad = c.copy()
    bad.add("T", 1)
    assert not zx_identity_check(c, bad)
    assert check_identity_reduction(c, bad, "both").status == "Disproven"
    assert check_identity_reduction(c, bad, "tensor").status == "Disproven"


def test_verification_modes():
    c = random_circuit(2, 10, random.Random(1))
    assert check_identity_reduction(c, c, "off").status == "Unknown"
    assert check_identity_reduction(c, Circuit(3), "zx").status == "Disproven"
    wide = Circuit(12)
    wide.add("T", 0)
    assert check_identity_reduction(wide, Circuit(12), "tensor").status == "Unknown"
