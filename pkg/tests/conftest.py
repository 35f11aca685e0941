import random

import numpy as np
import pytest
from hypothesis import settings

from zxheur.circuit import Circuit
from zxheur.generate import random_circuit, random_graph_like
from zxheur.graph import Diagram, EdgeKind, VertexKind
from zxheur.verify import circuit_matrix, diagram_tensor, proportional

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

H = EdgeKind.HADAMARD
PLAIN = EdgeKind.PLAIN
Z = VertexKind.Z
B = VertexKind.BOUNDARY


def same_tensor(d1: Diagram, d2: Diagram) -> bool:
    """Equal up to a nonzero scalar; two zero tensors count as equal since
    random diagrams may evaluate to zero and rewrites drop scalars."""
    a, b = diagram_tensor(d1), diagram_tensor(d2)
    if np.max(np.abs(a)) < 1e-9 and np.max(np.abs(b)) < 1e-9:
        return True
    return proportional(a, b)


def same_unitary(c1: Circuit, c2: Circuit) -> bool:
    return proportional(circuit_matrix(c1), circuit_matrix(c2))


def open_line(phases, qubit=0):
    """A single qubit line input - Z(p0) - H - Z(p1) - H - ... - output."""
    d = Diagram()
    i = d.add_vertex(B, qubit=qubit, row=0)
    prev, kind = i, PLAIN
    for k, p in enumerate(phases):
        v = d.add_vertex(Z, p, qubit=qubit, row=k + 1)
        d.add_edge(prev, v, kind)
        prev, kind = v, H
    o = d.add_vertex(B, qubit=qubit, row=len(phases) + 1)
    d.add_edge(prev, o, PLAIN)
    d.set_inputs([i])
    d.set_outputs([o])
    return d


def interior_star(centre_phase, leaves, leaf_phase=0):
    """Interior spider joined by Hadamard wires to ``leaves`` spiders, each
    of which sits on its own qubit line.  Returns (diagram, centre, leaves)."""
    d = Diagram()
    ins, outs, ls = [], [], []
    c = d.add_vertex(Z, centre_phase, qubit=leaves, row=2)
    for q in range(leaves):
        i = d.add_vertex(B, qubit=q, row=0)
        v = d.add_vertex(Z, leaf_phase, qubit=q, row=1)
        o = d.add_vertex(B, qubit=q, row=3)
        d.add_edge(i, v)
        d.add_edge(v, o)
        d.add_edge(v, c, H)
        ins.append(i)
        outs.append(o)
        ls.append(v)
    d.set_inputs(ins)
    d.set_outputs(outs)
    return d, c, ls


@pytest.fixture
def rng():
    return random.Random(1234)


__all__ = ["H", "PLAIN", "Z", "B", "same_tensor", "same_unitary", "open_line", "interior_star",
           "random_circuit", "random_graph_like"]
