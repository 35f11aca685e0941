import random
from itertools import chain, combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import B, H, PLAIN, Z, open_line
from zxheur.convert import circuit_to_diagram, to_graph_like
from zxheur.corpus import benchmark_circuit
from zxheur.generate import random_circuit, random_graph_like
from zxheur.gflow import find_gflow, gflow_violations, open_graph, same_extraction_qubit
from zxheur.graph import Diagram, MeasurementPlane
from zxheur.heuristics import clifford_simp

XY, XZ, YZ = MeasurementPlane.XY, MeasurementPlane.XZ, MeasurementPlane.YZ


def odd(adj, ks):
    out = set()
    for k in ks:
        out ^= adj[k]
    return out


def brute_force_has_gflow(d):
    """Exhaustive search: pick a correction set for every non-output and
    check that the induced precedence relation is acyclic."""
    og = open_graph(d)
    non_outputs = [v for v in og.vertices if v not in og.outputs]
    non_inputs = [v for v in og.vertices if v not in og.inputs]
    subsets = list(chain.from_iterable(combinations(non_inputs, r) for r in range(len(non_inputs) + 1)))
    options = {}
    for u in non_outputs:
        opts = []
        for ks in subsets:
            ks = set(ks)
            o = odd(og.adj, ks)
            plane = og.planes[u]
            ok = ((plane is XY and u not in ks and u in o) or (plane is XZ and u in ks and u in o)
                  or (plane is YZ and u in ks and u not in o))
            if ok:
                opts.append(frozenset((ks | o) - {u}))
        if not opts:
            return False
        options[u] = opts

    def acyclic(edges):
        state = {}

        def visit(v):
            if state.get(v) == 1:
                return False
            if state.get(v) == 2:
                return True
            state[v] = 1
            if not all(visit(w) for w in edges.get(v, ())):
                return False
            state[v] = 2
            return True
        return all(visit(v) for v in edges)

    order = sorted(non_outputs)

    def search(i, edges):
        if not acyclic(edges):
            return False
        if i == len(order):
            return True
        u = order[i]
        for later in options[u]:
            edges[u] = later
            if search(i + 1, edges):
                return True
        del edges[u]
        return False
    return search(0, {})


def no_gflow_diagram():
    """Two input spiders that both see only one spider towards the outputs."""
    d = Diagram()
    i1, i2, o1, o2 = (d.add_vertex(B, qubit=q) for q in (0, 1, 0, 1))
    a, b, c, e = (d.add_vertex(Z, qubit=q) for q in (0, 1, 0, 1))
    d.add_edge(i1, a)
    d.add_edge(i2, b)
    d.add_edge(c, o1)
    d.add_edge(e, o2)
    d.add_edge(a, c, H)
    d.add_edge(b, c, H)
    d.add_edge(c, e, H)
    d.set_inputs([i1, i2])
    d.set_outputs([o1, o2])
    return d


def test_identity_wire():
    d = Diagram()
    i, o = d.add_vertex(B), d.add_vertex(B)
    d.add_edge(i, o)
    d.set_inputs([i])
    d.set_outputs([o])
    g = find_gflow(d)
    assert g is not None
    assert all(not cs for cs in g.correction.values())


def test_line_gflow():
    d = open_line([0, "1/4", "1/2"])
    g = find_gflow(d)
    assert g is not None and gflow_violations(d, g) == []
    a, b, c = sorted(d.spiders())
    assert g.correction[a] == {b} and g.correction[b] == {c}
    assert g.order[a] < g.order[b] < g.order[c]


def test_missing_gflow():
    d = no_gflow_diagram()
    assert find_gflow(d) is None
    assert not brute_force_has_gflow(d)


@pytest.mark.parametrize("name", ["Toff-NC3", "Toff-Barenco3", "Mod 5_4", "VBE-Adder3"])
def test_clifford_simp_keeps_gflow(name):
    d = to_graph_like(circuit_to_diagram(benchmark_circuit(name)))
    clifford_simp(d)
    g = find_gflow(d)
    assert g is not None
    assert gflow_violations(d, g) == []


@given(st.integers(0, 2 ** 32 - 1))
def test_found_gflow_is_valid(seed):
    rng = random.Random(seed)
    c = random_circuit(rng.randint(1, 4), rng.randint(0, 30), rng)
    d = to_graph_like(circuit_to_diagram(c))
    if rng.random() < 0.5:
        clifford_simp(d)
    g = find_gflow(d)
    assert g is not None
    assert gflow_violations(d, g) == []


@given(st.integers(0, 2 ** 32 - 1))
def test_existence_matches_exhaustive_search(seed):
    rng = random.Random(seed)
    d = random_graph_like(rng.randint(2, 5), rng.randint(1, 2), 0.5, rng)
    g = find_gflow(d)
    assert (g is not None) == brute_force_has_gflow(d)
    if g is not None:
        assert gflow_violations(d, g) == []


def test_same_extraction_qubit():
    d = open_line([0, "1/4", "1/2"])
    g = find_gflow(d)
    a, b, c = sorted(d.spiders())
    assert same_extraction_qubit(d, g, a, b)
    assert same_extraction_qubit(d, g, b, c)
    assert not same_extraction_qubit(d, g, a, c)


def test_cz_coupled_lines_are_different_qubits():
    d = Diagram()
    ins, outs, mid = [], [], []
    for q in range(2):
        i, o = d.add_vertex(B, qubit=q, row=0), d.add_vertex(B, qubit=q, row=3)
        a, b = d.add_vertex(Z, "1/4", qubit=q, row=1), d.add_vertex(Z, qubit=q, row=2)
        d.add_edge(i, a)
        d.add_edge(a, b, H)
        d.add_edge(b, o)
        ins.append(i)
        outs.append(o)
        mid.append((a, b))
    d.add_edge(mid[0][0], mid[1][0], H)
    d.set_inputs(ins)
    d.set_outputs(outs)
    g = find_gflow(d)
    assert g is not None
    assert same_extraction_qubit(d, g, mid[0][0], mid[0][1])
    assert not same_extraction_qubit(d, g, mid[0][0], mid[1][0])


def test_same_extraction_qubit_unknown_vertex():
    d = open_line([0])
    g = find_gflow(d)
    with pytest.raises(KeyError):
        same_extraction_qubit(d, g, 0, 99)
