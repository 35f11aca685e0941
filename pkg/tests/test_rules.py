import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import B, H, PLAIN, Z, interior_star, open_line, same_tensor
from zxheur.convert import graph_like_violations, wire_count
from zxheur.generate import random_graph_like
from zxheur.graph import Diagram, DiagramError, MeasurementPlane, VertexKind, classify_plane, gadget_hub
from zxheur.phase import Phase
from zxheur.rules import (RuleError, Unfusion, apply_fusion, apply_gadget_fusion, apply_identity_removal,
                          apply_local_complementation, apply_neighbor_unfusion, apply_pi_copy, apply_pivot,
                          apply_pivot_boundary, apply_pivot_gadget, gadgetize)

QUARTER = Fraction(1, 4)
HALF = Fraction(1, 2)


@st.composite
def diagrams(draw, max_spiders=9, max_qubits=2):
    seed = draw(st.integers(0, 2 ** 32 - 1))
    rng = random.Random(seed)
    q = draw(st.integers(1, max_qubits))
    n = draw(st.integers(max(q, 2), max_spiders))
    return random_graph_like(n, q, draw(st.sampled_from([0.3, 0.5, 0.7])), rng)


def interior(d):
    return [v for v in d.spiders() if d.is_interior(v) and d.degree(v) > 0]


def check(before, after):
    assert graph_like_violations(after) == []
    assert same_tensor(before, after)


# basic rules ---------------------------------------------------------------


def test_fusion_adds_phases():
    d = Diagram()
    i, o = d.add_vertex(B), d.add_vertex(B)
    a, b = d.add_vertex(Z, QUARTER), d.add_vertex(Z, HALF)
    d.add_edge(i, a)
    d.add_edge(a, b)
    d.add_edge(b, o)
    d.set_inputs([i])
    d.set_outputs([o])
    before = d.copy()
    apply_fusion(d, a, b)
    assert d.phase(a) == Phase(Fraction(3, 4))
    assert not d.has_vertex(b)
    assert same_tensor(before, d)


def test_fusion_of_phase_free_spiders():
    d = Diagram()
    a, b = d.add_vertex(Z), d.add_vertex(Z)
    d.add_edge(a, b)
    apply_fusion(d, a, b)
    assert d.phase(a) == 0 and d.num_spiders() == 1


def test_fusion_rejects_hadamard_wire():
    d = Diagram()
    a, b = d.add_vertex(Z), d.add_vertex(Z)
    d.add_edge(a, b, H)
    with pytest.raises(RuleError):
        apply_fusion(d, a, b)


def test_identity_removal_between_hadamards():
    d = open_line([QUARTER, 0, HALF])
    a, u, b = sorted(d.spiders())
    before = d.copy()
    apply_identity_removal(d, u)
    assert d.edge_kind(a, b) is PLAIN
    assert same_tensor(before, d)


def test_identity_removal_rejects_phase():
    d = open_line([0, QUARTER, 0])
    with pytest.raises(RuleError):
        apply_identity_removal(d, sorted(d.spiders())[1])


def test_pi_copy():
    d, centre, leaves = interior_star(0, 2, QUARTER)
    x = d.add_vertex(Z, 1)
    d.add_edge(centre, x, H)
    before = d.copy()
    apply_pi_copy(d, x)
    assert not d.has_vertex(x) and not d.has_vertex(centre)
    assert all(d.phase(v) == Phase(Fraction(5, 4)) for v in leaves)
    assert same_tensor(before, d)


def test_pi_copy_of_phase_zero_leaf():
    d, centre, leaves = interior_star(HALF, 2)
    x = d.add_vertex(Z, 0)
    d.add_edge(centre, x, H)
    before = d.copy()
    apply_pi_copy(d, x)
    assert same_tensor(before, d)


def test_pi_copy_pattern_mismatch():
    d, centre, leaves = interior_star(0, 2)
    with pytest.raises(RuleError):
        apply_pi_copy(d, centre)


# local complementation and pivoting --------------------------------------


def test_lc_removes_proper_clifford_spider():
    d, centre, leaves = interior_star(HALF, 3)
    before = d.copy()
    apply_local_complementation(d, centre)
    assert d.num_spiders() == before.num_spiders() - 1
    assert wire_count(d) == 3
    check(before, d)


def test_lc_on_six_wire_star_creates_all_pairs():
    d, centre, leaves = interior_star(HALF, 6)
    apply_local_complementation(d, centre)
    assert wire_count(d) == 15


def test_lc_rejects_boundary_spider():
    d, centre, leaves = interior_star(HALF, 2)
    with pytest.raises(RuleError):
        apply_local_complementation(d, leaves[0])


def test_isolated_pauli_pair_pivot():
    d, centre, leaves = interior_star(0, 2)
    partner = d.add_vertex(Z, 1)
    d.add_edge(centre, partner, H)
    before = d.copy()
    w0 = wire_count(d)
    apply_pivot(d, centre, partner)
    assert d.num_spiders() == before.num_spiders() - 2
    assert w0 - wire_count(d) == 3
    check(before, d)


def test_pivot_needs_hadamard_wire():
    d, centre, leaves = interior_star(0, 2)
    other = d.add_vertex(Z)
    with pytest.raises(RuleError):
        apply_pivot(d, centre, other)


def test_pivot_gadget_introduces_yz_gadget():
    d, centre, leaves = interior_star(0, 3)
    t = d.add_vertex(Z, QUARTER)
    d.add_edge(centre, t, H)
    for v in leaves[:2]:
        d.add_edge(t, v, H)
    before = d.copy()
    apply_pivot_gadget(d, centre, t)
    check(before, d)
    hubs = [v for v in d.spiders() if gadget_hub(d, v) is None and d.degree(v) > 1
            and any(d.degree(w) == 1 and d.phase(w) == Phase(QUARTER) for w in d.adjacency(v))]
    assert hubs
    assert classify_plane(d, hubs[0]) is MeasurementPlane.YZ


def test_pivot_boundary():
    d, centre, leaves = interior_star(0, 2, leaf_phase=1)
    before = d.copy()
    apply_pivot_boundary(d, centre, leaves[0])
    check(before, d)
    with pytest.raises(RuleError):
        apply_pivot_boundary(d, leaves[1], leaves[1])


def test_gadget_fusion():
    d, centre, leaves = interior_star(0, 2)
    d.remove_vertex(centre)
    hubs = []
    for _ in range(2):
        hub = d.add_vertex(Z)
        leaf = d.add_vertex(Z, QUARTER)
        d.add_edge(hub, leaf, H)
        for v in leaves:
            d.add_edge(hub, v, H)
        hubs.append(hub)
    before = d.copy()
    apply_gadget_fusion(d, *hubs)
    check(before, d)
    leaves_left = [v for v in d.spiders() if d.degree(v) == 1 and not d.boundary_neighbors(v)]
    assert [d.phase(v) for v in leaves_left] == [Phase(HALF)]


def test_gadget_fusion_needs_equal_neighbourhoods():
    d, centre, leaves = interior_star(0, 3)
    d.remove_vertex(centre)
    h1, l1 = d.add_vertex(Z), d.add_vertex(Z, QUARTER)
    h2, l2 = d.add_vertex(Z), d.add_vertex(Z, QUARTER)
    d.add_edge(h1, l1, H)
    d.add_edge(h2, l2, H)
    d.add_edge(h1, leaves[0], H)
    d.add_edge(h2, leaves[1], H)
    with pytest.raises(RuleError):
        apply_gadget_fusion(d, h1, h2)


def test_neighbor_unfusion_splits_phase():
    d, centre, leaves = interior_star(QUARTER, 2)
    before = d.copy()
    e, r = apply_neighbor_unfusion(d, centre, leaves[0], HALF)
    assert d.phase(centre) == Phase(HALF)
    assert d.phase(e) == 0 and d.phase(r) == Phase(QUARTER - HALF)
    assert d.connected(r, leaves[0]) and not d.connected(centre, leaves[0])
    check(before, d)


def test_neighbor_unfusion_requires_adjacency():
    d, centre, leaves = interior_star(QUARTER, 2)
    with pytest.raises(DiagramError):
        apply_neighbor_unfusion(d, leaves[0], leaves[1], 0)


# property tests ------------------------------------------------------------


@given(diagrams(), st.data())
def test_lc_preserves_semantics(d, data):
    cands = interior(d)
    if not cands:
        return
    u = data.draw(st.sampled_from(sorted(cands)))
    before = d.copy()
    n0 = d.num_spiders()
    proper = d.phase(u).is_proper_clifford()
    apply_local_complementation(d, u)
    check(before, d)
    if proper:
        assert d.num_spiders() == n0 - 1


@given(diagrams(), st.data())
def test_pivot_preserves_semantics(d, data):
    edges = [(u, v) for u, v, k in d.edges() if k is H and d.is_spider(u) and d.is_spider(v)
             and d.is_interior(u) and d.is_interior(v)]
    if not edges:
        return
    u, v = data.draw(st.sampled_from(sorted(edges)))
    before = d.copy()
    plain = d.phase(u).is_pauli() and d.phase(v).is_pauli()
    apply_pivot(d, u, v)
    check(before, d)
    if plain:
        assert d.num_spiders() == before.num_spiders() - 2


@given(diagrams(), st.data())
def test_boundary_rules_preserve_semantics(d, data):
    cands = [v for v in d.spiders() if d.degree(v) > len(d.boundary_neighbors(v)) > 0]
    if not cands:
        return
    u = data.draw(st.sampled_from(sorted(cands)))
    before = d.copy()
    apply_local_complementation(d, u, allow_boundary=True)
    check(before, d)


@given(diagrams(), st.data())
def test_unfusion_then_lc_preserves_semantics(d, data):
    cands = [(u, w) for u in interior(d) for w in d.adjacency(u) if d.is_spider(w)]
    if not cands:
        return
    u, w = data.draw(st.sampled_from(sorted(cands)))
    before = d.copy()
    gamma = Phase(HALF)
    apply_local_complementation(d, u, (Unfusion(u, w, d.phase(u) - gamma),))
    check(before, d)
