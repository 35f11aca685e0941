import random
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import H, PLAIN, Z, B, interior_star
from zxheur.graph import (Diagram, DiagramError, EdgeKind, MeasurementPlane, VertexKind, classify_plane,
                          local_complement_graph, neighbors, pivot_graph, pivot_partition)
from zxheur.rules import RuleError, gadgetize


def simple_graph(names, edges):
    d = Diagram()
    ids = {n: d.add_vertex(Z) for n in names}
    for a, b in edges:
        d.add_edge(ids[a], ids[b], H)
    return d, ids


def edge_set(d, ids):
    inv = {v: k for k, v in ids.items()}
    return {frozenset((inv[u], inv[v])) for u, v, _ in d.edges()}


# the graph of the local complementation example: a is adjacent to b, c, d
# and only c - d is connected among them
LC_NAMES = "abcd"
LC_EDGES = [("a", "b"), ("a", "c"), ("a", "d"), ("c", "d")]

# the pivot example: A = {b}, B = {a, d}, C = {c, e}; a - b is missing and
# b - d is present in the original graph
PV_NAMES = ["u", "v", "a", "b", "c", "d", "e"]
PV_EDGES = [("u", "v"), ("u", "a"), ("u", "b"), ("u", "d"), ("v", "b"), ("v", "c"), ("v", "e"),
            ("b", "d"), ("a", "c")]


def test_neighbors_path_and_isolated():
    d = Diagram()
    a, u, b, iso = (d.add_vertex(Z) for _ in range(4))
    d.add_edge(a, u, H)
    d.add_edge(u, b, H)
    assert neighbors(d, u) == {a, b}
    assert neighbors(d, iso) == set()


def test_neighbors_example_graph():
    d, ids = simple_graph(LC_NAMES, LC_EDGES)
    assert neighbors(d, ids["a"]) == {ids["b"], ids["c"], ids["d"]}


def test_neighbors_unknown_vertex():
    with pytest.raises(DiagramError):
        neighbors(Diagram(), 7)


def test_local_complement_example():
    d, ids = simple_graph(LC_NAMES, LC_EDGES)
    g = local_complement_graph(d, ids["a"])
    e = edge_set(g, ids)
    assert frozenset("bc") in e
    assert frozenset("cd") not in e
    assert frozenset("bd") in e
    assert {frozenset("ab"), frozenset("ac"), frozenset("ad")} <= e
    # the input is untouched unless asked otherwise
    assert edge_set(d, ids) == {frozenset(x) for x in LC_EDGES}


def test_local_complement_star_adds_all_pairs():
    d = Diagram()
    c = d.add_vertex(Z)
    leaves = [d.add_vertex(Z) for _ in range(4)]
    for v in leaves:
        d.add_edge(c, v, H)
    g = local_complement_graph(d, c)
    assert g.num_edges() == 4 + 6


def test_local_complement_unknown_vertex():
    with pytest.raises(DiagramError):
        local_complement_graph(Diagram(), 0)


def test_pivot_partition_example():
    d, ids = simple_graph(PV_NAMES, PV_EDGES)
    a, b, c = pivot_partition(d, ids["u"], ids["v"])
    name = {v: k for k, v in ids.items()}
    assert {name[x] for x in a} == {"b"}
    assert {name[x] for x in b} == {"a", "d"}
    assert {name[x] for x in c} == {"c", "e"}


def test_pivot_example():
    d, ids = simple_graph(PV_NAMES, PV_EDGES)
    g = pivot_graph(d, ids["u"], ids["v"])
    e = edge_set(g, ids)
    assert frozenset("ab") in e
    assert frozenset("bd") not in e
    # pairs inside one set are left alone
    assert frozenset("ce") not in e
    # a - c was connected across B and C, so it is removed
    assert frozenset("ac") not in e


def test_pivot_requires_edge():
    d, ids = simple_graph("xy", [])
    with pytest.raises((DiagramError, RuleError)):
        pivot_graph(d, ids["x"], ids["y"])


@st.composite
def random_simple_graphs(draw):
    n = draw(st.integers(2, 9))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    d, ids = simple_graph(range(n), chosen)
    return d, ids


@given(random_simple_graphs(), st.data())
def test_local_complement_is_involution(graph, data):
    d, ids = graph
    u = data.draw(st.sampled_from(sorted(ids.values())))
    twice = local_complement_graph(local_complement_graph(d, u), u)
    assert edge_set(twice, ids) == edge_set(d, ids)


@given(random_simple_graphs(), st.data())
def test_local_complement_edge_count(graph, data):
    d, ids = graph
    u = data.draw(st.sampled_from(sorted(ids.values())))
    nb = sorted(d.neighbors(u))
    n = len(nb)
    m = sum(1 for x, y in combinations(nb, 2) if d.connected(x, y))
    g = local_complement_graph(d, u)
    assert g.num_edges() - d.num_edges() == n * (n - 1) // 2 - 2 * m


@given(random_simple_graphs(), st.data())
def test_pivot_is_triple_local_complement_and_symmetric(graph, data):
    d, ids = graph
    edges = [(u, v) for u, v, _ in d.edges()]
    if not edges:
        return
    u, v = data.draw(st.sampled_from(edges))
    p = pivot_graph(d, u, v)
    triple = local_complement_graph(local_complement_graph(local_complement_graph(d, u), v), u)
    # the triple local complementation also swaps the roles of u and v
    swapped = {frozenset({v if x == u else u if x == v else x for x in e}) for e in edge_set(triple, ids)}
    assert edge_set(p, ids) in (edge_set(triple, ids), swapped)
    assert edge_set(pivot_graph(d, v, u), ids) == edge_set(p, ids)


def test_parallel_hadamard_wires_cancel():
    d = Diagram()
    a, b = d.add_vertex(Z), d.add_vertex(Z)
    d.add_edge(a, b, H)
    d.add_edge(a, b, H)
    assert not d.connected(a, b)


def test_classify_plane():
    d, centre, leaves = interior_star("1/4", 2)
    assert classify_plane(d, leaves[0]) is MeasurementPlane.XY
    assert classify_plane(d, centre) is MeasurementPlane.XY
    hub, leaf = gadgetize(d, centre)
    assert classify_plane(d, hub) is MeasurementPlane.YZ


def test_copy_is_independent():
    d, centre, leaves = interior_star(0, 3)
    c = d.copy()
    c.remove_vertex(centre)
    assert d.has_vertex(centre)
    assert d.degree(centre) == 3
