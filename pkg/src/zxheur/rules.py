"""Rewrite rules on graph-like diagrams.

Every ``apply_*`` function mutates the diagram in place.  The catalogue
covers the basic ZX rules (fusion, identity removal, pi-copy), local
complementation and pivoting in all phase variants, boundary handling,
phase-gadget fusion and neighbour unfusion.

Phase conventions (all phases in units of pi):

* local complementation on ``u`` subtracts ``phase(u)`` from each neighbour
  when ``phase(u)`` is +-1/2;
* pivoting on Pauli ``u, v`` adds ``phase(v)`` to the neighbours exclusive
  to ``u``, ``phase(u)`` to those exclusive to ``v``, and
  ``phase(u) + phase(v) + 1`` to the common neighbours.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .graph import (Diagram, DiagramError, EdgeKind, VertexKind, gadget_leaf,
                    pivot_partition, toggle_cross_pairs)
from .phase import Phase

H = EdgeKind.HADAMARD
PLAIN = EdgeKind.PLAIN
HALF = Phase(Fraction(1, 2))


class RuleError(ValueError):
    """The rule does not apply to the given vertices."""


class RuleKind(Enum):
    FUSION = "f"
    IDENTITY = "id"
    PI_COPY = "pi"
    LOCAL_COMP = "lc"
    PIVOT = "p"
    PIVOT_BOUNDARY = "p1"
    PIVOT_GADGET = "p2"
    GADGET_FUSION = "gf"
    NEIGHBOR_UNFUSION = "nu"


@dataclass(frozen=True)
class Unfusion:
    """Split ``spider``'s phase towards ``neighbor``; ``residual`` stays with
    the new spider placed on that wire."""

    spider: int
    neighbor: int
    residual: Phase


@dataclass
class RuleMatch:
    kind: RuleKind
    targets: Tuple[int, ...]
    unfusions: Tuple[Unfusion, ...] = ()
    score: int = 0
    spider_delta: int = 0
    boundary: bool = False
    tags: dict = field(default_factory=dict)

    def sort_key(self) -> Tuple[int, int, Tuple[int, ...]]:
        """Greedy preference: higher score, fewer new spiders, lower ids."""
        return (-self.score, self.spider_delta, self.targets)


# ----------------------------------------------------------------------
# helpers


def _require_spider(d: Diagram, v: int) -> None:
    if not d.has_vertex(v):
        raise DiagramError(f"unknown vertex {v}")
    if d.is_boundary(v):
        raise RuleError(f"vertex {v} is a boundary")


def _layout_between(d: Diagram, a: int, b: int) -> Tuple[float, float]:
    return d.qubit(a), (d.row(a) + d.row(b)) / 2


# ----------------------------------------------------------------------
# basic rules


def apply_fusion(d: Diagram, u: int, v: int) -> Diagram:
    """Merge ``v`` into ``u`` along a plain wire; phases add up."""
    _require_spider(d, u)
    _require_spider(d, v)
    if d.kind(u) is not d.kind(v):
        raise RuleError("fusion needs spiders of the same colour")
    if not d.connected(u, v) or d.edge_kind(u, v) is not PLAIN:
        raise RuleError("fusion needs a plain wire")
    d.add_to_phase(u, d.phase(v))
    d._fuse_phase_record(u, v)
    nbrs = [(w, k) for w, k in d.adjacency(v).items() if w != u]
    d.remove_vertex(v)
    for w, k in nbrs:
        d.add_edge(u, w, k)
    return d


def apply_identity_removal(d: Diagram, u: int) -> Diagram:
    """Remove a phase-free spider of degree two, splicing its wires."""
    _require_spider(d, u)
    if not d.phase(u).is_zero() or d.degree(u) != 2:
        raise RuleError("identity removal needs a phase-0 spider with two wires")
    (a, ka), (b, kb) = sorted(d.adjacency(u).items())
    kind = PLAIN if ka is kb else H
    d.remove_vertex(u)
    d.add_edge(a, b, kind)
    return d


def apply_pi_copy(d: Diagram, u: int) -> Diagram:
    """Copy a Pauli leaf through its neighbour.

    ``u`` is a degree-one spider with phase ``k*pi`` hanging off ``h`` by a
    Hadamard wire.  The pair is removed and every other neighbour of ``h``
    (all attached by Hadamard wires) receives ``k*pi``.
    """
    _require_spider(d, u)
    if d.degree(u) != 1 or not d.phase(u).is_pauli():
        raise RuleError("pi-copy needs a Pauli spider with a single wire")
    (h,) = d.adjacency(u)
    if d.is_boundary(h) or d.edge_kind(u, h) is not H:
        raise RuleError("pi-copy needs a spider neighbour through a Hadamard wire")
    if any(d.is_boundary(w) or k is not H for w, k in d.adjacency(h).items() if w != u):
        raise RuleError("pi-copy target must be interior with Hadamard wires only")
    p = d.phase(u)
    nbrs = [w for w in d.adjacency(h) if w != u]
    d.remove_vertex(u)
    d.remove_vertex(h)
    for w in nbrs:
        d.add_to_phase(w, p)
    return d


# ----------------------------------------------------------------------
# structural helpers used by lc/pivot variants


def gadgetize(d: Diagram, v: int) -> Tuple[int, int]:
    """Pull ``v``'s phase out into a phase gadget.

    ``v(a)`` becomes ``v(0) -H- hub(0) -H- leaf(a)``.  Returns (hub, leaf).
    """
    p = d.phase(v)
    q, r = d.qubit(v), d.row(v)
    hub = d.add_vertex(VertexKind.Z, 0, q, r - 0.5)
    leaf = d.add_vertex(VertexKind.Z, p, q, r - 0.5)
    d.set_phase(v, 0)
    d._move_phase_record(v, leaf)
    d.add_edge(v, hub, H)
    d.add_edge(hub, leaf, H)
    return hub, leaf


def normalize_gadget(d: Diagram, hub: int) -> None:
    """Move a pi from a gadget hub into a sign flip of its leaf."""
    leaf = gadget_leaf(d, hub)
    if leaf is None or d.phase(hub) != 1:
        return
    d.set_phase(hub, 0)
    d.set_phase(leaf, -d.phase(leaf))
    d._negate_phase_record(leaf)


def unfuse_boundary(d: Diagram, u: int) -> List[int]:
    """Detach ``u`` from its boundaries.

    Each plain wire ``b - u`` becomes ``b - s(0) -H- t(0) -H- u`` (two extra
    Hadamard wires), which makes ``u`` interior.  Returns the new spiders.
    """
    created = []
    for b in sorted(d.boundary_neighbors(u)):
        kind = d.edge_kind(b, u)
        q, r = d.qubit(b), d.row(b)
        d.remove_edge(b, u)
        s = d.add_vertex(VertexKind.Z, 0, q, r)
        d.add_edge(b, s, PLAIN)
        if kind is H:
            d.add_edge(s, u, H)
            created.append(s)
            continue
        t = d.add_vertex(VertexKind.Z, 0, q, (r + d.row(u)) / 2)
        d.add_edge(s, t, H)
        d.add_edge(t, u, H)
        created.extend([s, t])
    return created


def apply_neighbor_unfusion(d: Diagram, u: int, w: int, gamma) -> Optional[Tuple[int, int]]:
    """Set ``u``'s phase to ``gamma`` and move the remainder towards ``w``.

    The wire ``u -H- w`` becomes ``u -H- e(0) -H- r(a-gamma) -H- w`` where
    ``a`` is the old phase of ``u``.  Returns ``(e, r)``; when ``gamma``
    equals the current phase nothing changes and ``None`` is returned.
    """
    _require_spider(d, u)
    _require_spider(d, w)
    if not d.connected(u, w):
        raise DiagramError(f"{u} and {w} are not adjacent")
    alpha = d.phase(u)
    gamma = Phase(gamma)
    if alpha == gamma:
        return None
    kind = d.edge_kind(u, w)
    q, r = _layout_between(d, u, w)
    d.remove_edge(u, w)
    d.set_phase(u, gamma)
    e = d.add_vertex(VertexKind.Z, 0, q, r)
    res = d.add_vertex(VertexKind.Z, alpha - gamma, q, r)
    d._move_phase_record(u, res)
    d.add_edge(u, e, H)
    d.add_edge(e, res, H)
    d.add_edge(res, w, kind)
    return e, res


def _apply_unfusions(d: Diagram, unfusions: Sequence[Unfusion], forbidden: Sequence[int]) -> None:
    for uf in unfusions:
        if uf.neighbor in forbidden:
            raise RuleError("cannot unfuse towards the rule partner")
        gamma = d.phase(uf.spider) - uf.residual
        apply_neighbor_unfusion(d, uf.spider, uf.neighbor, gamma)


def _prepare_boundary(d: Diagram, vs: Sequence[int], allow_boundary: bool) -> None:
    for v in vs:
        if d.boundary_neighbors(v):
            if not allow_boundary:
                raise RuleError(f"spider {v} touches a boundary")
            unfuse_boundary(d, v)


# ----------------------------------------------------------------------
# local complementation


def apply_local_complementation(d: Diagram, u: int, unfusions: Sequence[Unfusion] = (),
                                allow_boundary: bool = False) -> Diagram:
    """Local complementation on ``u`` for any phase.

    * +-pi/2: ``u`` is removed, neighbours get ``-phase(u)``;
    * 0 or pi: ``u`` stays with its phase and neighbours get ``-pi/2``;
    * otherwise ``u`` keeps phase ``-pi/2`` and the remainder
      ``phase(u) - pi/2`` moves to a new leaf on ``u`` (an XZ vertex).

    In all cases the neighbourhood of ``u`` is complemented.  With
    ``unfusions`` the phase is first split towards the given neighbour.
    """
    _require_spider(d, u)
    _prepare_boundary(d, [u], allow_boundary)
    _apply_unfusions(d, unfusions, ())
    p = d.phase(u)
    nbrs = sorted(d.adjacency(u))
    if any(d.is_boundary(w) for w in nbrs):  # pragma: no cover - guarded above
        raise RuleError("lc next to a boundary")
    if p.is_proper_clifford():
        for w in nbrs:
            d.add_to_phase(w, -p)
        d.remove_vertex(u)
    else:
        if not p.is_pauli():
            leaf = d.add_vertex(VertexKind.Z, p - HALF, d.qubit(u), d.row(u) + 0.5)
            d._move_phase_record(u, leaf)
            d.add_edge(u, leaf, H)
            d.set_phase(u, -HALF)
        for w in nbrs:
            d.add_to_phase(w, -HALF)
    for i, a in enumerate(nbrs):
        for b in nbrs[i + 1:]:
            d.toggle_edge(a, b)
    return d


# ----------------------------------------------------------------------
# pivoting


def apply_pivot(d: Diagram, u: int, v: int, unfusions: Sequence[Unfusion] = (),
                allow_boundary: bool = False) -> Diagram:
    """Pivot along the Hadamard wire ``u - v``.

    Non-Pauli endpoints are first turned into phase gadgets, so the general
    case covers the plain pivot (both Pauli) and the gadget pivot.  Boundary
    wires are detached first when ``allow_boundary`` is set.
    """
    _require_spider(d, u)
    _require_spider(d, v)
    if not d.connected(u, v) or d.edge_kind(u, v) is not H:
        raise RuleError("pivot needs a Hadamard wire between the two spiders")
    _prepare_boundary(d, [u, v], allow_boundary)
    _apply_unfusions(d, unfusions, (u, v))
    hubs = []
    for x in (u, v):
        if not d.phase(x).is_pauli():
            hubs.append(gadgetize(d, x)[0])
    a, b, c = pivot_partition(d, u, v)
    if any(d.is_boundary(w) for w in a | b | c):  # pragma: no cover - guarded above
        raise RuleError("pivot next to a boundary")
    pu, pv = d.phase(u), d.phase(v)
    toggle_cross_pairs(d, a, b, c)
    if pv:
        for w in b:
            d.add_to_phase(w, pv)
    if pu:
        for w in c:
            d.add_to_phase(w, pu)
    shift = pu + pv + 1
    for w in a:
        d.add_to_phase(w, shift)
    d.remove_vertex(u)
    d.remove_vertex(v)
    for hub in hubs:
        normalize_gadget(d, hub)
    return d


def apply_pivot_boundary(d: Diagram, u: int, w: int) -> Diagram:
    """Pivot an interior Pauli spider ``u`` with a boundary-adjacent ``w``."""
    if not d.phase(u).is_pauli() or not d.is_interior(u):
        raise RuleError("p1 needs an interior Pauli spider")
    if not d.boundary_neighbors(w):
        raise RuleError("p1 needs a boundary-adjacent partner")
    return apply_pivot(d, u, w, allow_boundary=True)


def apply_pivot_gadget(d: Diagram, u: int, v: int) -> Diagram:
    """Pivot an interior Pauli ``u`` with an interior non-Pauli ``v``."""
    if not d.phase(u).is_pauli() or d.phase(v).is_pauli():
        raise RuleError("p2 needs a Pauli and a non-Pauli spider")
    return apply_pivot(d, u, v)


# ----------------------------------------------------------------------
# gadgets


def gadget_neighbors(d: Diagram, hub: int) -> frozenset:
    leaf = gadget_leaf(d, hub)
    return frozenset(w for w in d.adjacency(hub) if w != leaf)


def apply_gadget_fusion(d: Diagram, g1: int, g2: int) -> Diagram:
    """Fuse two phase gadgets (given by their hubs) with equal neighbourhoods."""
    l1, l2 = gadget_leaf(d, g1), gadget_leaf(d, g2)
    if l1 is None or l2 is None or g1 == g2:
        raise RuleError("gadget fusion needs two distinct phase gadgets")
    if not (d.phase(g1).is_pauli() and d.phase(g2).is_pauli()):
        raise RuleError("gadget hubs must carry a Pauli phase")
    if gadget_neighbors(d, g1) != gadget_neighbors(d, g2):
        raise RuleError("gadgets act on different neighbourhoods")
    normalize_gadget(d, g1)
    normalize_gadget(d, g2)
    d.add_to_phase(l1, d.phase(l2))
    d._fuse_phase_record(l1, l2)
    d.remove_vertex(l2)
    d.remove_vertex(g2)
    return d
