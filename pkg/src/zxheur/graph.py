"""Open ZX-diagrams as simple undirected graphs.

The :class:`Diagram` stores spiders (Z or X), boundary vertices and
plain/Hadamard wires.  Vertex ids are integers handed out by a counter and
never reused, so a vertex id stays meaningful across a whole rewrite
sequence.

Besides the container this module holds the purely graph-theoretic
operations the rewrite rules are built on: local complementation, pivoting,
the neighbourhood partition used by pivoting, and the measurement-plane
classification of interior spiders.
"""

from __future__ import annotations

from enum import Enum
from itertools import combinations
from typing import Dict, Iterable, Iterator, List, Optional, Set, Tuple

from .phase import PI, Phase, PhaseLike


class VertexKind(Enum):
    BOUNDARY = 0
    Z = 1
    X = 2


class EdgeKind(Enum):
    PLAIN = 1
    HADAMARD = 2

    def toggled(self) -> "EdgeKind":
        return EdgeKind.HADAMARD if self is EdgeKind.PLAIN else EdgeKind.PLAIN


class MeasurementPlane(Enum):
    XY = "XY"
    XZ = "XZ"
    YZ = "YZ"


class DiagramError(ValueError):
    """Raised for malformed requests on a diagram (unknown ids, bad edges)."""


class Diagram:
    """A mutable open ZX-diagram.

    ``inputs`` and ``outputs`` are ordered lists of boundary vertex ids; the
    i-th entry corresponds to qubit i.  At most one edge exists between any
    two vertices; :meth:`add_edge` resolves would-be parallel edges and
    self-loops with the Hopf, fusion and Hadamard-loop identities, so the
    graph stays simple at all times.
    """

    def __init__(self) -> None:
        self._adj: Dict[int, Dict[int, EdgeKind]] = {}
        self._kind: Dict[int, VertexKind] = {}
        self._phase: Dict[int, Phase] = {}
        self._qubit: Dict[int, float] = {}
        self._row: Dict[int, float] = {}
        self._next_id = 0
        self._inputs: List[int] = []
        self._outputs: List[int] = []
        self._input_set: Set[int] = set()
        self._output_set: Set[int] = set()
        # Optional observer notified when phases fuse, move or flip sign.
        # Used by phase teleportation; ``None`` means no bookkeeping.
        self.tracker = None

    # ------------------------------------------------------------------
    # vertices
    def add_vertex(self, kind: VertexKind = VertexKind.Z, phase: PhaseLike = 0,
                   qubit: float = -1, row: float = -1) -> int:
        v = self._next_id
        self._next_id += 1
        self._adj[v] = {}
        self._kind[v] = kind
        self._phase[v] = Phase(phase)
        self._qubit[v] = qubit
        self._row[v] = row
        return v

    def remove_vertex(self, v: int) -> None:
        self._check(v)
        for w in list(self._adj[v]):
            del self._adj[w][v]
        del self._adj[v]
        del self._kind[v]
        del self._phase[v]
        del self._qubit[v]
        del self._row[v]
        if v in self._input_set:
            self._inputs.remove(v)
            self._input_set.discard(v)
        if v in self._output_set:
            self._outputs.remove(v)
            self._output_set.discard(v)

    def has_vertex(self, v: int) -> bool:
        return v in self._adj

    def vertices(self) -> List[int]:
        return list(self._adj)

    def spiders(self) -> List[int]:
        return [v for v, k in self._kind.items() if k is not VertexKind.BOUNDARY]

    def num_vertices(self) -> int:
        return len(self._adj)

    def num_spiders(self) -> int:
        return sum(1 for k in self._kind.values() if k is not VertexKind.BOUNDARY)

    def next_id(self) -> int:
        """The id the next :meth:`add_vertex` call will hand out."""
        return self._next_id

    def kind(self, v: int) -> VertexKind:
        self._check(v)
        return self._kind[v]

    def set_kind(self, v: int, kind: VertexKind) -> None:
        self._check(v)
        self._kind[v] = kind

    def phase(self, v: int) -> Phase:
        self._check(v)
        return self._phase[v]

    def set_phase(self, v: int, phase: PhaseLike) -> None:
        self._check(v)
        self._phase[v] = Phase(phase)

    def add_to_phase(self, v: int, phase: PhaseLike) -> None:
        self._check(v)
        self._phase[v] = self._phase[v] + phase

    def qubit(self, v: int) -> float:
        return self._qubit[v]

    def row(self, v: int) -> float:
        return self._row[v]

    def set_qubit(self, v: int, q: float) -> None:
        self._qubit[v] = q

    def set_row(self, v: int, r: float) -> None:
        self._row[v] = r

    def is_boundary(self, v: int) -> bool:
        return self._kind[v] is VertexKind.BOUNDARY

    def is_spider(self, v: int) -> bool:
        return self._kind[v] is not VertexKind.BOUNDARY

    # ------------------------------------------------------------------
    # inputs / outputs
    @property
    def inputs(self) -> List[int]:
        return list(self._inputs)

    @property
    def outputs(self) -> List[int]:
        return list(self._outputs)

    def set_inputs(self, vs: Iterable[int]) -> None:
        self._inputs = list(vs)
        self._input_set = set(self._inputs)

    def set_outputs(self, vs: Iterable[int]) -> None:
        self._outputs = list(vs)
        self._output_set = set(self._outputs)

    def is_input(self, v: int) -> bool:
        return v in self._input_set

    def is_output(self, v: int) -> bool:
        return v in self._output_set

    def qubit_count(self) -> int:
        return len(self._outputs)

    # ------------------------------------------------------------------
    # edges
    def neighbors(self, v: int) -> Set[int]:
        self._check(v)
        return set(self._adj[v])

    def adjacency(self, v: int) -> Dict[int, EdgeKind]:
        """Read-only view of ``v``'s incident edges (do not mutate)."""
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def connected(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def edge_kind(self, u: int, v: int) -> EdgeKind:
        try:
            return self._adj[u][v]
        except KeyError:
            raise DiagramError(f"no edge between {u} and {v}") from None

    def set_edge_kind(self, u: int, v: int, kind: EdgeKind) -> None:
        if v not in self._adj[u]:
            raise DiagramError(f"no edge between {u} and {v}")
        self._adj[u][v] = kind
        self._adj[v][u] = kind

    def edges(self) -> Iterator[Tuple[int, int, EdgeKind]]:
        for u, nbrs in self._adj.items():
            for v, k in nbrs.items():
                if u < v:
                    yield u, v, k

    def num_edges(self) -> int:
        return sum(len(n) for n in self._adj.values()) // 2

    def remove_edge(self, u: int, v: int) -> None:
        if v not in self._adj[u]:
            raise DiagramError(f"no edge between {u} and {v}")
        del self._adj[u][v]
        del self._adj[v][u]

    def add_edge(self, u: int, v: int, kind: EdgeKind = EdgeKind.PLAIN) -> None:
        """Add an edge, resolving self-loops and parallel edges on the spot.

        * a plain self-loop disappears, a Hadamard self-loop adds pi;
        * between same-coloured spiders a second Hadamard edge cancels the
          first (Hopf law), a second plain edge is absorbed, and a mixed
          plain/Hadamard pair leaves a plain edge plus a pi phase;
        * between differently coloured spiders the roles of plain and
          Hadamard are exchanged.
        """
        self._check(u)
        self._check(v)
        if u == v:
            if self.is_boundary(u):
                raise DiagramError("self-loop on a boundary vertex")
            if kind is EdgeKind.HADAMARD:
                self.add_to_phase(u, PI)
            return
        existing = self._adj[u].get(v)
        if existing is None:
            self._adj[u][v] = kind
            self._adj[v][u] = kind
            return
        if self.is_boundary(u) or self.is_boundary(v):
            raise DiagramError("parallel edge at a boundary vertex")
        same_colour = self._kind[u] is self._kind[v]
        cancelling = EdgeKind.HADAMARD if same_colour else EdgeKind.PLAIN
        if existing is kind:
            if kind is cancelling:
                self.remove_edge(u, v)
            return
        # one plain and one Hadamard edge
        survivor = cancelling.toggled()
        self.set_edge_kind(u, v, survivor)
        self.add_to_phase(u, PI)

    def toggle_edge(self, u: int, v: int) -> None:
        """Remove the edge ``u-v`` if present, otherwise add a Hadamard edge."""
        if v in self._adj[u]:
            self.remove_edge(u, v)
        else:
            self._adj[u][v] = EdgeKind.HADAMARD
            self._adj[v][u] = EdgeKind.HADAMARD

    # ------------------------------------------------------------------
    # structural queries
    def boundary_neighbors(self, v: int) -> List[int]:
        return [w for w in self._adj[v] if self._kind[w] is VertexKind.BOUNDARY]

    def is_interior(self, v: int) -> bool:
        """A spider with no boundary neighbour."""
        if self._kind[v] is VertexKind.BOUNDARY:
            return False
        return all(self._kind[w] is not VertexKind.BOUNDARY for w in self._adj[v])

    def copy(self) -> "Diagram":
        d = Diagram.__new__(Diagram)
        d._adj = {v: dict(n) for v, n in self._adj.items()}
        d._kind = dict(self._kind)
        d._phase = dict(self._phase)
        d._qubit = dict(self._qubit)
        d._row = dict(self._row)
        d._next_id = self._next_id
        d._inputs = list(self._inputs)
        d._outputs = list(self._outputs)
        d._input_set = set(self._input_set)
        d._output_set = set(self._output_set)
        d.tracker = None
        return d

    def restore(self, snapshot: "Diagram") -> None:
        """Overwrite this diagram's contents with ``snapshot`` (keeps the tracker)."""
        self._adj = {v: dict(n) for v, n in snapshot._adj.items()}
        self._kind = dict(snapshot._kind)
        self._phase = dict(snapshot._phase)
        self._qubit = dict(snapshot._qubit)
        self._row = dict(snapshot._row)
        self._next_id = max(self._next_id, snapshot._next_id)
        self.set_inputs(snapshot._inputs)
        self.set_outputs(snapshot._outputs)

    def _check(self, v: int) -> None:
        if v not in self._adj:
            raise DiagramError(f"unknown vertex {v}")

    def __repr__(self) -> str:
        return (f"Diagram(vertices={self.num_vertices()}, edges={self.num_edges()}, "
                f"inputs={len(self._inputs)}, outputs={len(self._outputs)})")

    # ------------------------------------------------------------------
    # phase bookkeeping hooks (no-ops unless a tracker is attached)
    def _fuse_phase_record(self, keep: int, gone: int) -> None:
        if self.tracker is not None:
            self.tracker.fuse(keep, gone)

    def _move_phase_record(self, src: int, dst: int) -> None:
        if self.tracker is not None:
            self.tracker.move(src, dst)

    def _negate_phase_record(self, v: int) -> None:
        if self.tracker is not None:
            self.tracker.negate(v)


# ----------------------------------------------------------------------
# graph operations


def neighbors(d: Diagram, u: int) -> Set[int]:
    """The set of vertices adjacent to ``u``."""
    return d.neighbors(u)


def _complement_among(d: Diagram, vs: List[int]) -> None:
    for a, b in combinations(vs, 2):
        d.toggle_edge(a, b)


def local_complement_graph(d: Diagram, u: int, inplace: bool = False) -> Diagram:
    """Toggle every edge between two neighbours of ``u``.

    Edges incident to ``u`` are untouched; newly created edges are Hadamard
    edges.  Phases are not modified: this is the bare graph operation.
    """
    nbrs = sorted(d.neighbors(u))
    g = d if inplace else d.copy()
    _complement_among(g, nbrs)
    return g


def pivot_partition(d: Diagram, u: int, v: int) -> Tuple[Set[int], Set[int], Set[int]]:
    """Split the neighbourhood of the edge ``u-v`` into (common, only-u, only-v)."""
    if not d.connected(u, v):
        raise DiagramError(f"{u} and {v} are not adjacent")
    nu = d.neighbors(u) - {v}
    nv = d.neighbors(v) - {u}
    a = nu & nv
    return a, nu - a, nv - a


def toggle_cross_pairs(d: Diagram, a: Set[int], b: Set[int], c: Set[int]) -> None:
    """Toggle all pairs taken from two different sets among ``a``, ``b``, ``c``."""
    for x, y in ((a, b), (a, c), (b, c)):
        for s in x:
            for t in y:
                d.toggle_edge(s, t)


def pivot_graph(d: Diagram, u: int, v: int, inplace: bool = False) -> Diagram:
    """The pivot ``G ^ uv``, equal to three local complementations u, v, u.

    Pairs across the partition sets are toggled, pairs inside one set are
    left alone, and the neighbourhoods of ``u`` and ``v`` are exchanged
    (``u`` ends up adjacent to the common and v-exclusive neighbours).
    """
    a, b, c = pivot_partition(d, u, v)
    g = d if inplace else d.copy()
    toggle_cross_pairs(g, a, b, c)
    for w in b:
        g.remove_edge(u, w)
        g.toggle_edge(v, w)
    for w in c:
        g.remove_edge(v, w)
        g.toggle_edge(u, w)
    return g


# ----------------------------------------------------------------------
# phase gadgets and measurement planes


def is_leaf(d: Diagram, v: int) -> bool:
    """A spider of degree one hanging off another spider."""
    if not d.is_spider(v) or d.degree(v) != 1:
        return False
    (w,) = d.adjacency(v)
    return d.is_spider(w)


def gadget_leaf(d: Diagram, hub: int) -> Optional[int]:
    """The phase-carrying leaf of ``hub`` if ``hub`` is the centre of a gadget.

    A hub is an interior spider with a Clifford phase, at least two
    neighbours, and a degree-one spider neighbour attached by a Hadamard
    wire.  When several leaves qualify the smallest id is used.
    """
    if not d.is_spider(hub) or d.degree(hub) < 2:
        return None
    if not d.phase(hub).is_clifford():
        return None
    leaf = None
    for w, k in d.adjacency(hub).items():
        if d.is_boundary(w):
            return None
        if k is EdgeKind.HADAMARD and d.degree(w) == 1 and (leaf is None or w < leaf):
            leaf = w
    return leaf


def gadget_hub(d: Diagram, v: int) -> Optional[int]:
    """If ``v`` is the leaf of a gadget, return its hub."""
    if not is_leaf(d, v):
        return None
    (h,) = d.adjacency(v)
    return h if gadget_leaf(d, h) == v else None


def classify_plane(d: Diagram, u: int) -> MeasurementPlane:
    """Measurement plane of an interior spider of a graph-like diagram.

    A gadget hub whose phase is a multiple of pi is a YZ vertex, one with
    phase +-pi/2 is an XZ vertex, everything else (including any spider
    touching a boundary) is XY.  A gadget leaf reports the plane of its hub,
    since the pair stands for a single measured vertex.
    """
    if not d.is_spider(u):
        raise DiagramError(f"vertex {u} is a boundary")
    hub = gadget_hub(d, u)
    if hub is not None:
        u = hub
    if gadget_leaf(d, u) is None:
        return MeasurementPlane.XY
    p = d.phase(u)
    if p.is_pauli():
        return MeasurementPlane.YZ
    return MeasurementPlane.XZ


def gadgets(d: Diagram) -> Dict[int, int]:
    """Map hub -> leaf for every phase gadget in ``d``."""
    out = {}
    for v in d.spiders():
        if d.degree(v) >= 2:
            leaf = gadget_leaf(d, v)
            if leaf is not None:
                out[v] = leaf
    return out
