"""Phase teleportation: T-count reduction without changing circuit structure.

The circuit is turned into a diagram in which every non-Clifford rotation
spider is tagged with the index of the gate it came from.  The diagram is
then simplified with :func:`~zxheur.heuristics.full_reduce` while a tracker
records which tagged phases get fused (and with which relative sign).
Phases that end up in the same spider can be merged in the original
circuit: the first gate of a group receives the signed sum and the others
are dropped.  The simplified diagram itself is discarded.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from .circuit import Circuit, Gate, decompose_toffoli, x_rotation, z_rotation
from .convert import circuit_to_diagram, to_graph_like
from .phase import Phase


class PhaseTracker:
    """Union-find over gate indices with a sign (parity) on every link.

    ``owner`` maps a vertex to ``(gate index, sign)``: the vertex currently
    carries ``sign * angle(gate)`` as its tracked part.
    """

    def __init__(self) -> None:
        self.owner: Dict[int, Tuple[int, int]] = {}
        self.parent: Dict[int, int] = {}
        self.rel: Dict[int, int] = {}  # sign of a node relative to its parent

    def tag(self, vertex: int, gate: int) -> None:
        self.owner[vertex] = (gate, 1)
        self.parent[gate] = gate
        self.rel[gate] = 1

    def find(self, g: int) -> Tuple[int, int]:
        """Root of ``g`` and the sign of ``g`` relative to it."""
        sign = 1
        path = []
        while self.parent[g] != g:
            path.append(g)
            sign *= self.rel[g]
            g = self.parent[g]
        root = g
        # path compression
        acc = sign
        for node in path:
            s = self.rel[node]
            self.parent[node] = root
            self.rel[node] = acc
            acc *= s
        return root, sign

    def union(self, a: int, b: int, sign: int) -> None:
        """Record ``angle(b) ~ sign * angle(a)`` (they are merged as
        ``angle(a) + sign * angle(b)`` up to an overall sign)."""
        ra, sa = self.find(a)
        rb, sb = self.find(b)
        if ra == rb:
            return
        if rb < ra:
            ra, rb, sa, sb = rb, ra, sb, sa
        # angle(b) relative to ra: sa * sign ; angle(b) = sb * angle(rb)
        self.parent[rb] = ra
        self.rel[rb] = sa * sign * sb

    # hooks called by the diagram
    def fuse(self, keep: int, gone: int) -> None:
        tk = self.owner.get(keep)
        tg = self.owner.pop(gone, None)
        if tg is None:
            return
        if tk is None:
            self.owner[keep] = tg
            return
        (gk, sk), (gg, sg) = tk, tg
        self.union(gk, gg, sk * sg)

    def move(self, src: int, dst: int) -> None:
        t = self.owner.pop(src, None)
        if t is not None:
            self.owner[dst] = t

    def negate(self, v: int) -> None:
        t = self.owner.get(v)
        if t is not None:
            self.owner[v] = (t[0], -t[1])

    def groups(self) -> Dict[int, List[Tuple[int, int]]]:
        """root -> list of (gate index, sign relative to the root)."""
        out: Dict[int, List[Tuple[int, int]]] = {}
        for g in self.parent:
            r, s = self.find(g)
            out.setdefault(r, []).append((g, s))
        for v in out.values():
            v.sort()
        return out


def _rotation_angle(g: Gate) -> Optional[Phase]:
    z = g.z_angle()
    if z is not None:
        return z
    return g.x_angle()


def phase_teleportation(c: Circuit) -> Circuit:
    """Merge non-Clifford phases that the ZX rewrite system can fuse.

    Toffolis are decomposed first.  The result has the same gates except
    that merged rotations are replaced by their combined angle (or dropped),
    so the T-count never increases.
    """
    from .heuristics import full_reduce

    c = decompose_toffoli(c)
    nc_gates = [i for i, g in enumerate(c.gates)
                if (a := _rotation_angle(g)) is not None and a.is_non_clifford()]
    if len(nc_gates) < 2:
        return c.copy()
    d = circuit_to_diagram(c)
    nc_spiders = sorted(v for v in d.spiders() if d.phase(v).is_non_clifford())
    if len(nc_spiders) != len(nc_gates):  # pragma: no cover - translation is one spider per rotation
        raise RuntimeError("rotation spiders do not match rotation gates")
    tracker = PhaseTracker()
    for v, gi in zip(nc_spiders, nc_gates):
        tracker.tag(v, gi)
    d.tracker = tracker
    g = to_graph_like(d)
    g.tracker = tracker
    full_reduce(g)

    new_angle: Dict[int, Optional[Phase]] = {}
    for root, members in tracker.groups().items():
        if len(members) == 1:
            continue
        total = Phase(0)
        for gi, s in members:
            a = _rotation_angle(c.gates[gi])
            total = total + a if s > 0 else total - a
        first = members[0][0]
        for gi, s in members:
            new_angle[gi] = None
        # the first gate of the group carries the sum, in its own sign
        s_first = dict(members)[first]
        new_angle[first] = total if s_first > 0 else -total

    out = Circuit(c.qubit_count, name=c.name)
    for i, gate in enumerate(c.gates):
        if i not in new_angle:
            out.append(gate)
            continue
        a = new_angle[i]
        if a is None:
            continue
        q = gate.qubits[0]
        rep = z_rotation(q, a) if gate.z_angle() is not None else x_rotation(q, a)
        if rep is not None:
            out.append(rep)
    return out
