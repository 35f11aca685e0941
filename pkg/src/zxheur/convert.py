"""Circuit to diagram translation and the graph-like normal form."""

from __future__ import annotations

from typing import List

from .circuit import Circuit, decompose_toffoli
from .graph import Diagram, DiagramError, EdgeKind, VertexKind

H = EdgeKind.HADAMARD
PLAIN = EdgeKind.PLAIN


def circuit_to_diagram(c: Circuit) -> Diagram:
    """Translate gate by gate: phase gates become spiders, H gates become
    Hadamard wires, CNOT becomes a Z/X spider pair and CZ a Hadamard-linked
    pair of Z spiders.  Toffolis are decomposed first."""
    c = decompose_toffoli(c)
    n = c.qubit_count
    d = Diagram()
    inputs = [d.add_vertex(VertexKind.BOUNDARY, qubit=q, row=0) for q in range(n)]
    last = list(inputs)
    pending_h = [False] * n
    rows = [1] * n

    def attach(q: int, kind: VertexKind, phase=0) -> int:
        v = d.add_vertex(kind, phase, qubit=q, row=rows[q])
        rows[q] += 1
        d.add_edge(last[q], v, H if pending_h[q] else PLAIN)
        pending_h[q] = False
        last[q] = v
        return v

    for g in c.gates:
        if g.name == "H":
            pending_h[g.qubits[0]] = not pending_h[g.qubits[0]]
        elif g.z_angle() is not None:
            attach(g.qubits[0], VertexKind.Z, g.z_angle())
        elif g.x_angle() is not None:
            attach(g.qubits[0], VertexKind.X, g.x_angle())
        elif g.name in ("CNOT", "CZ"):
            a, b = g.qubits
            r = max(rows[a], rows[b])
            rows[a] = rows[b] = r
            va = attach(a, VertexKind.Z)
            vb = attach(b, VertexKind.X if g.name == "CNOT" else VertexKind.Z)
            d.add_edge(va, vb, PLAIN if g.name == "CNOT" else H)
        else:  # pragma: no cover - Toffolis were decomposed above
            raise DiagramError(f"cannot translate {g}")

    end = max(rows, default=1)
    outputs = []
    for q in range(n):
        o = d.add_vertex(VertexKind.BOUNDARY, qubit=q, row=end)
        d.add_edge(last[q], o, H if pending_h[q] else PLAIN)
        outputs.append(o)
    d.set_inputs(inputs)
    d.set_outputs(outputs)
    return d


def _fuse(d: Diagram, keep: int, gone: int) -> None:
    from .rules import apply_fusion

    apply_fusion(d, keep, gone)


def fuse_plain_edges(d: Diagram) -> int:
    """Fuse every plain spider-spider edge (same colour), lowest ids first."""
    count = 0
    changed = True
    while changed:
        changed = False
        for u in sorted(d.spiders()):
            if not d.has_vertex(u):
                continue
            while True:
                cands = sorted(w for w, k in d.adjacency(u).items()
                               if k is PLAIN and d.is_spider(w) and d.kind(w) is d.kind(u))
                if not cands:
                    break
                _fuse(d, u, cands[0])
                count += 1
                changed = True
    return count


def _insert_identity_chain(d: Diagram, b: int, s: int) -> None:
    """Replace the wire b-s by b -plain- z1 -H- z2 -H- s (same semantics)."""
    kind = d.edge_kind(b, s)
    q, r = d.qubit(b), d.row(b)
    d.remove_edge(b, s)
    if kind is H:
        z = d.add_vertex(VertexKind.Z, 0, q, r)
        d.add_edge(b, z, PLAIN)
        d.add_edge(z, s, H)
        return
    z1 = d.add_vertex(VertexKind.Z, 0, q, r)
    z2 = d.add_vertex(VertexKind.Z, 0, q, r)
    d.add_edge(b, z1, PLAIN)
    d.add_edge(z1, z2, H)
    d.add_edge(z2, s, H)


def to_graph_like(d: Diagram, inplace: bool = False) -> Diagram:
    """Bring a diagram into graph-like form.

    X spiders are colour-changed, plain wires between spiders are fused,
    and identity spiders are inserted so that every boundary meets a single
    spider through a plain wire and no spider touches two inputs or two
    outputs.
    """
    g = d if inplace else d.copy()
    if not inplace:
        g.tracker = d.tracker
    for v in g.spiders():
        if g.kind(v) is VertexKind.X:
            g.set_kind(v, VertexKind.Z)
            for w in list(g.adjacency(v)):
                g.set_edge_kind(v, w, g.edge_kind(v, w).toggled())
    fuse_plain_edges(g)

    for b in g.inputs + g.outputs:
        (s,) = g.adjacency(b)
        kind = g.edge_kind(b, s)
        if g.is_boundary(s):
            if kind is H and b < s:
                q, r = g.qubit(b), g.row(b)
                g.remove_edge(b, s)
                z1 = g.add_vertex(VertexKind.Z, 0, q, r)
                z2 = g.add_vertex(VertexKind.Z, 0, q, r)
                g.add_edge(b, z1, PLAIN)
                g.add_edge(z1, z2, H)
                g.add_edge(z2, s, PLAIN)
        elif kind is H:
            _insert_identity_chain(g, b, s)

    for s in g.spiders():
        ins = [b for b in g.adjacency(s) if g.is_input(b)]
        outs = [b for b in g.adjacency(s) if g.is_output(b)]
        for b in ins[1:] + outs[1:]:
            _insert_identity_chain(g, b, s)
    return g


def graph_like_violations(d: Diagram) -> List[str]:
    """Reasons why ``d`` is not graph-like (empty list if it is)."""
    errs = []
    io = set(d.inputs) | set(d.outputs)
    for v in d.vertices():
        if d.is_boundary(v):
            if v not in io:
                errs.append(f"boundary {v} is neither input nor output")
            if d.degree(v) != 1:
                errs.append(f"boundary {v} has degree {d.degree(v)}")
            for w, k in d.adjacency(v).items():
                if k is not PLAIN:
                    errs.append(f"boundary {v} attached by a Hadamard wire")
            continue
        if d.kind(v) is not VertexKind.Z:
            errs.append(f"spider {v} is not a Z spider")
        nin = nout = 0
        for w, k in d.adjacency(v).items():
            if d.is_boundary(w):
                nin += d.is_input(w)
                nout += d.is_output(w)
            elif k is not H:
                errs.append(f"plain wire between spiders {v} and {w}")
        if nin > 1 or nout > 1:
            errs.append(f"spider {v} touches {nin} inputs and {nout} outputs")
    return errs


def is_graph_like(d: Diagram) -> bool:
    return not graph_like_violations(d)


def wire_count(d: Diagram) -> int:
    """Number of Hadamard wires between spiders of a graph-like diagram."""
    n = 0
    for u, v, k in d.edges():
        if d.is_boundary(u) or d.is_boundary(v):
            continue
        if k is not H or d.kind(u) is not VertexKind.Z or d.kind(v) is not VertexKind.Z:
            raise DiagramError("wire_count needs a graph-like diagram")
        n += 1
    return n
