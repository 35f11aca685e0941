"""Generalised flow on graph-like diagrams.

The diagram is read as a labelled open graph: every spider is a vertex,
except the leaves of phase gadgets, which are folded into their hub (the
hub is then measured in the YZ or XZ plane).  Spiders next to an input
boundary form the input set, those next to an output boundary form the
output set.

:func:`find_gflow` peels layers backwards from the outputs, solving one
GF(2) linear system per layer, and returns the maximally delayed gflow.
Rows and correction candidates are Python ints used as bit vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from .graph import Diagram, MeasurementPlane, classify_plane, gadget_hub

XY, XZ, YZ = MeasurementPlane.XY, MeasurementPlane.XZ, MeasurementPlane.YZ


@dataclass
class GFlow:
    """Correction sets and layer order.

    ``order`` grows towards the outputs: every vertex in ``correction[u]``
    or in its odd neighbourhood (other than ``u``) has a larger order than
    ``u``.  Output vertices carry the largest order and no correction set.
    """

    correction: Dict[int, FrozenSet[int]]
    order: Dict[int, int]
    planes: Dict[int, MeasurementPlane]

    def depth(self, v: int) -> int:
        """Distance (in layers) from the outputs."""
        top = max(self.order.values(), default=0)
        return top - self.order[v]


@dataclass
class OpenGraph:
    vertices: List[int]
    adj: Dict[int, Set[int]]
    inputs: Set[int]
    outputs: Set[int]
    planes: Dict[int, MeasurementPlane]


def open_graph(d: Diagram) -> OpenGraph:
    """The labelled open graph behind a graph-like diagram.

    Components that touch no boundary (scalars) are dropped.
    """
    leaves = set()
    for v in d.spiders():
        h = gadget_hub(d, v)
        if h is not None and classify_plane(d, h) is not XY:
            leaves.add(v)
    # keep only spiders connected to some boundary
    seen: Set[int] = set()
    stack = [b for b in d.inputs + d.outputs]
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        stack.extend(w for w in d.adjacency(v) if w not in seen)
    verts = [v for v in d.spiders() if v in seen and v not in leaves]
    vset = set(verts)
    adj = {v: {w for w in d.adjacency(v) if w in vset} for v in verts}
    ins = {v for v in verts if any(d.is_input(b) for b in d.adjacency(v))}
    outs = {v for v in verts if any(d.is_output(b) for b in d.adjacency(v))}
    planes = {v: classify_plane(d, v) for v in verts}
    return OpenGraph(verts, adj, ins, outs, planes)


def _odd_neighbourhood(adj: Dict[int, Set[int]], s) -> Set[int]:
    odd: Set[int] = set()
    for v in s:
        odd ^= adj[v]
    return odd


def find_gflow(d: Diagram) -> Optional[GFlow]:
    """Maximally delayed gflow of ``d``, or ``None`` when none exists."""
    og = open_graph(d)
    adj, planes = og.adj, og.planes
    processed: Set[int] = set(og.outputs)
    unprocessed: Set[int] = set(og.vertices) - processed
    correction: Dict[int, FrozenSet[int]] = {}
    layer: Dict[int, int] = {v: 0 for v in og.outputs}
    k = 0
    while unprocessed:
        k += 1
        cols = sorted(v for v in processed if v not in og.inputs and adj[v] & unprocessed)
        rows = sorted({w for c in cols for w in adj[c] if w in unprocessed})
        row_index = {r: i for i, r in enumerate(rows)}
        col_index = {c: j for j, c in enumerate(cols)}
        mat = []
        for r in rows:
            bits = 0
            for c in adj[r]:
                j = col_index.get(c)
                if j is not None:
                    bits |= 1 << j
            mat.append(bits)
        trans = [1 << i for i in range(len(rows))]
        pivots: List[int] = []
        rank = 0
        for j in range(len(cols)):
            bit = 1 << j
            p = next((i for i in range(rank, len(rows)) if mat[i] & bit), None)
            if p is None:
                continue
            mat[rank], mat[p] = mat[p], mat[rank]
            trans[rank], trans[p] = trans[p], trans[rank]
            for i in range(len(rows)):
                if i != rank and mat[i] & bit:
                    mat[i] ^= mat[rank]
                    trans[i] ^= trans[rank]
            pivots.append(j)
            rank += 1

        # null[r]: left-kernel rows containing row r (consistency test);
        # pick[r]: pivot rows containing row r (solution read-out)
        null = [0] * len(rows)
        pick = [0] * len(rows)
        for i in range(len(rows)):
            t = trans[i]
            while t:
                low = t & -t
                r = low.bit_length() - 1
                if i < rank:
                    pick[r] |= 1 << i
                else:
                    null[r] |= 1 << i
                t ^= low

        solved: Dict[int, FrozenSet[int]] = {}
        for u in sorted(unprocessed):
            plane = planes[u]
            if plane is XY:
                target = {u}
                base: Set[int] = set()
            elif plane is XZ:
                target = {u} ^ (adj[u] & unprocessed)
                base = {u}
            else:
                target = adj[u] & unprocessed
                base = {u}
            if base and u in og.inputs:
                continue
            if any(t not in row_index for t in target):
                continue
            bad = 0
            chosen = 0
            for t in target:
                bad ^= null[row_index[t]]
                chosen ^= pick[row_index[t]]
            if bad:
                continue
            sol = set()
            while chosen:
                low = chosen & -chosen
                sol.add(cols[pivots[low.bit_length() - 1]])
                chosen ^= low
            solved[u] = frozenset(sol | base)
        if not solved:
            return None
        for u, g in solved.items():
            correction[u] = g
            layer[u] = k
        processed |= set(solved)
        unprocessed -= set(solved)
    top = max(layer.values(), default=0)
    order = {v: top - l for v, l in layer.items()}
    return GFlow(correction, order, planes)


def gflow_violations(d: Diagram, g: GFlow) -> List[str]:
    """Independent check of the gflow conditions; returns the failures."""
    og = open_graph(d)
    errs = []
    for v in og.vertices:
        if v not in g.order:
            errs.append(f"vertex {v} has no order")
    for u in og.vertices:
        if u in og.outputs:
            continue
        if u not in g.correction:
            errs.append(f"non-output {u} has no correction set")
            continue
        cs = g.correction[u]
        if cs & og.inputs:
            errs.append(f"correction set of {u} contains inputs")
        odd = _odd_neighbourhood(og.adj, cs)
        plane = og.planes[u]
        if plane is XY and (u in cs or u not in odd):
            errs.append(f"XY condition fails at {u}")
        if plane is XZ and (u not in cs or u not in odd):
            errs.append(f"XZ condition fails at {u}")
        if plane is YZ and (u not in cs or u in odd):
            errs.append(f"YZ condition fails at {u}")
        for w in (set(cs) | odd) - {u}:
            if w not in g.order or not g.order[u] < g.order[w]:
                errs.append(f"order violated between {u} and {w}")
    return errs


def same_extraction_qubit(d: Diagram, g: GFlow, u: int, w: int) -> bool:
    """Whether ``u`` and ``w`` lie on one extraction line of the gflow.

    True when one of them is the sole correction of the other, i.e. one is
    the direct successor of the other on the path to a single output.
    """
    for v in (u, w):
        if v not in g.order:
            raise KeyError(f"vertex {v} is not part of the gflow")
    return g.correction.get(u) == frozenset({w}) or g.correction.get(w) == frozenset({u})
