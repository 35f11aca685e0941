"""Dense semantics oracle for small circuits and diagrams.

``circuit_matrix`` multiplies gate matrices; ``diagram_tensor`` contracts
the spider network by variable elimination (Z spiders are copy tensors,
so each one is a single binary variable).  Both are exact up to a global
scalar, which :func:`proportional` factors out.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .circuit import Circuit, Gate, adjoint, peephole
from .graph import Diagram, EdgeKind, VertexKind

MAX_QUBITS = 10
MAX_WIDTH = 22

_SQ2 = 1 / np.sqrt(2)
_HMAT = np.array([[1, 1], [1, -1]], dtype=complex) * _SQ2
_XMAT = np.array([[0, 1], [1, 0]], dtype=complex)


def _zrot(p) -> np.ndarray:
    return np.diag([1, np.exp(1j * np.pi * float(p))]).astype(complex)


def gate_matrix(g: Gate) -> np.ndarray:
    """Unitary of ``g`` on its own operands (first operand most significant)."""
    z = g.z_angle()
    if z is not None:
        return _zrot(z.fraction)
    if g.name == "RX":
        return _HMAT @ _zrot(g.phase.fraction) @ _HMAT
    if g.name == "X":
        return _XMAT.copy()
    if g.name == "H":
        return _HMAT.copy()
    if g.name == "CNOT":
        m = np.eye(4, dtype=complex)
        m[[2, 3]] = m[[3, 2]]
        return m
    if g.name == "CZ":
        return np.diag([1, 1, 1, -1]).astype(complex)
    if g.name == "CCX":
        m = np.eye(8, dtype=complex)
        m[[6, 7]] = m[[7, 6]]
        return m
    if g.name == "CCZ":
        return np.diag([1] * 7 + [-1]).astype(complex)
    raise ValueError(f"no matrix for {g}")


def circuit_matrix(c: Circuit, max_qubits: int = MAX_QUBITS) -> np.ndarray:
    """The 2^n x 2^n unitary of ``c`` (qubit 0 is the most significant bit)."""
    n = c.qubit_count
    if n > max_qubits:
        raise ValueError(f"{n} qubits exceeds the cap of {max_qubits}")
    dim = 2 ** n
    state = np.eye(dim, dtype=complex).reshape((2,) * n + (dim,))
    for g in c.gates:
        k = len(g.qubits)
        u = gate_matrix(g).reshape((2,) * (2 * k))
        state = np.tensordot(u, state, axes=(list(range(k, 2 * k)), list(g.qubits)))
        state = np.moveaxis(state, list(range(k)), list(g.qubits))
    return state.reshape(dim, dim)


# ----------------------------------------------------------------------
# diagram contraction

_HFACTOR = np.array([[1, 1], [1, -1]], dtype=complex)


class _UnionFind:
    def __init__(self) -> None:
        self.parent: Dict[int, int] = {}

    def find(self, x: int) -> int:
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def _letters(n: int) -> str:
    import string
    alphabet = string.ascii_letters
    if n > len(alphabet):
        raise ValueError("contraction too wide")
    return alphabet[:n]


def _einsum(factors: List[Tuple[Tuple[int, ...], np.ndarray]], out: Sequence[int]) -> np.ndarray:
    vars_ = sorted({v for vs, _ in factors for v in vs} | set(out))
    letter = dict(zip(vars_, _letters(len(vars_))))
    spec = ",".join("".join(letter[v] for v in vs) for vs, _ in factors)
    spec += "->" + "".join(letter[v] for v in out)
    return np.einsum(spec, *[t for _, t in factors])


def _multiply(factors: List[Tuple[Tuple[int, ...], np.ndarray]], keep: Sequence[int]) -> Tuple[Tuple[int, ...], np.ndarray]:
    """Product of ``factors`` with every variable outside ``keep`` summed out."""
    keep_set = set(keep)
    acc_vars: Tuple[int, ...] = ()
    acc = np.ones((), dtype=complex)
    remaining = list(factors)
    for i, (vs, t) in enumerate(remaining):
        later = {v for ws, _ in remaining[i + 1:] for v in ws}
        union = list(dict.fromkeys(acc_vars + vs))
        out = tuple(v for v in union if v in keep_set or v in later)
        acc = _einsum([(acc_vars, acc), (vs, t)], out)
        acc_vars = out
    final = tuple(sorted(v for v in acc_vars if v in keep_set))
    return final, _einsum([(acc_vars, acc)], final)


def contract(factors: List[Tuple[Tuple[int, ...], np.ndarray]], open_vars: Sequence[int],
             max_width: int = MAX_WIDTH) -> np.ndarray:
    """Sum out every variable not in ``open_vars`` (greedy min-size order).

    Returns a tensor with one axis per entry of ``open_vars`` in that order
    (repeated variables give diagonal embeddings).
    """
    open_set = set(open_vars)
    factors = [(tuple(vs), t) for vs, t in factors]
    scalar = 1.0 + 0j
    todo = {v for vs, _ in factors for v in vs} - open_set
    while todo:
        best, best_cost = None, None
        for v in todo:
            touched = set()
            for vs, _ in factors:
                if v in vs:
                    touched.update(vs)
            cost = len(touched)
            if best_cost is None or cost < best_cost:
                best, best_cost = v, cost
        if best_cost - 1 > max_width:
            raise ValueError("contraction width cap exceeded")
        involved = [f for f in factors if best in f[0]]
        rest = [f for f in factors if best not in f[0]]
        keep = {x for vs, _ in involved for x in vs} - {best}
        out_vars, t = _multiply(involved, keep)
        todo.discard(best)
        if out_vars:
            rest.append((out_vars, t))
        else:
            scalar *= complex(t)
        factors = rest
        # normalise occasionally to avoid overflow in long contractions
        if factors:
            vs, t = factors[-1]
            m = np.max(np.abs(t))
            if m > 1e50 or (0 < m < 1e-50):
                factors[-1] = (vs, t / m)
    uniq = list(dict.fromkeys(open_vars))
    if factors:
        vs_all, t = _multiply(factors + [((v,), np.ones(2, dtype=complex)) for v in uniq], uniq)
        t = np.transpose(t, [vs_all.index(v) for v in uniq])
    else:
        t = np.ones((2,) * len(uniq), dtype=complex)
    t = t * scalar
    if len(uniq) == len(open_vars):
        return t
    idx = np.indices((2,) * len(open_vars))
    first = {v: open_vars.index(v) for v in uniq}
    out = t[tuple(idx[first[v]] for v in uniq)]
    for pos, v in enumerate(open_vars):
        if pos != first[v]:
            out = out * (idx[pos] == idx[first[v]])
    return out


def diagram_tensor(d: Diagram, max_width: int = MAX_WIDTH, max_boundary: int = 12) -> np.ndarray:
    """Matrix of ``d`` with shape (2^outputs, 2^inputs), up to a scalar."""
    ins, outs = d.inputs, d.outputs
    if len(ins) + len(outs) > max_boundary:
        raise ValueError("too many boundary wires for dense evaluation")
    uf = _UnionFind()
    is_x = {v: d.kind(v) is VertexKind.X for v in d.vertices()}
    h_edges = []
    for u, v, k in d.edges():
        hadamard = (k is EdgeKind.HADAMARD) ^ is_x[u] ^ is_x[v]
        if hadamard:
            h_edges.append((u, v))
        else:
            uf.union(u, v)
    factors: List[Tuple[Tuple[int, ...], np.ndarray]] = []
    for v in d.vertices():
        uf.find(v)
        if d.is_spider(v) and not d.phase(v).is_zero():
            factors.append(((uf.find(v),), np.array([1, np.exp(1j * np.pi * float(d.phase(v)))])))
    for u, v in h_edges:
        a, b = uf.find(u), uf.find(v)
        if a == b:
            factors.append(((a,), np.array([1, -1], dtype=complex)))
        else:
            factors.append(((a, b), _HFACTOR))
    for v in d.vertices():
        r = uf.find(v)
        factors.append(((r,), np.ones(2, dtype=complex)))
    open_vars = [uf.find(o) for o in outs] + [uf.find(i) for i in ins]
    t = contract(factors, open_vars, max_width)
    return t.reshape(2 ** len(outs), 2 ** len(ins))


# ----------------------------------------------------------------------
# comparison and verdicts


def proportional(a: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> bool:
    """True iff ``a`` equals ``lam * b`` for some nonzero ``lam``.

    Both sides are first scaled so their largest entry has modulus one; the
    test then uses the max-norm with tolerance ``tol``.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    bmax = np.max(np.abs(b)) if b.size else 0.0
    if bmax == 0:
        raise ValueError("reference matrix is identically zero")
    amax = np.max(np.abs(a))
    if amax == 0:
        return False
    a = a / amax
    b = b / bmax
    idx = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    lam = a[idx] / b[idx]
    if abs(lam) < tol:
        return False
    return bool(np.max(np.abs(a - lam * b)) <= tol)


@dataclass(frozen=True)
class Verdict:
    status: str  # "Proven" | "Disproven" | "Unknown"
    reason: str = ""

    @property
    def ok(self) -> bool:
        return self.status == "Proven"

    def __str__(self) -> str:
        return f"{self.status} ({self.reason})" if self.reason else self.status


PROVEN, DISPROVEN, UNKNOWN = "Proven", "Disproven", "Unknown"


def zx_identity_check(original: Circuit, optimized: Circuit, max_rounds: int = 4) -> bool:
    """Reduce ``optimized . adjoint(original)`` with ZX rewriting; True if it
    collapses to the empty circuit."""
    from .convert import circuit_to_diagram, to_graph_like
    from .extract import extract_circuit
    from .graph import gadget_hub, gadget_leaf
    from .heuristics import full_reduce
    from .rules import gadgetize

    combined = Circuit(original.qubit_count, adjoint(original).gates + optimized.gates)
    d = to_graph_like(circuit_to_diagram(combined))
    full_reduce(d)
    for _ in range(max_rounds):
        # non-Clifford spiders outside gadgets block the Clifford rules;
        # moving their phases into gadgets lets the remaining spiders go
        stuck = [v for v in d.spiders() if d.phase(v).is_non_clifford()
                 and gadget_hub(d, v) is None and gadget_leaf(d, v) is None]
        if not stuck:
            break
        for v in stuck:
            gadgetize(d, v)
        full_reduce(d)
    out = peephole(extract_circuit(d))
    return len(out.gates) == 0


def check_identity_reduction(original: Circuit, optimized: Circuit, mode: str = "both",
                             tensor_cap: int = MAX_QUBITS) -> Verdict:
    """Decide whether two circuits implement the same unitary (up to phase).

    ``mode`` is one of ``zx``, ``tensor``, ``both`` or ``off``.  The ZX route
    composes ``optimized`` with the adjoint of ``original`` and checks that
    the simplified, re-extracted result is empty; otherwise (or in tensor
    mode) dense matrices are compared when the width allows it.
    """
    if mode == "off":
        return Verdict(UNKNOWN, "verification disabled")
    if original.qubit_count != optimized.qubit_count:
        return Verdict(DISPROVEN, "qubit counts differ")
    if mode in ("zx", "both"):
        if zx_identity_check(original, optimized):
            return Verdict(PROVEN, "reduced to identity")
    if mode in ("tensor", "both") and original.qubit_count <= tensor_cap:
        same = proportional(circuit_matrix(optimized), circuit_matrix(original))
        return Verdict(PROVEN if same else DISPROVEN, "dense matrices compared")
    return Verdict(UNKNOWN, "identity reduction inconclusive and width above tensor cap")
