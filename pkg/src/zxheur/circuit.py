"""Gate-level circuits over the Clifford+T vocabulary.

Includes an OpenQASM 2.0 reader/writer for a small subset of the standard
library, circuit adjoints, the standard Toffoli decomposition, gate metrics
and a commutation-aware cancellation pass.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .phase import Phase, PhaseLike

# Gates that are rotations about Z with a fixed angle.
Z_FAMILY = {"Z": Phase(1), "S": Phase(Fraction(1, 2)), "Sdg": Phase(Fraction(3, 2)),
            "T": Phase(Fraction(1, 4)), "Tdg": Phase(Fraction(7, 4))}
_Z_NAMES = {p: n for n, p in Z_FAMILY.items()}

ARITY = {"H": 1, "X": 1, "Z": 1, "S": 1, "Sdg": 1, "T": 1, "Tdg": 1, "RZ": 1, "RX": 1,
         "CNOT": 2, "CZ": 2, "CCX": 3, "CCZ": 3}
TWO_QUBIT = frozenset({"CNOT", "CZ"})
SELF_INVERSE = frozenset({"H", "X", "Z", "CNOT", "CZ", "CCX", "CCZ"})


class CircuitError(ValueError):
    pass


@dataclass(frozen=True)
class Gate:
    """One gate.  ``phase`` is only set for ``RZ``/``RX`` (units of pi)."""

    name: str
    qubits: Tuple[int, ...]
    phase: Optional[Phase] = None

    def __post_init__(self) -> None:
        if self.name not in ARITY:
            raise CircuitError(f"unknown gate {self.name!r}")
        if len(self.qubits) != ARITY[self.name]:
            raise CircuitError(f"{self.name} expects {ARITY[self.name]} operands, got {self.qubits}")
        if len(set(self.qubits)) != len(self.qubits):
            raise CircuitError(f"repeated operand in {self.name}{self.qubits}")
        if self.name in ("RZ", "RX"):
            if self.phase is None:
                raise CircuitError(f"{self.name} needs a phase")
            object.__setattr__(self, "phase", Phase(self.phase))
        elif self.phase is not None:
            raise CircuitError(f"{self.name} takes no phase")

    # classification -----------------------------------------------------
    def z_angle(self) -> Optional[Phase]:
        """Rotation angle if this is a single-qubit Z rotation, else None."""
        if self.name in Z_FAMILY:
            return Z_FAMILY[self.name]
        if self.name == "RZ":
            return self.phase
        return None

    def x_angle(self) -> Optional[Phase]:
        if self.name == "X":
            return Phase(1)
        if self.name == "RX":
            return self.phase
        return None

    def roles(self) -> Dict[int, str]:
        """Per-qubit action: 'Z' (Z-diagonal), 'X' (X-diagonal) or 'O' (other)."""
        n = self.name
        if self.z_angle() is not None:
            return {self.qubits[0]: "Z"}
        if self.x_angle() is not None:
            return {self.qubits[0]: "X"}
        if n == "H":
            return {self.qubits[0]: "O"}
        if n == "CNOT":
            return {self.qubits[0]: "Z", self.qubits[1]: "X"}
        if n == "CCX":
            return {self.qubits[0]: "Z", self.qubits[1]: "Z", self.qubits[2]: "X"}
        return {q: "Z" for q in self.qubits}  # CZ, CCZ

    def inverse(self) -> "Gate":
        if self.name in SELF_INVERSE:
            return self
        if self.name == "S":
            return Gate("Sdg", self.qubits)
        if self.name == "Sdg":
            return Gate("S", self.qubits)
        if self.name == "T":
            return Gate("Tdg", self.qubits)
        if self.name == "Tdg":
            return Gate("T", self.qubits)
        return Gate(self.name, self.qubits, -self.phase)

    def is_non_clifford(self) -> bool:
        a = self.z_angle()
        if a is None:
            a = self.x_angle()
        return a is not None and a.is_non_clifford()

    def __str__(self) -> str:
        args = ",".join(str(q) for q in self.qubits)
        if self.phase is not None:
            return f"{self.name}({self.phase})[{args}]"
        return f"{self.name}[{args}]"


def z_rotation(q: int, phase: PhaseLike) -> Optional[Gate]:
    """The named gate for a Z rotation (``None`` for the identity)."""
    p = Phase(phase)
    if p.is_zero():
        return None
    if p in _Z_NAMES:
        return Gate(_Z_NAMES[p], (q,))
    return Gate("RZ", (q,), p)


def x_rotation(q: int, phase: PhaseLike) -> Optional[Gate]:
    p = Phase(phase)
    if p.is_zero():
        return None
    if p == 1:
        return Gate("X", (q,))
    return Gate("RX", (q,), p)


@dataclass
class Circuit:
    qubit_count: int
    gates: List[Gate] = field(default_factory=list)
    name: str = ""

    def __post_init__(self) -> None:
        if self.qubit_count < 0:
            raise CircuitError("negative qubit count")
        for g in self.gates:
            self._check_gate(g)

    def _check_gate(self, g: Gate) -> None:
        if any(q < 0 or q >= self.qubit_count for q in g.qubits):
            raise CircuitError(f"gate {g} outside {self.qubit_count} qubits")

    def add(self, name: str, *qubits: int, phase: PhaseLike | None = None) -> "Circuit":
        g = Gate(name, tuple(qubits), None if phase is None else Phase(phase))
        self._check_gate(g)
        self.gates.append(g)
        return self

    def append(self, g: Gate) -> None:
        self._check_gate(g)
        self.gates.append(g)

    def extend(self, gates: Iterable[Gate]) -> None:
        for g in gates:
            self.append(g)

    def copy(self) -> "Circuit":
        return Circuit(self.qubit_count, list(self.gates), self.name)

    def __len__(self) -> int:
        return len(self.gates)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Circuit):
            return NotImplemented
        return self.qubit_count == other.qubit_count and self.gates == other.gates

    def __repr__(self) -> str:
        return f"Circuit({self.qubit_count} qubits, {len(self.gates)} gates{', ' + self.name if self.name else ''})"


# ----------------------------------------------------------------------
# OpenQASM


class QasmError(CircuitError):
    def __init__(self, message: str, line: int) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


_QASM_NAMES = {"h": "H", "x": "X", "z": "Z", "s": "S", "sdg": "Sdg", "t": "T", "tdg": "Tdg",
               "rz": "RZ", "rx": "RX", "cx": "CNOT", "cz": "CZ", "ccx": "CCX", "ccz": "CCZ"}
_EMIT_NAMES = {v: k for k, v in _QASM_NAMES.items()}
_ANGLE = re.compile(r"^(-)?(?:(\d+)\*)?pi(?:\*(\d+))?(?:/(\d+))?$")
_ARG = re.compile(r"^([A-Za-z_]\w*)\[(\d+)\]$")


def parse_angle(text: str) -> Phase:
    """Parse an angle written as a rational multiple of ``pi`` (or ``0``)."""
    s = text.replace(" ", "")
    while s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    if re.fullmatch(r"-?0+", s):
        return Phase(0)
    m = _ANGLE.match(s)
    if not m:
        m2 = re.fullmatch(r"(-)?\((\d+)\*pi\)/(\d+)", s)
        if not m2:
            raise ValueError(f"angle {text!r} is not a rational multiple of pi")
        sign, num, den = m2.groups()
        value = Fraction(int(num), int(den))
        return Phase(-value if sign else value)
    sign, k1, k2, den = m.groups()
    value = Fraction(int(k1 or 1) * int(k2 or 1), int(den or 1))
    return Phase(-value if sign else value)


def format_angle(p: Phase) -> str:
    v = p.signed()
    num, den = v.numerator, v.denominator
    sign = "-" if num < 0 else ""
    head = "pi" if abs(num) == 1 else f"{abs(num)}*pi"
    return f"{sign}{head}" if den == 1 else f"{sign}{head}/{den}"


def _strip_comments(text: str) -> str:
    return re.sub(r"//[^\n]*", "", text)


def parse_qasm(text: str, name: str = "") -> Circuit:
    """Read the supported OpenQASM 2.0 subset into a :class:`Circuit`."""
    text = _strip_comments(text)
    statements: List[Tuple[str, int]] = []
    line = 1
    buf = ""
    start = 1
    for ch in text:
        if ch == ";":
            statements.append((buf.strip(), start))
            buf = ""
        else:
            if not buf.strip():
                start = line
            buf += ch
        if ch == "\n":
            line += 1
    if buf.strip():
        raise QasmError("missing ';'", start)

    reg: Optional[str] = None
    nq = 0
    gates: List[Gate] = []
    for stmt, ln in statements:
        if not stmt:
            continue
        low = stmt.lower()
        if low.startswith("openqasm") or low.startswith("include") or low.startswith("barrier"):
            continue
        if low.startswith("qreg"):
            if reg is not None:
                raise QasmError("only one qreg is supported", ln)
            m = re.fullmatch(r"qreg\s+([A-Za-z_]\w*)\s*\[\s*(\d+)\s*\]", stmt)
            if not m:
                raise QasmError(f"bad qreg declaration {stmt!r}", ln)
            reg, nq = m.group(1), int(m.group(2))
            continue
        if low.startswith("creg") or low.startswith("measure"):
            raise QasmError("classical registers and measurement are not supported", ln)
        m = re.fullmatch(r"([A-Za-z_]\w*)\s*(?:\(([^)]*)\))?\s+(.+)", stmt, re.S)
        if not m:
            raise QasmError(f"cannot parse statement {stmt!r}", ln)
        gname, angle, args = m.group(1), m.group(2), m.group(3)
        if gname not in _QASM_NAMES:
            raise QasmError(f"unsupported gate {gname!r}", ln)
        if reg is None:
            raise QasmError("gate before qreg declaration", ln)
        qubits = []
        for a in args.split(","):
            am = _ARG.match(a.strip())
            if not am:
                raise QasmError(f"bad operand {a.strip()!r}", ln)
            if am.group(1) != reg:
                raise QasmError(f"unknown register {am.group(1)!r}", ln)
            q = int(am.group(2))
            if q >= nq:
                raise QasmError(f"qubit index {q} out of range", ln)
            qubits.append(q)
        kind = _QASM_NAMES[gname]
        phase = None
        if kind in ("RZ", "RX"):
            if angle is None:
                raise QasmError(f"{gname} needs an angle", ln)
            try:
                phase = parse_angle(angle)
            except ValueError as e:
                raise QasmError(str(e), ln) from None
        elif angle is not None:
            raise QasmError(f"{gname} takes no angle", ln)
        try:
            gates.append(Gate(kind, tuple(qubits), phase))
        except CircuitError as e:
            raise QasmError(str(e), ln) from None
    if reg is None:
        raise QasmError("no qreg declared", line)
    return Circuit(nq, gates, name)


def emit_qasm(c: Circuit) -> str:
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{c.qubit_count}];"]
    for g in c.gates:
        args = ",".join(f"q[{q}]" for q in g.qubits)
        name = _EMIT_NAMES[g.name]
        if g.phase is not None:
            lines.append(f"{name}({format_angle(g.phase)}) {args};")
        else:
            lines.append(f"{name} {args};")
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------
# transformations


def adjoint(c: Circuit) -> Circuit:
    return Circuit(c.qubit_count, [g.inverse() for g in reversed(c.gates)], c.name)


def _toffoli_gates(a: int, b: int, t: int) -> List[Gate]:
    return [Gate("H", (t,)), Gate("CNOT", (b, t)), Gate("Tdg", (t,)), Gate("CNOT", (a, t)),
            Gate("T", (t,)), Gate("CNOT", (b, t)), Gate("Tdg", (t,)), Gate("CNOT", (a, t)),
            Gate("T", (b,)), Gate("T", (t,)), Gate("H", (t,)), Gate("CNOT", (a, b)),
            Gate("T", (a,)), Gate("Tdg", (b,)), Gate("CNOT", (a, b))]


def decompose_toffoli(c: Circuit) -> Circuit:
    """Replace CCX/CCZ by the 7-T Clifford+T network (15 gates per CCX)."""
    out: List[Gate] = []
    for g in c.gates:
        if g.name == "CCX":
            out.extend(_toffoli_gates(*g.qubits))
        elif g.name == "CCZ":
            a, b, t = g.qubits
            out.append(Gate("H", (t,)))
            out.extend(_toffoli_gates(a, b, t))
            out.append(Gate("H", (t,)))
        else:
            out.append(g)
    return Circuit(c.qubit_count, out, c.name)


def metrics(c: Circuit) -> Tuple[int, int, int]:
    """(total gates, two-qubit gates, T-count)."""
    total = len(c.gates)
    two = sum(1 for g in c.gates if g.name in TWO_QUBIT)
    t = sum(1 for g in c.gates if g.is_non_clifford())
    return total, two, t


# ----------------------------------------------------------------------
# peephole optimisation


def commutes(a: Gate, b: Gate) -> bool:
    """Sufficient test: on every shared qubit both gates act diagonally in the same basis."""
    ra, rb = a.roles(), b.roles()
    for q, role in ra.items():
        other = rb.get(q)
        if other is None:
            continue
        if role == "O" or role != other:
            return False
    return True


def _combine(prev: Gate, new: Gate) -> Optional[List[Gate]]:
    """Replacement for the pair ``prev, new`` when they merge, else ``None``."""
    za, zb = prev.z_angle(), new.z_angle()
    if za is not None and zb is not None and prev.qubits == new.qubits:
        g = z_rotation(prev.qubits[0], za + zb)
        return [] if g is None else [g]
    xa, xb = prev.x_angle(), new.x_angle()
    if xa is not None and xb is not None and prev.qubits == new.qubits:
        g = x_rotation(prev.qubits[0], xa + xb)
        return [] if g is None else [g]
    if prev.name != new.name or prev.name not in SELF_INVERSE:
        return None
    if prev.name in ("CZ", "CCZ"):
        same = set(prev.qubits) == set(new.qubits)
    elif prev.name == "CCX":
        same = set(prev.qubits[:2]) == set(new.qubits[:2]) and prev.qubits[2] == new.qubits[2]
    else:
        same = prev.qubits == new.qubits
    return [] if same else None


def _cancel_pass(gates: Sequence[Gate], window: int) -> Tuple[List[Gate], bool]:
    out: List[Gate] = []
    changed = False
    for g in gates:
        placed = False
        j = len(out) - 1
        steps = 0
        while j >= 0 and steps < window:
            prev = out[j]
            if set(prev.qubits) & set(g.qubits):
                rep = _combine(prev, g)
                if rep is not None:
                    out[j:j + 1] = rep
                    placed = True
                    changed = True
                    break
                if not commutes(prev, g):
                    break
            j -= 1
            steps += 1
        if not placed:
            out.append(g)
    return out, changed


def push_hadamards(gates: Sequence[Gate]) -> List[Gate]:
    """Move Hadamards forward through the circuit as far as they go.

    A Hadamard waiting on a wire turns a following CZ into a CNOT targeting
    that wire (and a CNOT targeting it into a CZ), turns X into Z and swaps
    control and target of a CNOT when both wires wait.  Two waiting
    Hadamards on one wire cancel.  Anything else flushes the Hadamard.
    The gate count never grows.
    """
    out: List[Gate] = []
    pending: set = set()

    def flush(q: int) -> None:
        if q in pending:
            pending.discard(q)
            out.append(Gate("H", (q,)))

    for g in gates:
        n, qs = g.name, g.qubits
        if n == "H":
            pending ^= {qs[0]}
        elif n == "X" and qs[0] in pending:
            out.append(Gate("Z", qs))
        elif n == "Z" and qs[0] in pending:
            out.append(Gate("X", qs))
        elif n == "CZ":
            a, b = qs
            if a in pending and b in pending:
                flush(a)
            if b in pending:
                out.append(Gate("CNOT", (a, b)))
            elif a in pending:
                out.append(Gate("CNOT", (b, a)))
            else:
                out.append(g)
        elif n == "CNOT":
            c, t = qs
            if c in pending and t in pending:
                out.append(Gate("CNOT", (t, c)))
            elif t in pending:
                out.append(Gate("CZ", (c, t)))
            else:
                flush(c)
                out.append(g)
        else:
            for q in qs:
                flush(q)
            out.append(g)
    for q in sorted(pending):
        out.append(Gate("H", (q,)))
    return out


def peephole(c: Circuit, max_passes: int = 1000, window: int = 200) -> Circuit:
    """Cancel inverse pairs and fuse rotations, commuting gates past each other.

    Each gate is pushed backwards through gates it commutes with until it
    meets a gate it can merge with (inverse pair or same-axis rotation) or a
    gate it does not commute with.  Between cancellation rounds Hadamards
    are pushed forwards and backwards (see :func:`push_hadamards`).
    Repeated until the gate count stops falling.
    """
    gates = list(c.gates)
    for _ in range(max_passes):
        gates, changed = _cancel_pass(gates, window)
        if not changed:
            break
    for _ in range(max_passes):
        before = len(gates)
        trial = push_hadamards(gates)
        trial = list(reversed(push_hadamards(list(reversed(trial)))))
        for _ in range(max_passes):
            trial, changed = _cancel_pass(trial, window)
            if not changed:
                break
        if len(trial) >= before:
            break
        gates = trial
    trial = resynthesize_cnot_blocks(gates)
    if len(trial) < len(gates):
        for _ in range(max_passes):
            trial, changed = _cancel_pass(trial, window)
            if not changed:
                break
        gates = trial
    return Circuit(c.qubit_count, gates, c.name)


# ----------------------------------------------------------------------
# CNOT block resynthesis

CNOT_BLOCK_QUBITS = 4


@lru_cache(maxsize=None)
def _optimal_cnot_table(n: int) -> Dict[Tuple[int, ...], Tuple[Tuple[int, int], ...]]:
    """Shortest CNOT sequence for every invertible ``n``-bit linear map.

    Breadth-first search from the identity; a map is stored as the tuple of
    its rows (ints used as bit vectors) and CNOT(c, t) adds row c to row t.
    """
    start = tuple(1 << i for i in range(n))
    table: Dict[Tuple[int, ...], Tuple[Tuple[int, int], ...]] = {start: ()}
    frontier = [start]
    moves = [(c, t) for c in range(n) for t in range(n) if c != t]
    while frontier:
        nxt = []
        for rows in frontier:
            seq = table[rows]
            for c, t in moves:
                new = list(rows)
                new[t] ^= new[c]
                key = tuple(new)
                if key not in table:
                    table[key] = seq + ((c, t),)
                    nxt.append(key)
        frontier = nxt
    return table


def resynthesize_cnot_blocks(gates: Sequence[Gate], max_qubits: int = CNOT_BLOCK_QUBITS) -> List[Gate]:
    """Replace runs of CNOTs on at most ``max_qubits`` wires by a shortest
    equivalent CNOT sequence.

    A run may step over gates on other wires, as long as no later CNOT of
    the run touches a wire used by a skipped gate.  The replacement sits
    where the run started; a run is only replaced when it gets shorter.
    """
    gates = list(gates)
    out: List[Gate] = []
    used = [False] * len(gates)
    for i, g in enumerate(gates):
        if used[i]:
            continue
        if g.name != "CNOT":
            out.append(g)
            continue
        block, support, blocked = [i], set(g.qubits), set()
        for j in range(i + 1, len(gates)):
            h = gates[j]
            if used[j]:
                continue
            qs = set(h.qubits)
            if h.name == "CNOT" and not qs & blocked and len(support | qs) <= max_qubits:
                block.append(j)
                support |= qs
                continue
            if qs & support:
                break
            blocked |= qs
        wires = sorted(support)
        local = {q: k for k, q in enumerate(wires)}
        rows = [1 << k for k in range(len(wires))]
        for j in block:
            c, t = gates[j].qubits
            rows[local[t]] ^= rows[local[c]]
        best = _optimal_cnot_table(len(wires))[tuple(rows)]
        if len(best) < len(block):
            out.extend(Gate("CNOT", (wires[c], wires[t])) for c, t in best)
            for j in block:
                used[j] = True
        else:
            out.append(g)
    return out
