"""
Gate-level circuit representation.

Contains:
    - GateKind: supported gate kinds (mnemonic is the enum value)
    - Gate / Circuit: immutable values, wire 0 is the top wire
    - count_gates(): (CZ, rotation) cost of a lowered circuit under the box rule
    - emit_text() / parse_text(): line-oriented interchange format
    - emit_qasm(): QASM-flavoured dump, output only
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

ANGLE_DECIMALS = 12
ROTATIONS_PER_BOX = 3


class GateKind(str, Enum):
    RX = "rx"
    RY = "ry"
    RZ = "rz"
    H = "h"
    T = "t"
    TDG = "tdg"
    X = "x"
    Y = "y"
    Z = "z"
    CZ = "cz"
    CNOT = "cnot"
    CKZ = "ckz"
    CKNOT = "cknot"

    @property
    def is_rotation(self) -> bool:
        return self in _ROTATIONS

    @property
    def is_single_qubit(self) -> bool:
        return self in _SINGLE

    @property
    def is_diagonal(self) -> bool:
        return self in _DIAGONAL

    @property
    def is_symmetric(self) -> bool:
        """Whether the gate is invariant under any permutation of its wires."""
        return self in (GateKind.CZ, GateKind.CKZ)


_ROTATIONS = frozenset({GateKind.RX, GateKind.RY, GateKind.RZ})
_SINGLE = frozenset({GateKind.RX, GateKind.RY, GateKind.RZ, GateKind.H, GateKind.T,
                     GateKind.TDG, GateKind.X, GateKind.Y, GateKind.Z})
_DIAGONAL = frozenset({GateKind.RZ, GateKind.T, GateKind.TDG, GateKind.Z,
                       GateKind.CZ, GateKind.CKZ})
_LOWERED = _SINGLE | {GateKind.CZ}


class CircuitError(ValueError):
    pass


class NotLoweredError(CircuitError):
    pass


class ParseError(CircuitError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


@dataclass(frozen=True, eq=False)
class Gate:
    """A gate applied to ``qubits``; controls precede the target.

    Symmetric kinds (CZ, C^kZ) store their wires sorted, so two gates on the
    same wire set compare equal regardless of the order they were given in.
    """
    kind: GateKind
    qubits: tuple[int, ...]
    angle: float | None = None

    def __post_init__(self):
        kind = GateKind(self.kind)
        qubits = tuple(int(q) for q in self.qubits)
        if len(set(qubits)) != len(qubits):
            raise CircuitError(f"repeated wire in {kind.value} {qubits}")
        if any(q < 0 for q in qubits):
            raise CircuitError(f"negative wire in {kind.value} {qubits}")
        if kind.is_single_qubit and len(qubits) != 1:
            raise CircuitError(f"{kind.value} acts on one wire, got {len(qubits)}")
        if kind in (GateKind.CZ, GateKind.CNOT) and len(qubits) != 2:
            raise CircuitError(f"{kind.value} acts on two wires, got {len(qubits)}")
        if kind in (GateKind.CKZ, GateKind.CKNOT) and len(qubits) < 1:
            raise CircuitError(f"{kind.value} needs at least one wire")
        if kind.is_rotation != (self.angle is not None):
            raise CircuitError(f"angle must be given iff {kind.value} is a rotation")
        if kind.is_symmetric:
            qubits = tuple(sorted(qubits))
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "qubits", qubits)
        if self.angle is not None:
            object.__setattr__(self, "angle", float(self.angle))

    def _key(self):
        # C^kZ with k = 0 or 1 is the same operator as Z / CZ
        kind = self.kind
        if kind is GateKind.CKZ and len(self.qubits) <= 2:
            kind = GateKind.Z if len(self.qubits) == 1 else GateKind.CZ
        if kind is GateKind.CKNOT and len(self.qubits) <= 2:
            kind = GateKind.X if len(self.qubits) == 1 else GateKind.CNOT
        angle = None if self.angle is None else round(self.angle, ANGLE_DECIMALS) + 0.0
        return kind, self.qubits, angle

    def __eq__(self, other):
        if not isinstance(other, Gate):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.angle is None:
            return f"Gate({self.kind.value}, {self.qubits})"
        return f"Gate({self.kind.value}, {self.qubits}, {self.angle:.6g})"

    @property
    def target(self) -> int:
        return self.qubits[-1]

    @property
    def controls(self) -> tuple[int, ...]:
        return self.qubits[:-1]

    def matrix(self) -> np.ndarray:
        """2x2 matrix of a single-qubit gate."""
        if not self.kind.is_single_qubit:
            raise CircuitError(f"{self.kind.value} is not a single-qubit gate")
        return single_qubit_matrix(self.kind, self.angle)


def single_qubit_matrix(kind: GateKind, angle: float | None = None) -> np.ndarray:
    if kind is GateKind.RX:
        c, s = math.cos(angle / 2), math.sin(angle / 2)
        return np.array([[c, -1j * s], [-1j * s, c]])
    if kind is GateKind.RY:
        c, s = math.cos(angle / 2), math.sin(angle / 2)
        return np.array([[c, -s], [s, c]], dtype=complex)
    if kind is GateKind.RZ:
        return np.diag([np.exp(-0.5j * angle), np.exp(0.5j * angle)])
    if kind is GateKind.H:
        return np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
    if kind is GateKind.T:
        return np.diag([np.exp(1j * math.pi / 8), np.exp(-1j * math.pi / 8)])
    if kind is GateKind.TDG:
        return np.diag([np.exp(-1j * math.pi / 8), np.exp(1j * math.pi / 8)])
    if kind is GateKind.X:
        return np.array([[0, 1], [1, 0]], dtype=complex)
    if kind is GateKind.Y:
        return np.array([[0, -1j], [1j, 0]])
    if kind is GateKind.Z:
        return np.diag([1, -1]).astype(complex)
    raise CircuitError(f"{kind.value} is not a single-qubit gate")


# Convenience constructors
def rx(q, a): return Gate(GateKind.RX, (q,), a)
def ry(q, a): return Gate(GateKind.RY, (q,), a)
def rz(q, a): return Gate(GateKind.RZ, (q,), a)
def h(q): return Gate(GateKind.H, (q,))
def t(q): return Gate(GateKind.T, (q,))
def tdg(q): return Gate(GateKind.TDG, (q,))
def x(q): return Gate(GateKind.X, (q,))
def z(q): return Gate(GateKind.Z, (q,))
def cz(a, b): return Gate(GateKind.CZ, (a, b))
def cnot(c, tgt): return Gate(GateKind.CNOT, (c, tgt))


def ckz(wires) -> Gate:
    """C^kZ on ``wires`` (k = len(wires) - 1), using Z / CZ for k = 0, 1."""
    wires = tuple(wires)
    if len(wires) == 1:
        return z(wires[0])
    if len(wires) == 2:
        return cz(*wires)
    return Gate(GateKind.CKZ, wires)


def cknot(controls, target) -> Gate:
    controls = tuple(controls)
    if not controls:
        return x(target)
    if len(controls) == 1:
        return cnot(controls[0], target)
    return Gate(GateKind.CKNOT, controls + (target,))


@dataclass(frozen=True)
class Circuit:
    width: int
    gates: tuple[Gate, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.width < 1:
            raise CircuitError(f"circuit width must be >= 1, got {self.width}")
        gates = tuple(self.gates)
        for g in gates:
            if not isinstance(g, Gate):
                raise CircuitError(f"not a gate: {g!r}")
            if max(g.qubits) >= self.width:
                raise CircuitError(f"{g!r} does not fit in width {self.width}")
        object.__setattr__(self, "gates", gates)

    def __len__(self):
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def __add__(self, other: Circuit) -> Circuit:
        if not isinstance(other, Circuit):
            return NotImplemented
        return Circuit(max(self.width, other.width), self.gates + other.gates)

    def with_gates(self, gates) -> Circuit:
        return Circuit(self.width, tuple(gates))

    @property
    def is_lowered(self) -> bool:
        return all(g.kind in _LOWERED for g in self.gates)

    @property
    def is_diagonal(self) -> bool:
        return all(g.kind.is_diagonal for g in self.gates)


@dataclass(frozen=True)
class CostReport:
    cz: int
    rotations: int

    def __add__(self, other: CostReport) -> CostReport:
        return CostReport(self.cz + other.cz, self.rotations + other.rotations)

    def __iter__(self):
        yield self.cz
        yield self.rotations


def is_identity_up_to_phase(u: np.ndarray, tol: float = 1e-9) -> bool:
    # |tr U| = dim iff U = c*I with |c| = 1
    return abs(abs(np.trace(u)) - u.shape[0]) <= tol


def iter_boxes(c: Circuit):
    """Yield (wire, gate indices, 2x2 product) for every maximal single-qubit
    run on a wire, including empty runs between consecutive two-qubit gates."""
    runs: dict[int, list[int]] = {w: [] for w in range(c.width)}
    for i, g in enumerate(c.gates):
        if g.kind.is_single_qubit:
            runs[g.target].append(i)
            continue
        for w in g.qubits:
            yield w, runs[w], _run_product(c, runs[w])
            runs[w] = []
    for w in range(c.width):
        yield w, runs[w], _run_product(c, runs[w])


def _run_product(c: Circuit, idx: list[int]) -> np.ndarray:
    u = np.eye(2, dtype=complex)
    for i in idx:
        u = c.gates[i].matrix() @ u
    return u


def count_gates(c: Circuit) -> CostReport:
    """Count CZ gates and single-qubit rotations of a lowered circuit.

    Every maximal run of single-qubit gates on one wire is one box; a box
    that is not the identity (up to phase) costs ROTATIONS_PER_BOX rotations
    about the x/y axes, an identity box costs nothing.
    """
    bad = sorted({g.kind.value for g in c.gates if g.kind not in _LOWERED})
    if bad:
        raise NotLoweredError(f"circuit is not lowered: contains {', '.join(bad)}")
    n_cz = sum(1 for g in c.gates if g.kind is GateKind.CZ)
    n_rot = sum(ROTATIONS_PER_BOX for _, idx, u in iter_boxes(c)
                if idx and not is_identity_up_to_phase(u))
    return CostReport(n_cz, n_rot)


def _fmt_angle(a: float) -> str:
    s = f"{a:.{ANGLE_DECIMALS}f}"
    return "0." + "0" * ANGLE_DECIMALS if s == "-0." + "0" * ANGLE_DECIMALS else s


def emit_text(c: Circuit) -> str:
    lines = [f"qubits {c.width}"]
    for g in c.gates:
        parts = [g.kind.value]
        if g.angle is not None:
            parts.append(_fmt_angle(g.angle))
        parts.extend(str(q) for q in g.qubits)
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def parse_text(text: str) -> Circuit:
    width = None
    gates = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, *rest = line.split()
        if head == "qubits":
            if width is not None:
                raise ParseError(lineno, "duplicate 'qubits' header")
            if len(rest) != 1 or not rest[0].isdigit() or int(rest[0]) < 1:
                raise ParseError(lineno, f"malformed header {line!r}")
            width = int(rest[0])
            continue
        if width is None:
            raise ParseError(lineno, "gate before 'qubits N' header")
        try:
            kind = GateKind(head.lower())
        except ValueError:
            raise ParseError(lineno, f"unknown mnemonic {head!r}") from None
        angle = None
        if kind.is_rotation:
            if not rest:
                raise ParseError(lineno, f"{head} needs an angle")
            try:
                angle = float(rest[0])
            except ValueError:
                raise ParseError(lineno, f"malformed number {rest[0]!r}") from None
            if not math.isfinite(angle):
                raise ParseError(lineno, f"malformed number {rest[0]!r}")
            rest = rest[1:]
        try:
            wires = tuple(int(w) for w in rest)
        except ValueError:
            raise ParseError(lineno, f"malformed wire list {' '.join(rest)!r}") from None
        for w in wires:
            if not 0 <= w < width:
                raise ParseError(lineno, f"wire {w} out of range for {width} qubits")
        try:
            gates.append(Gate(kind, wires, angle))
        except CircuitError as exc:
            raise ParseError(lineno, str(exc)) from None
    if width is None:
        raise ParseError(0, "missing 'qubits N' header")
    return Circuit(width, tuple(gates))


_QASM_NAMES = {GateKind.TDG: "tdg", GateKind.CNOT: "cx"}


def emit_qasm(c: Circuit) -> str:
    """OPENQASM 2.0 flavoured dump.  Multi-controlled gates use c<k>z / c<k>x
    names, and t/tdg keep this package's T convention (a z-rotation by -pi/4)."""
    out = ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{c.width}];"]
    for g in c.gates:
        name = _QASM_NAMES.get(g.kind, g.kind.value)
        if g.kind is GateKind.CKZ:
            name = "z" if len(g.qubits) == 1 else f"c{len(g.qubits) - 1}z"
        elif g.kind is GateKind.CKNOT:
            name = "x" if len(g.qubits) == 1 else f"c{len(g.qubits) - 1}x"
        if g.angle is not None:
            name += f"({g.angle:.{ANGLE_DECIMALS}f})"
        args = ",".join(f"q[{w}]" for w in g.qubits)
        out.append(f"{name} {args};")
    return "\n".join(out) + "\n"
