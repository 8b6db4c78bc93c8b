"""
Multiplexed-Rz baseline for arbitrary diagonal gates, built from CZ + H.

Contains:
    - build_structure(): Gray-code skeleton of Rz slots and CZ-conjugated CNOTs
    - compute_angles(): solve the structure's phase-accumulation system
    - realize(): angles + skeleton -> Circuit (Rz boxes dressed with H)
    - optimize(): identity-box removal and commuting CZ-pair cancellation
    - baseline_cost(): the full pipeline for a diagonal Hermitian gate

Target wire t (from n-1 down to 1) carries 2^t Rz slots interleaved with
2^t CNOTs whose controls follow the binary ruler sequence over wires
0..t-1; wire 0 ends with one lone slot.  Angles are named a, b, c, ... with
``a`` on wire 0 and the first slot in time on each wire getting the last
letter of that wire's block.
"""
from __future__ import annotations

import math
import string
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .circuit import Circuit, CostReport, Gate, GateKind, count_gates, cz, h, rz
from .diag import DiagonalHermitian

MAX_N = 10


@dataclass(frozen=True)
class PhaseVector:
    """Diagonal entries e^{i phases[m]}; phases are taken modulo 2 pi."""
    n: int
    phases: tuple[float, ...]

    def __post_init__(self):
        phases = tuple(float(p) for p in self.phases)
        if len(phases) != 1 << self.n:
            raise ValueError(f"expected {1 << self.n} phases, got {len(phases)}")
        object.__setattr__(self, "phases", phases)

    @classmethod
    def from_hermitian(cls, d: DiagonalHermitian) -> PhaseVector:
        return cls(d.n, tuple(math.pi if s == -1 else 0.0 for s in d.signs))

    def diagonal(self) -> np.ndarray:
        return np.exp(1j * np.array(self.phases))


@dataclass(frozen=True)
class Slot:
    wire: int
    index: int          # position in the angle vector (a = 0)
    parity: int         # mask of wires whose XOR this slot's rotation sees


@dataclass(frozen=True)
class Cnot:
    control: int
    target: int


@dataclass(frozen=True)
class MuxStructure:
    n: int
    ops: tuple          # Slot and Cnot items in time order

    @property
    def slots(self) -> list[Slot]:
        return sorted((op for op in self.ops if isinstance(op, Slot)), key=lambda s: s.index)

    @property
    def cz_count(self) -> int:
        return sum(1 for op in self.ops if isinstance(op, Cnot))

    def angle_names(self) -> list[str]:
        k = len(self.slots)
        if k <= len(string.ascii_lowercase):
            return list(string.ascii_lowercase[:k])
        return [f"s{i}" for i in range(k)]


def ruler_controls(t: int) -> list[int]:
    """Control wires for the 2^t CNOTs onto target wire t (Gray-code order)."""
    out = []
    for j in range(1, (1 << t) + 1):
        bit = t - 1 if j == 1 << t else (j & -j).bit_length() - 1
        out.append(t - 1 - bit)
    return out


@lru_cache(maxsize=None)
def build_structure(n: int) -> MuxStructure:
    if not 1 <= n <= MAX_N:
        raise ValueError(f"n must be in 1..{MAX_N}, got {n}")
    ops: list = []
    # parity[w] tracks which input wires wire w currently holds the XOR of
    parity = {w: 1 << w for w in range(n)}
    for tw in range(n - 1, 0, -1):
        base = (1 << tw) - 1
        controls = ruler_controls(tw)
        for k, c in enumerate(controls):
            ops.append(Slot(tw, base + (1 << tw) - 1 - k, parity[tw]))
            ops.append(Cnot(c, tw))
            parity[tw] ^= parity[c]
        assert parity[tw] == 1 << tw
    ops.append(Slot(0, 0, 1))
    return MuxStructure(n, tuple(ops))


@lru_cache(maxsize=None)
def _phase_system(n: int) -> np.ndarray:
    """Rows: basis states; columns: slot angles then a global-phase column.

    Rz(alpha) on a wire holding bit y contributes -(alpha/2)(-1)^y.
    """
    size = 1 << n
    slots = build_structure(n).slots
    x = np.arange(size)
    # state bit for wire w sits at position n-1-w
    a = np.zeros((size, size))
    for s in slots:
        y = np.zeros(size, dtype=np.int64)
        for w in range(n):
            if (s.parity >> w) & 1:
                y ^= (x >> (n - 1 - w)) & 1
        a[:, s.index] = -0.5 * (1 - 2 * y)
    a[:, size - 1] = 1.0
    return np.linalg.inv(a)


def compute_angles(p: PhaseVector) -> np.ndarray:
    """Slot angles (a, b, c, ...) reproducing diag(e^{i phases}) up to phase."""
    sol = _phase_system(p.n) @ np.array(p.phases)
    return sol[:-1]


def realize(structure: MuxStructure, angles) -> Circuit:
    angles = np.asarray(angles, dtype=float)
    if angles.shape != (len(structure.slots),):
        raise ValueError(f"expected {len(structure.slots)} angles, got {angles.shape}")
    gates: list[Gate] = []
    for op in structure.ops:
        if isinstance(op, Slot):
            gates.append(rz(op.wire, angles[op.index]))
        else:
            gates += [h(op.target), cz(op.control, op.target), h(op.target)]
    return Circuit(structure.n, tuple(gates))


# -- peephole optimisation ------------------------------------------------

def _identity_runs(gates: list[Gate], width: int) -> set[int]:
    """Indices of single-qubit runs whose product is the identity up to phase."""
    dead: set[int] = set()
    runs: dict[int, list[int]] = {w: [] for w in range(width)}
    mats: dict[int, np.ndarray] = {}

    def close(w):
        idx = runs[w]
        if idx:
            u = mats[w]
            if abs(abs(u[0, 0] + u[1, 1]) - 2) <= 1e-9:
                dead.update(idx)
        runs[w] = []
        mats[w] = np.eye(2, dtype=complex)

    for w in range(width):
        mats[w] = np.eye(2, dtype=complex)
    for i, g in enumerate(gates):
        if g.kind.is_single_qubit:
            runs[g.target].append(i)
            mats[g.target] = g.matrix() @ mats[g.target]
        else:
            for w in g.qubits:
                close(w)
    for w in range(width):
        close(w)
    return dead


def _cancel_cz_pair(gates: list[Gate]) -> bool:
    """Cancel the first CZ that meets an identical CZ through commuting gates."""
    for i, g in enumerate(gates):
        if g.kind is not GateKind.CZ:
            continue
        wires = set(g.qubits)
        for j in range(i + 1, len(gates)):
            other = gates[j]
            if wires.isdisjoint(other.qubits):
                continue
            if other == g:
                del gates[j]
                del gates[i]
                return True
            if other.kind.is_diagonal:
                continue
            break
    return False


def optimize(c: Circuit) -> Circuit:
    """Fixpoint of: delete identity boxes; cancel equal CZ pairs that can be
    brought together by commuting past CZs, diagonal gates and gates on
    other wires.  Adjacent H pairs vanish as identity boxes."""
    gates = list(c.gates)
    while True:
        dead = _identity_runs(gates, c.width)
        if dead:
            gates = [g for i, g in enumerate(gates) if i not in dead]
            continue
        if _cancel_cz_pair(gates):
            continue
        break
    return c.with_gates(gates)


def baseline_circuit(d: DiagonalHermitian, optimized: bool = True) -> Circuit:
    structure = build_structure(d.n)
    c = realize(structure, compute_angles(PhaseVector.from_hermitian(d)))
    return optimize(c) if optimized else c


def baseline_cost(d: DiagonalHermitian) -> CostReport:
    if not d.is_normalized:
        raise ValueError("baseline_cost needs a normalized gate")
    return count_gates(baseline_circuit(d))


def reduced_angles(p: PhaseVector) -> list[float]:
    """compute_angles folded into [-pi, pi]; Rz(a + 2 pi) = -Rz(a), so the
    circuit changes only by a global sign."""
    out = []
    for a in compute_angles(p):
        r = math.remainder(a, 2 * math.pi)
        out.append(0.0 if abs(r) < 1e-12 else r)
    return out
