"""
Lowering of C^kZ gates to the {CZ, single-qubit} library and the cost model.

Contains:
    - lower_ckz(): one C^kZ gate to CZ + H/T/T†/Z/Rz gates
    - CostModel / lower_selection(): per-gate (CZ, rotation) costs
    - ckz_cknot_rewrite(): C^kZ <-> H . C^kNOT . H on the target wire
    - materialize_rotations(): boxes to explicit Rx.Ry.Rx rotations
    - exact_rotation_count(): fewest x/y rotations per box (secondary metric)

Single-qubit content stays symbolic (H, T, T†, Z, Rz); count_gates applies
the box rule to it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .circuit import (Circuit, CostReport, Gate, GateKind, ckz, cknot, count_gates, cz, h,
                      is_identity_up_to_phase, iter_boxes, rx, ry, rz, t, tdg, x, z)
from .diag import GateMask
from .synth import CzSelection


def toffoli_z(a: int, b: int, c: int) -> list[Gate]:
    """C^2Z on wires a, b, c as 6 CZ + 9 single-qubit boxes (c is the
    H-dressed wire, b the middle one)."""
    def box(w, *fs):
        return [f(w) for f in fs]

    gates = []
    gates += box(c, h)
    gates += [cz(b, c)]
    gates += box(c, h, tdg, h)
    gates += [cz(a, c)]
    gates += box(c, h, t, h)
    gates += [cz(b, c)]
    gates += box(c, h, tdg, h)
    gates += [cz(a, c)]
    gates += box(c, h, t)
    gates += box(b, t, h)
    gates += [cz(a, b)]
    gates += box(a, t)
    gates += box(b, h, tdg, h)
    gates += [cz(a, b)]
    gates += box(b, h)
    return gates


def _cnot(c: int, tgt: int) -> list[Gate]:
    return [h(tgt), cz(c, tgt), h(tgt)]


def _cphase(phi: float, c: int, tgt: int) -> list[Gate]:
    # phase e^{i phi} on |11>, up to global phase
    return ([rz(c, phi / 2), rz(tgt, phi / 2)] + _cnot(c, tgt)
            + [rz(tgt, -phi / 2)] + _cnot(c, tgt))


def _toffoli(c0: int, c1: int, tgt: int) -> list[Gate]:
    return [h(tgt)] + toffoli_z(c0, c1, tgt) + [h(tgt)]


def _vchain(controls: tuple[int, ...], tgt: int, anc: tuple[int, ...]) -> list[Gate]:
    """C^mX with m - 2 borrowed wires in any state: 4(m - 2) Toffolis."""
    m = len(controls)
    top = _toffoli(controls[-1], anc[m - 3], tgt)
    links = [_toffoli(controls[0], controls[1], anc[0])]
    links += [_toffoli(controls[j + 1], anc[j - 1], anc[j]) for j in range(1, m - 2)]
    # down the chain to the bottom link and back up, twice
    sweep = [g for link in links[:0:-1] for g in link] + links[0]
    sweep += [g for link in links[1:] for g in link]
    return top + sweep + top + sweep


def _mcx(controls: tuple[int, ...], tgt: int, free: tuple[int, ...] = ()) -> list[Gate]:
    """C^mX onto tgt; wires in ``free`` may be borrowed and are left unchanged."""
    m = len(controls)
    if m == 0:
        return [x(tgt)]
    if m == 1:
        return _cnot(controls[0], tgt)
    if m == 2:
        return _toffoli(controls[0], controls[1], tgt)
    if len(free) >= m - 2:
        return _vchain(controls, tgt, free[:m - 2])
    if free:
        # split the controls over one borrowed wire; each half borrows the other's wires
        b = free[0]
        m1 = (m + 1) // 2
        first, second = controls[:m1], controls[m1:]
        lo = _mcx(first, b, second + (tgt,))
        hi = _mcx(second + (b,), tgt, first)
        return lo + hi + lo + hi
    return [h(tgt)] + _mcphase(math.pi, controls + (tgt,)) + [h(tgt)]


def _mcphase(phi: float, wires: tuple[int, ...]) -> list[Gate]:
    """Phase e^{i phi} when every wire reads 1, up to global phase, no ancilla.

    For three or more wires, with R the leading wires and c, t the last two:
        MCP(phi, R+c+t) = CP(phi/2)(c,t) . C^|R|X(R->c) . CP(-phi/2)(c,t)
                          . C^|R|X(R->c) . MCP(phi/2, R+t)
    where t is idle during each C^|R|X and is lent to it as a borrowed wire.
    """
    if len(wires) == 1:
        return [z(wires[0])] if math.isclose(phi, math.pi) else [rz(wires[0], phi)]
    if len(wires) == 2:
        if math.isclose(phi, math.pi):
            return [cz(*wires)]
        return _cphase(phi, *wires)
    if len(wires) == 3 and math.isclose(phi, math.pi):
        return toffoli_z(*wires)
    *rest, c, tgt = wires
    rest = tuple(rest)
    flip = _mcx(rest, c, (tgt,))
    return (_cphase(phi / 2, c, tgt) + flip + _cphase(-phi / 2, c, tgt) + flip
            + _mcphase(phi / 2, rest + (tgt,)))


@lru_cache(maxsize=None)
def lower_ckz(n: int, mask: int) -> Circuit:
    """Lowered circuit for CZ_mask on n wires; simulates to C^kZ up to phase."""
    wires = GateMask(n, mask).wires
    return Circuit(n, tuple(_mcphase(math.pi, wires)))


@dataclass(frozen=True)
class CostModel:
    """(CZ, rotation) cost of one C^kZ gate, keyed by how many wires it touches."""
    table: dict = field(default_factory=lambda: {1: CostReport(0, 3), 2: CostReport(1, 0),
                                                 3: CostReport(6, 27)})

    def cost(self, popcount: int) -> CostReport:
        if popcount in self.table:
            return self.table[popcount]
        return counted_cost(popcount)


@lru_cache(maxsize=None)
def counted_cost(popcount: int) -> CostReport:
    """Box-rule count of lower_ckz on a gate touching ``popcount`` wires."""
    return count_gates(lower_ckz(popcount, (1 << popcount) - 1))


DEFAULT_MODEL = CostModel()


def lower_selection(s: CzSelection, model: CostModel = DEFAULT_MODEL
                    ) -> tuple[Circuit, CostReport]:
    gates: list[Gate] = []
    cost = CostReport(0, 0)
    for i in s.masks:
        gates.extend(lower_ckz(s.n, i).gates)
        cost = cost + model.cost(GateMask(s.n, i).popcount)
    return Circuit(s.n, tuple(gates)), cost


_Z_TO_X = {GateKind.Z: GateKind.X, GateKind.CZ: GateKind.CNOT, GateKind.CKZ: GateKind.CKNOT}
_X_TO_Z = {v: k for k, v in _Z_TO_X.items()}


def ckz_cknot_rewrite(c: Circuit, direction: str = "to_cknot") -> Circuit:
    """Swap every C^kZ for H . C^kNOT . H on its last wire, or the reverse.

    direction is "to_cknot" or "to_ckz".  Uses HXH = Z, so the unitary is
    preserved exactly.
    """
    if direction == "to_cknot":
        table, make = _Z_TO_X, lambda ws: cknot(ws[:-1], ws[-1])
    elif direction == "to_ckz":
        table, make = _X_TO_Z, ckz
    else:
        raise ValueError(f"unknown direction {direction!r}")
    out = []
    for g in c.gates:
        if g.kind not in table:
            out.append(g)
            continue
        tgt = g.qubits[-1]
        out += [h(tgt), make(g.qubits), h(tgt)]
    return c.with_gates(out)


def cancel_hadamard_pairs(c: Circuit) -> Circuit:
    """Drop H.H pairs that are adjacent on their wire."""
    gates = list(c.gates)
    changed = True
    while changed:
        changed = False
        last: dict[int, int] = {}
        for i, g in enumerate(gates):
            if g is None:
                continue
            if g.kind is GateKind.H:
                j = last.get(g.target)
                if j is not None and gates[j].kind is GateKind.H:
                    gates[i] = gates[j] = None
                    last.pop(g.target)
                    changed = True
                    continue
            for w in g.qubits:
                last[w] = i
        gates = [g for g in gates if g is not None]
    return c.with_gates(gates)


def _xyx_angles(u: np.ndarray) -> tuple[float, float, float]:
    """Angles (a, b, c) with u ~ Rx(a) . Ry(b) . Rx(c) (Rx(c) acts first)."""
    # H Rx H = Rz, H Ry H = Ry^-1: do ZYZ on H u H
    hm = np.array([[1, 1], [1, -1]]) / math.sqrt(2)
    v = hm @ u @ hm
    v = v / np.sqrt(np.linalg.det(v))
    b = 2 * math.atan2(abs(v[1, 0]), abs(v[0, 0]))
    s = np.angle(v[1, 1]) if abs(v[1, 1]) > 1e-12 else 0.0
    d = np.angle(v[1, 0]) if abs(v[1, 0]) > 1e-12 else 0.0
    # v = Rz(a) Ry(b') Rz(c):  v11 = e^{i(a+c)/2} cos, v10 = e^{i(a-c)/2} sin
    if abs(v[1, 0]) <= 1e-12:
        a, c = 2 * s, 0.0
    elif abs(v[1, 1]) <= 1e-12:
        a, c = 2 * d, 0.0
    else:
        a, c = s + d, s - d
    return a, -b, c


def materialize_rotations(c: Circuit) -> Circuit:
    """Replace every non-identity box with Rx.Ry.Rx; identity boxes vanish."""
    box_at: dict[int, list[Gate]] = {}
    drop = set()
    for w, idx, u in iter_boxes(c):
        if not idx:
            continue
        drop.update(idx)
        if is_identity_up_to_phase(u):
            continue
        a, b, cc = _xyx_angles(u)
        box_at[idx[-1]] = [rx(w, cc), ry(w, b), rx(w, a)]
    out = []
    for i, g in enumerate(c.gates):
        if i in box_at:
            out.extend(box_at[i])
        elif i not in drop:
            out.append(g)
    return c.with_gates(out)


def _su2(u: np.ndarray) -> np.ndarray:
    return u / np.sqrt(np.linalg.det(u))


def box_rotation_count(u: np.ndarray, tol: float = 1e-9) -> int:
    """Fewest rotations about the x and y axes that realise u up to phase."""
    if is_identity_up_to_phase(u, tol):
        return 0
    v = _su2(u)
    # Rx(a) has real diagonal and imaginary off-diagonal; Ry(b) is real
    for w in (v, -v):
        if abs(w[0, 0].imag) <= tol and abs(w[1, 0].real) <= tol:
            return 1
        if abs(w[0, 0].imag) <= tol and abs(w[1, 0].imag) <= tol and abs(w[0, 1].imag) <= tol:
            return 1
    # Rx(a)Ry(b): Re(al)Im(al) == Re(be)Im(be);  Ry(b)Rx(a): ... == -Re(be)Im(be)
    al, be = v[0, 0], v[1, 0]
    p, q = al.real * al.imag, be.real * be.imag
    if abs(p - q) <= tol or abs(p + q) <= tol:
        return 2
    return 3


def exact_rotation_count(c: Circuit) -> CostReport:
    n_cz = sum(1 for g in c.gates if g.kind is GateKind.CZ)
    return CostReport(n_cz, sum(box_rotation_count(u) for _, idx, u in iter_boxes(c) if idx))
