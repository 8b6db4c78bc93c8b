"""Dense unitary simulation used as the verification oracle.

Basis-state index convention: wire 0 is the most significant bit.
"""
from __future__ import annotations

import numpy as np

from .circuit import Circuit, Gate, GateKind, single_qubit_matrix

MAX_WIDTH = 12

TOL_EXACT = 1e-10
TOL_SOLVED = 1e-9


def _check_width(width: int):
    if width > MAX_WIDTH:
        raise ValueError(f"width {width} exceeds the dense simulation limit of {MAX_WIDTH}")


def _all_ones_mask(width: int, wires) -> np.ndarray:
    idx = np.arange(1 << width)
    sel = np.ones(1 << width, dtype=bool)
    for w in wires:
        sel &= ((idx >> (width - 1 - w)) & 1).astype(bool)
    return sel


def gate_diagonal(g: Gate, width: int) -> np.ndarray:
    """Diagonal of a diagonal gate embedded in ``width`` wires."""
    if not g.kind.is_diagonal:
        raise ValueError(f"{g.kind.value} is not diagonal")
    _check_width(width)
    if g.kind in (GateKind.CZ, GateKind.CKZ):
        return np.where(_all_ones_mask(width, g.qubits), -1.0, 1.0).astype(complex)
    m = single_qubit_matrix(g.kind, g.angle)
    bit = (np.arange(1 << width) >> (width - 1 - g.target)) & 1
    return np.where(bit == 1, m[1, 1], m[0, 0])


def _apply(u: np.ndarray, g: Gate, width: int) -> np.ndarray:
    """Left-multiply ``u`` (shape (2^w, cols)) by the embedded gate."""
    cols = u.shape[1]
    if g.kind.is_diagonal:
        return gate_diagonal(g, width)[:, None] * u
    if g.kind.is_single_qubit:
        t = u.reshape((1 << g.target, 2, -1))
        return np.einsum("ab,ibj->iaj", g.matrix(), t).reshape(-1, cols)
    # controlled NOT family: swap target amplitude pairs where all controls are 1
    sel = _all_ones_mask(width, g.controls)
    bit = 1 << (width - 1 - g.target)
    idx = np.arange(1 << width)
    perm = np.where(sel, idx ^ bit, idx)
    return u[perm]


def gate_matrix(g: Gate, width: int) -> np.ndarray:
    _check_width(width)
    if max(g.qubits) >= width:
        raise ValueError(f"{g!r} does not fit in width {width}")
    return _apply(np.eye(1 << width, dtype=complex), g, width)


def unitary_of(c: Circuit) -> np.ndarray:
    """Matrix of the circuit; the leftmost gate acts first."""
    _check_width(c.width)
    u = np.eye(1 << c.width, dtype=complex)
    for g in c.gates:
        u = _apply(u, g, c.width)
    return u


def diagonal_of(c: Circuit) -> np.ndarray:
    """Fast path for all-diagonal circuits: just the 2^n diagonal."""
    _check_width(c.width)
    d = np.ones(1 << c.width, dtype=complex)
    for g in c.gates:
        d = d * gate_diagonal(g, c.width)
    return d


def equal_up_to_phase(u: np.ndarray, v: np.ndarray, tol: float = TOL_EXACT) -> bool:
    return max_deviation(u, v) <= tol


def max_deviation(u: np.ndarray, v: np.ndarray) -> float:
    """min over the anchored phase c of max |u - c v|.

    Accepts full matrices or 1-D diagonals (a diagonal is compared as the
    matrix it stands for).  The phase anchor is the first entry of v with
    modulus above 0.5/dim.
    """
    u, v = np.asarray(u), np.asarray(v)
    if u.ndim == 1 and v.ndim == 2:
        u = np.diag(u)
    elif u.ndim == 2 and v.ndim == 1:
        v = np.diag(v)
    if u.shape != v.shape:
        raise ValueError(f"shape mismatch: {u.shape} vs {v.shape}")
    dim = u.shape[0]
    flat_v = v.ravel()
    anchor = int(np.argmax(np.abs(flat_v) > 0.5 / dim))
    if abs(flat_v[anchor]) <= 0.5 / dim:
        return float(np.max(np.abs(u - v)))
    ratio = u.ravel()[anchor] / flat_v[anchor]
    if abs(ratio) == 0:
        return float(np.max(np.abs(u))) + float(np.max(np.abs(v)))
    c = ratio / abs(ratio)
    return float(np.max(np.abs(u - c * v)))


def is_unitary(u: np.ndarray, tol: float = 1e-10) -> bool:
    return bool(np.max(np.abs(u @ u.conj().T - np.eye(u.shape[0]))) <= tol)
