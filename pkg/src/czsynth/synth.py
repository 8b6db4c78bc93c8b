"""Decomposition of diagonal Hermitian gates into C^kZ gates.

The binary representation of the target is written in the basis formed by
the binary representations of all 2^n - 1 gates CZ_i; coefficient a_i = 1
means CZ_i appears (once) in the circuit.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .circuit import Circuit, ckz
from .diag import (DiagonalHermitian, GateMask, basis_matrix, binary_of, czi_binary,
                   diagmat_of)
from .gf2 import BitVec, solve_gaussian, subset_xor_solve, xor_combine

BACKENDS = ("subset", "gaussian")


@dataclass(frozen=True)
class CzSelection:
    n: int
    selected: frozenset[int]

    def __post_init__(self):
        selected = frozenset(int(i) for i in self.selected)
        for i in selected:
            GateMask(self.n, i)
        object.__setattr__(self, "selected", selected)

    @classmethod
    def from_bitvec(cls, n: int, a: BitVec) -> CzSelection:
        return cls(n, frozenset(a.positions()))

    @property
    def masks(self) -> list[int]:
        return sorted(self.selected)

    def label(self) -> str:
        return "+".join(str(i) for i in self.masks)


@lru_cache(maxsize=None)
def _basis(n: int):
    return basis_matrix(n)


def decompose(d: DiagonalHermitian, backend: str = "subset") -> CzSelection:
    if not d.is_normalized:
        raise ValueError("decompose needs a normalized gate; call normalize() first")
    b = binary_of(d)
    if backend == "subset":
        a = subset_xor_solve(d.n, b)
    elif backend == "gaussian":
        a = solve_gaussian(_basis(d.n), b)
    else:
        raise ValueError(f"unknown backend {backend!r}; choose from {BACKENDS}")
    return CzSelection.from_bitvec(d.n, a)


def selection_to_circuit(s: CzSelection) -> Circuit:
    # all C^kZ gates commute; ascending mask order keeps output stable
    return Circuit(s.n, tuple(ckz(GateMask(s.n, i).wires) for i in s.masks))


def reconstruct(s: CzSelection) -> DiagonalHermitian:
    length = (1 << s.n) - 1
    b = xor_combine([BitVec(length, 0)] + [czi_binary(s.n, i) for i in s.masks])
    return diagmat_of(b, s.n)
