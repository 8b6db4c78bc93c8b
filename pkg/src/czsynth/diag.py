"""Diagonal Hermitian gates and their binary encodings.

Bit-ordering convention, which every golden value in this package depends
on: wire 0 (the top wire) is the most significant bit of a basis-state
index.  A gate mask ``i`` instead has bit j set when the gate touches wire j,
so mask bits and state-index bits run in opposite directions and
``czi_binary`` reverses the mask before comparing.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf2 import BitMatrix, BitVec, reverse_bits


@dataclass(frozen=True)
class DiagonalHermitian:
    n: int
    signs: tuple[int, ...]
    global_phase_flipped: bool = False

    def __post_init__(self):
        signs = tuple(int(s) for s in self.signs)
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if len(signs) != 1 << self.n:
            raise ValueError(f"expected {1 << self.n} signs for n={self.n}, got {len(signs)}")
        if any(s not in (1, -1) for s in signs):
            raise ValueError("every diagonal entry must be +1 or -1")
        object.__setattr__(self, "signs", signs)

    @classmethod
    def identity(cls, n: int) -> DiagonalHermitian:
        return cls(n, (1,) * (1 << n))

    @property
    def is_normalized(self) -> bool:
        return self.signs[0] == 1

    def diagonal(self) -> np.ndarray:
        """Complex diagonal, including the tracked global phase."""
        d = np.array(self.signs, dtype=complex)
        return -d if self.global_phase_flipped else d

    def matrix(self) -> np.ndarray:
        return np.diag(self.diagonal())


@dataclass(frozen=True)
class GateMask:
    n: int
    mask: int

    def __post_init__(self):
        if not 1 <= self.mask < (1 << self.n):
            raise ValueError(f"mask {self.mask} out of range 1..{(1 << self.n) - 1}")

    @property
    def wires(self) -> tuple[int, ...]:
        return tuple(j for j in range(self.n) if (self.mask >> j) & 1)

    @property
    def popcount(self) -> int:
        return bin(self.mask).count("1")

    @property
    def controls(self) -> int:
        return self.popcount - 1


def normalize(d: DiagonalHermitian) -> DiagonalHermitian:
    if d.is_normalized:
        return d
    return DiagonalHermitian(d.n, tuple(-s for s in d.signs), not d.global_phase_flipped)


def binary_of(d: DiagonalHermitian) -> BitVec:
    if not d.is_normalized:
        raise ValueError("binary_of needs a normalized gate (first entry +1)")
    size = 1 << d.n
    return BitVec(size - 1, sum(1 << (m - 1) for m in range(1, size) if d.signs[m] == -1))


def diagmat_of(b: BitVec, n: int) -> DiagonalHermitian:
    if b.length != (1 << n) - 1:
        raise ValueError(f"expected length {(1 << n) - 1} for n={n}, got {b.length}")
    return DiagonalHermitian(n, (1,) + tuple(-1 if b[m] else 1 for m in range(1, 1 << n)))


def matrix_id(d: DiagonalHermitian) -> int:
    return binary_of(d).value


def from_id(matrix_id: int, n: int) -> DiagonalHermitian:
    length = (1 << n) - 1
    if not 0 <= matrix_id < (1 << length):
        raise ValueError(f"id {matrix_id} out of range 0..{(1 << length) - 1} for n={n}")
    return diagmat_of(BitVec(length, matrix_id), n)


def czi_binary(n: int, g: GateMask | int) -> BitVec:
    mask = g.mask if isinstance(g, GateMask) else GateMask(n, g).mask
    r = reverse_bits(mask, n)
    size = 1 << n
    return BitVec(size - 1, sum(1 << (m - 1) for m in range(1, size) if m & r == r))


def basis_matrix(n: int) -> BitMatrix:
    """Column i-1 holds Binary(CZ_i)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    size = (1 << n) - 1
    return BitMatrix.from_columns((czi_binary(n, i) for i in range(1, size + 1)), size)


# -- text input formats ---------------------------------------------------

def parse_signs(text: str, n: int | None = None) -> DiagonalHermitian:
    """Parse ``"+,+,-,+"`` (or ``1,1,-1,1``) into a gate; n is inferred."""
    items = [s.strip() for s in text.split(",") if s.strip()]
    table = {"+": 1, "+1": 1, "1": 1, "-": -1, "-1": -1}
    try:
        signs = tuple(table[s] for s in items)
    except KeyError as exc:
        raise ValueError(f"bad sign {exc.args[0]!r} (use + or -)") from None
    size = len(signs)
    if size < 2 or size & (size - 1):
        raise ValueError(f"need 2^n signs, got {size}")
    inferred = size.bit_length() - 1
    if n is not None and n != inferred:
        raise ValueError(f"{size} signs do not describe a {n}-qubit gate")
    return DiagonalHermitian(inferred, signs)


def parse_binary(text: str, n: int | None = None) -> DiagonalHermitian:
    """Parse a binary representation written most significant position first,
    e.g. ``"100"`` is CZ."""
    text = text.strip()
    if not text or set(text) - {"0", "1"}:
        raise ValueError(f"not a binary string: {text!r}")
    length = len(text)
    inferred = (length + 1).bit_length() - 1
    if (1 << inferred) - 1 != length:
        raise ValueError(f"binary string length must be 2^n - 1, got {length}")
    if n is not None and n != inferred:
        raise ValueError(f"length {length} does not describe a {n}-qubit gate")
    return diagmat_of(BitVec.from_tuple(int(c) for c in text), inferred)
