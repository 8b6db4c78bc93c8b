"""Bit-vector algebra over GF(2) with int bitsets.

Positions are 1-based: position m of a BitVec is bit ``m - 1`` of ``value``,
so the integer value of a binary representation is its decimal matrix id.
Tuples are written most significant position first, e.g. ``(1, 0, 0) == 4``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np


class SingularMatrixError(ArithmeticError):
    pass


@dataclass(frozen=True)
class BitVec:
    length: int
    value: int = 0

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("negative length")
        if not 0 <= self.value < (1 << self.length):
            raise ValueError(f"value {self.value} does not fit in {self.length} bits")

    @classmethod
    def from_tuple(cls, bits) -> BitVec:
        bits = tuple(bits)
        value = 0
        for b in bits:
            if b not in (0, 1):
                raise ValueError(f"not a bit: {b!r}")
            value = (value << 1) | b
        return cls(len(bits), value)

    @classmethod
    def from_positions(cls, length: int, positions) -> BitVec:
        value = 0
        for m in positions:
            if not 1 <= m <= length:
                raise ValueError(f"position {m} out of range 1..{length}")
            value |= 1 << (m - 1)
        return cls(length, value)

    def __getitem__(self, m: int) -> int:
        if not 1 <= m <= self.length:
            raise IndexError(f"position {m} out of range 1..{self.length}")
        return (self.value >> (m - 1)) & 1

    def __xor__(self, other: BitVec) -> BitVec:
        if self.length != other.length:
            raise ValueError(f"length mismatch: {self.length} vs {other.length}")
        return BitVec(self.length, self.value ^ other.value)

    def to_tuple(self) -> tuple[int, ...]:
        return tuple(self[m] for m in range(self.length, 0, -1))

    def positions(self) -> list[int]:
        return [m for m in range(1, self.length + 1) if self[m]]

    def weight(self) -> int:
        return bin(self.value).count("1")


def xor_combine(vs) -> BitVec:
    vs = list(vs)
    if not vs:
        raise ValueError("xor_combine needs at least one vector")
    lengths = {v.length for v in vs}
    if len(lengths) != 1:
        raise ValueError(f"length mismatch: {sorted(lengths)}")
    return reduce(lambda a, b: a ^ b, vs)


@dataclass(frozen=True)
class BitMatrix:
    """Dense GF(2) matrix; row r is an int whose bit c is entry (r, c)."""
    nrows: int
    ncols: int
    rows: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(self.rows)
        if len(rows) != self.nrows:
            raise ValueError(f"expected {self.nrows} rows, got {len(rows)}")
        if any(not 0 <= r < (1 << self.ncols) for r in rows):
            raise ValueError("row wider than ncols")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_columns(cls, columns, nrows: int) -> BitMatrix:
        """Build from BitVec columns; column j (0-based) lands at bit j."""
        columns = list(columns)
        rows = [0] * nrows
        for j, col in enumerate(columns):
            if col.length != nrows:
                raise ValueError("column length does not match nrows")
            v = col.value
            r = 0
            while v:
                if v & 1:
                    rows[r] |= 1 << j
                v >>= 1
                r += 1
        return cls(nrows, len(columns), tuple(rows))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> BitMatrix:
        return cls(nrows, ncols, (0,) * nrows)

    def column(self, j: int) -> BitVec:
        return BitVec(self.nrows, sum(((row >> j) & 1) << r for r, row in enumerate(self.rows)))

    def to_array(self) -> np.ndarray:
        return np.array([[(row >> c) & 1 for c in range(self.ncols)] for row in self.rows],
                        dtype=np.uint8)

    def matvec(self, a: BitVec) -> BitVec:
        if a.length != self.ncols:
            raise ValueError("length mismatch")
        out = 0
        for r, row in enumerate(self.rows):
            out |= (bin(row & a.value).count("1") & 1) << r
        return BitVec(self.nrows, out)


def rank(B: BitMatrix) -> int:
    work = list(B.rows)
    r = 0
    for col in range(B.ncols):
        bit = 1 << col
        pivot = next((i for i in range(r, len(work)) if work[i] & bit), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        for i in range(len(work)):
            if i != r and work[i] & bit:
                work[i] ^= work[r]
        r += 1
        if r == len(work):
            break
    return r


def solve_gaussian(B: BitMatrix, b: BitVec) -> BitVec:
    """Return the unique ``a`` with ``B a = b`` over GF(2).

    Raises SingularMatrixError when B is not square and invertible.
    """
    if B.nrows != B.ncols:
        raise SingularMatrixError("no unique solution: matrix is not square")
    if b.length != B.nrows:
        raise ValueError(f"length mismatch: {b.length} vs {B.nrows}")
    n = B.ncols
    # augmented column lives at bit n
    work = [row | (((b.value >> r) & 1) << n) for r, row in enumerate(B.rows)]
    for col in range(n):
        bit = 1 << col
        pivot = next((i for i in range(col, n) if work[i] & bit), None)
        if pivot is None:
            raise SingularMatrixError("no unique solution: matrix is singular")
        work[col], work[pivot] = work[pivot], work[col]
        for i in range(n):
            if i != col and work[i] & bit:
                work[i] ^= work[col]
    return BitVec(n, sum(((work[i] >> n) & 1) << i for i in range(n)))


def subset_xor_transform(f: np.ndarray) -> np.ndarray:
    """GF(2) zeta transform: out[s] = XOR of f[t] over all submasks t of s.

    Self-inverse; ``len(f)`` must be a power of two.
    """
    f = np.array(f, dtype=np.uint8) & 1
    size = f.size
    if size == 0 or size & (size - 1):
        raise ValueError(f"length {size} is not a power of two")
    step = 1
    while step < size:
        v = f.reshape(-1, 2, step)
        v[:, 1, :] ^= v[:, 0, :]
        step <<= 1
    return f


def reverse_bits(x: int, n: int) -> int:
    out = 0
    for _ in range(n):
        out = (out << 1) | (x & 1)
        x >>= 1
    return out


def subset_xor_solve(n: int, b: BitVec) -> BitVec:
    """Coefficients of ``b`` in the C^kZ basis via the subset-XOR transform.

    Same answer as ``solve_gaussian(basis_matrix(n), b)`` in O(n 2^n).
    """
    size = 1 << n
    if b.length != size - 1:
        raise ValueError(f"expected length {size - 1} for n={n}, got {b.length}")
    f = np.zeros(size, dtype=np.uint8)
    f[1:] = [(b.value >> (m - 1)) & 1 for m in range(1, size)]
    c = subset_xor_transform(f)
    value = 0
    for i in range(1, size):
        if c[reverse_bits(i, n)]:
            value |= 1 << (i - 1)
    return BitVec(size - 1, value)
