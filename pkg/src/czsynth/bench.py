"""
Proposed-vs-baseline comparison over diagonal Hermitian gates.

Contains:
    - compare_one(): both pipelines, both verifications, one ComparisonRow
    - sweep(): every gate for n (or a random sample), with summary averages
    - write_csv() / format_summary()
    - REFERENCE_ROWS: the reference comparison rows, used as golden data

Improvement is 100 * (base - prop) / base.  When base is 0 the row's value
is undefined and left blank in the CSV.  The headline averages take the
mean over every gate, counting a 0/0 row as 0; the mean over defined rows
only and the ratio of sums are reported alongside.
"""
from __future__ import annotations

import csv
import io
import math
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .baseline import baseline_circuit
from .circuit import count_gates
from .diag import DiagonalHermitian, from_id
from .lowering import DEFAULT_MODEL, lower_ckz, lower_selection
from .sim import TOL_EXACT, TOL_SOLVED, max_deviation, unitary_of
from .synth import decompose, reconstruct

CSV_COLUMNS = ["n", "matrix_id", "basis", "prop_cz", "prop_1q", "base_cz", "base_1q",
               "imp_cz_pct", "imp_1q_pct"]


class VerificationError(RuntimeError):
    pass


@dataclass(frozen=True)
class ComparisonRow:
    n: int
    matrix_id: int
    basis: tuple[int, ...]
    prop_cz: int
    prop_1q: int
    base_cz: int
    base_1q: int
    prop_dev: float = field(default=0.0, compare=False)
    base_dev: float = field(default=0.0, compare=False)

    @property
    def imp_cz_pct(self) -> float | None:
        return improvement(self.base_cz, self.prop_cz)

    @property
    def imp_1q_pct(self) -> float | None:
        return improvement(self.base_1q, self.prop_1q)

    def csv_fields(self) -> list[str]:
        def pct(v):
            return "" if v is None else f"{v:.1f}"
        return [str(self.n), str(self.matrix_id), "+".join(map(str, self.basis)),
                str(self.prop_cz), str(self.prop_1q), str(self.base_cz), str(self.base_1q),
                pct(self.imp_cz_pct), pct(self.imp_1q_pct)]


def improvement(base: int, prop: int) -> float | None:
    if base == 0:
        return None
    return 100.0 * (base - prop) / base


@lru_cache(maxsize=None)
def _block_unitary(n: int, mask: int) -> np.ndarray:
    return unitary_of(lower_ckz(n, mask))


def _proposed_unitary(n: int, masks) -> np.ndarray:
    # the lowered circuit is the concatenation of per-mask blocks
    u = np.eye(1 << n, dtype=complex)
    for m in masks:
        u = _block_unitary(n, m) @ u
    return u


def compare_one(n: int, matrix_id: int, backend: str = "subset",
                tol_prop: float = TOL_EXACT, tol_base: float = TOL_SOLVED) -> ComparisonRow:
    d = from_id(matrix_id, n)
    sel = decompose(d, backend)
    if reconstruct(sel) != d:
        raise VerificationError(f"n={n} id={matrix_id}: selection does not rebuild the gate")
    _, prop = lower_selection(sel, DEFAULT_MODEL)
    prop_dev = max_deviation(_proposed_unitary(n, sel.masks), d.diagonal())
    if prop_dev > tol_prop:
        raise VerificationError(f"n={n} id={matrix_id}: proposed circuit off by {prop_dev:.3g}")
    bc = baseline_circuit(d)
    base = count_gates(bc)
    base_dev = max_deviation(unitary_of(bc), d.diagonal())
    if base_dev > tol_base:
        raise VerificationError(f"n={n} id={matrix_id}: baseline circuit off by {base_dev:.3g}")
    return ComparisonRow(n, matrix_id, tuple(sel.masks), prop.cz, prop.rotations,
                         base.cz, base.rotations, prop_dev, base_dev)


@dataclass(frozen=True)
class SweepResult:
    n: int
    rows: tuple[ComparisonRow, ...]

    def _mean(self, metric: str, zero_over_zero: bool) -> float:
        vals = []
        for r in self.rows:
            base, prop = (r.base_cz, r.prop_cz) if metric == "cz" else (r.base_1q, r.prop_1q)
            imp = improvement(base, prop)
            if imp is None:
                if zero_over_zero and prop == 0:
                    vals.append(0.0)
                continue
            vals.append(imp)
        return float(np.mean(vals)) if vals else math.nan

    @property
    def mean_cz(self) -> float:
        return self._mean("cz", True)

    @property
    def mean_1q(self) -> float:
        return self._mean("1q", True)

    @property
    def mean_cz_defined(self) -> float:
        return self._mean("cz", False)

    @property
    def mean_1q_defined(self) -> float:
        return self._mean("1q", False)

    def ratio_of_sums(self) -> tuple[float, float]:
        def rs(base, prop):
            return 100.0 * (base - prop) / base if base else math.nan
        return (rs(sum(r.base_cz for r in self.rows), sum(r.prop_cz for r in self.rows)),
                rs(sum(r.base_1q for r in self.rows), sum(r.prop_1q for r in self.rows)))


def _compare_chunk(args):
    n, ids, backend = args
    return [compare_one(n, i, backend) for i in ids]


def sweep(n: int, backend: str = "subset", sample: int | None = None, seed: int = 0,
          workers: int = 1) -> SweepResult:
    """Compare every gate on n qubits, or ``sample`` distinct random ones."""
    total = 1 << ((1 << n) - 1)
    if sample is None:
        if n > 4:
            raise ValueError("exhaustive sweeps are limited to n <= 4; pass sample=")
        ids = list(range(total))
    else:
        rng = random.Random(seed)
        ids = sorted(rng.sample(range(total), min(sample, total)))
    if workers > 1 and len(ids) > 256:
        size = math.ceil(len(ids) / (workers * 4))
        chunks = [(n, ids[k:k + size], backend) for k in range(0, len(ids), size)]
        with ProcessPoolExecutor(workers) as pool:
            rows = [r for part in pool.map(_compare_chunk, chunks) for r in part]
    else:
        rows = _compare_chunk((n, ids, backend))
    rows.sort(key=lambda r: r.matrix_id)
    return SweepResult(n, tuple(rows))


def write_csv(rows, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow(r.csv_fields())


def csv_text(rows) -> str:
    buf = io.StringIO()
    write_csv(rows, buf)
    return buf.getvalue()


def format_summary(res: SweepResult) -> str:
    rs_cz, rs_1q = res.ratio_of_sums()
    return "\n".join([
        f"n={res.n} gates={len(res.rows)}",
        f"mean improvement: cz {res.mean_cz:.1f}%  1q {res.mean_1q:.1f}%",
        f"mean over defined rows: cz {res.mean_cz_defined:.1f}%  1q {res.mean_1q_defined:.1f}%",
        f"ratio of sums: cz {rs_cz:.1f}%  1q {rs_1q:.1f}%",
    ])


# Reference averages for exhaustive sweeps: n -> (cz %, 1q %)
REFERENCE_AVERAGES = {2: (37.4, 34.3), 3: (10.9, 31.0), 4: (4.6, 24.7)}


@dataclass(frozen=True)
class TableRow:
    """One reference comparison row.  ``table_id`` is the id as printed; the
    four-qubit rows count the first diagonal entry as bit 0, so their
    ``matrix_id`` here is table_id / 2."""
    n: int
    table_id: int
    basis: frozenset[int]
    prop: tuple[int, int]
    angles_pi: tuple[Fraction, ...]
    base: tuple[int, int]
    imp: tuple[float, float]

    @property
    def matrix_id(self) -> int:
        return self.table_id // 2 if self.n == 4 else self.table_id

    @property
    def angles(self) -> np.ndarray:
        return np.array([float(a) * math.pi for a in self.angles_pi])

    def gate(self) -> DiagonalHermitian:
        return from_id(self.matrix_id, self.n)


def _row(n, tid, basis, prop, angles, base, imp):
    return TableRow(n, tid, frozenset(basis), prop,
                    tuple(Fraction(a) for a in angles.split()), base, imp)


REFERENCE_ROWS = (
    _row(2, 1, {2, 3}, (1, 3), "-1/2 1/2 1/2", (2, 12), (50, 75)),
    _row(2, 2, {1, 3}, (1, 3), "1/2 1/2 -1/2", (2, 12), (50, 75)),
    _row(2, 3, {1, 2}, (0, 6), "0 1 0", (2, 9), (100, 33.3)),
    _row(2, 4, {3}, (1, 0), "1/2 -1/2 1/2", (2, 12), (50, 100)),
    _row(2, 7, {1, 2, 3}, (1, 6), "1/2 1/2 1/2", (2, 12), (50, 50)),
    _row(3, 15, {1, 2, 4, 6}, (1, 9), "-1/2 1/2 0 1/2 1/2 0 0", (6, 24), (83.3, 62.5)),
    _row(3, 18, {2, 3, 5, 6}, (3, 3), "0 1/2 0 -1/2 0 1/2 0", (6, 21), (50, 85.7)),
    _row(3, 20, {5, 6}, (2, 0), "0 1/2 0 0 -1/2 0 1/2", (6, 18), (66.6, 100)),
    _row(3, 27, {1, 2, 4, 5}, (1, 9), "0 1/2 -1/2 0 1/2 1/2 0", (6, 21), (83.3, 57.1)),
    _row(3, 45, {1, 4}, (0, 6), "0 0 0 1 0 0 0", (2, 9), (100, 33.3)),
    _row(3, 51, {2, 4}, (0, 6), "0 0 0 0 0 1 0", (2, 9), (100, 33.3)),
    _row(3, 54, {2, 5}, (1, 3), "0 1/2 1/2 0 -1/2 1/2 0", (6, 21), (83.3, 85.7)),
    _row(3, 65, {4, 5, 6}, (2, 3), "0 -1/2 0 0 1/2 0 1/2", (6, 18), (66.6, 83.3)),
    _row(3, 99, {2, 4, 5}, (1, 6), "0 -1/2 1/2 0 1/2 1/2 0", (6, 21), (83.3, 71.4)),
    _row(3, 113, {3, 4, 6}, (2, 3), "1/2 -1/2 0 0 0 1/2 1/2", (4, 21), (50, 85.7)),
    _row(4, 4680, {3, 6, 9, 12}, (4, 0),
         "0 0 0 1/2 0 0 0 0 0 -1/2 0 1/2 0 0 0", (8, 15), (50, 100)),
    _row(4, 10376, {11, 12}, (7, 27),
         "0 0 0 1/4 -1/4 1/4 1/4 0 -1/4 1/4 0 0 -1/4 -1/4 1/2", (10, 33), (30, 18.1)),
    _row(4, 14602, {1, 5, 8, 10}, (2, 6),
         "1/4 -1/4 -1/4 1/4 -1/4 1/4 -1/4 1/4 1/4 1/4 1/4 1/4 -1/4 -1/4 1/4", (14, 54),
         (85.7, 88.8)),
    _row(4, 21760, {1, 9}, (1, 3),
         "1/2 0 0 0 0 0 0 1/2 0 0 0 0 0 0 -1/2", (2, 9), (50, 66.6)),
    _row(4, 23280, {2, 9}, (1, 3),
         "0 1/2 1/2 0 0 0 0 0 0 0 -1/2 1/2 0 0 0", (6, 18), (83.3, 83.3)),
    _row(4, 24428, {1, 4, 5, 10}, (2, 6),
         "1/4 1/4 -1/4 1/4 1/4 1/4 1/4 1/4 1/4 -1/4 -1/4 1/4 -1/4 1/4 -1/4", (14, 54),
         (85.7, 88.8)),
    _row(4, 27030, {1, 2, 4, 8}, (0, 12),
         "0 0 0 0 0 0 0 0 0 0 0 1 0 0 0", (6, 6), (100, -100)),
    _row(4, 38460, {2, 4, 9}, (1, 6),
         "0 0 0 0 1/2 1/2 0 0 0 -1/2 0 0 1/2 0 0", (10, 24), (90, 75)),
    _row(4, 40044, {3, 4, 10}, (2, 3),
         "0 0 0 0 0 1/2 1/2 0 1/2 -1/2 0 0 0 0 0", (8, 40), (75, 92.5)),
    _row(4, 43520, {9}, (1, 0),
         "1/2 0 0 0 0 0 0 -1/2 0 0 0 0 0 0 1/2", (2, 9), (50, 100)),
    _row(4, 49258, {6, 8, 9}, (2, 3),
         "-1/4 -1/4 1/4 -1/4 1/4 -1/4 1/4 1/4 1/4 -1/4 1/4 1/4 -1/4 1/4 1/4", (14, 54),
         (85.7, 94.4)),
    _row(4, 51884, {4, 5, 6, 9, 10}, (4, 3),
         "0 0 0 0 1/2 0 1/2 0 0 0 -1/2 0 0 0 1/2", (8, 15), (50, 80)),
    _row(4, 63120, {2, 5, 6, 9, 10}, (4, 3),
         "1/2 0 1/2 0 0 0 0 0 -1/2 0 0 0 1/2 0 0", (6, 18), (33.3, 83.3)),
    _row(4, 63916, {1, 4, 6, 9, 10}, (3, 6),
         "1/4 -1/4 1/4 1/4 1/4 1/4 1/4 1/4 1/4 1/4 -1/4 -1/4 -1/4 -1/4 1/4", (14, 54),
         (78.5, 88.8)),
    _row(4, 64598, {2, 4, 6, 8, 9}, (2, 9),
         "1/4 -1/4 1/4 -1/4 -1/4 1/4 1/4 -1/4 1/4 1/4 1/4 1/4 1/4 1/4 -1/4", (14, 54),
         (85.7, 83.3)),
)


def table_row(n: int, table_id: int) -> TableRow:
    for r in REFERENCE_ROWS:
        if r.n == n and r.table_id == table_id:
            return r
    raise KeyError(f"no reference row for n={n} id={table_id}")


def baseline_diff_report(rows=REFERENCE_ROWS) -> tuple[int, list[str]]:
    """Compare baseline counts with the reference rows.

    Returns (number of exact matches, one line per mismatch).
    """
    matches, lines = 0, []
    for r in rows:
        got = tuple(count_gates(baseline_circuit(r.gate())))
        if got == r.base:
            matches += 1
        else:
            lines.append(f"n={r.n} id={r.table_id}: reference {r.base}, computed {got}")
    return matches, lines
