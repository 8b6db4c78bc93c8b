"""Command-line front end: decompose, verify, compare, enumerate."""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .bench import VerificationError, compare_one, format_summary, sweep, write_csv
from .circuit import CircuitError, emit_qasm, emit_text, parse_text
from .diag import DiagonalHermitian, from_id, matrix_id, normalize, parse_binary, parse_signs
from .lowering import lower_selection
from .sim import TOL_EXACT, max_deviation, unitary_of
from .synth import BACKENDS, decompose

TOL_ENV = "CZSYNTH_TOL"
PROG = "czsynth"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _gate_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, help="number of qubits (required with --id)")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--id", type=int, help="decimal matrix id (bit m-1 set when entry m is -1)")
    g.add_argument("--table-id", type=int,
                   help="id as printed in the reference comparison table")
    g.add_argument("--diag", help='comma-separated signs, e.g. "+,+,-,+"')
    g.add_argument("--binary", help='binary representation, e.g. "100"')


def _gate_from(args) -> DiagonalHermitian:
    if args.diag is not None:
        return parse_signs(args.diag, args.n)
    if args.binary is not None:
        return parse_binary(args.binary, args.n)
    if args.id is None and args.table_id is None:
        raise UsageError("give one of --id, --table-id, --diag, --binary")
    if args.n is None:
        raise UsageError("--n is required with --id / --table-id")
    if args.id is not None:
        return from_id(args.id, args.n)
    if args.n == 4 and args.table_id % 2:
        raise ValueError("four-qubit table ids are even")
    return from_id(args.table_id // 2 if args.n == 4 else args.table_id, args.n)


def _default_tol() -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return TOL_EXACT
    try:
        return float(raw)
    except ValueError:
        raise UsageError(f"{TOL_ENV}={raw!r} is not a number") from None


def _write(out: str, text: str) -> None:
    if out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def cmd_decompose(args) -> int:
    d = _gate_from(args)
    nd = normalize(d)
    sel = decompose(nd, args.backend)
    circ, cost = lower_selection(sel)
    text = emit_qasm(circ) if args.format == "qasm" else emit_text(circ)
    print(f"basis: {sel.label()}")
    if nd.global_phase_flipped:
        print("global phase: -1")
    print(f"cost: cz={cost.cz} 1q={cost.rotations}")
    _write(args.out or "-", text)
    return 0


def cmd_verify(args) -> int:
    src = sys.stdin.read() if args.circuit == "-" else Path(args.circuit).read_text()
    circ = parse_text(src)
    d = _gate_from(args)
    if circ.width != d.n:
        raise ValueError(f"circuit has {circ.width} qubits, gate has {d.n}")
    tol = args.tol if args.tol is not None else _default_tol()
    dev = max_deviation(unitary_of(circ), d.diagonal())
    ok = dev <= tol
    print(f"max deviation: {dev:.3e} ({'ok' if ok else 'MISMATCH'} at tol {tol:g})")
    return 0 if ok else 1


def cmd_compare(args) -> int:
    d = normalize(_gate_from(args))
    row = compare_one(d.n, matrix_id(d), args.backend)

    def pct(v):
        return "n/a" if v is None else f"{v:.1f}%"
    print(f"n={row.n} id={row.matrix_id} basis: {'+'.join(map(str, row.basis))}")
    print(f"proposed: cz={row.prop_cz} 1q={row.prop_1q}")
    print(f"baseline: cz={row.base_cz} 1q={row.base_1q}")
    print(f"improvement: cz {pct(row.imp_cz_pct)} 1q {pct(row.imp_1q_pct)}")
    return 0


def cmd_enumerate(args) -> int:
    if args.sample is None and not 1 <= args.n <= 4:
        raise UsageError("exhaustive enumeration needs --n in 1..4; use --sample for larger n")
    res = sweep(args.n, args.backend, sample=args.sample, seed=args.seed, workers=args.workers)
    summary = format_summary(res) + "\n"
    if args.out == "-":
        write_csv(res.rows, sys.stdout)
        sys.stderr.write(summary)
    else:
        with open(args.out, "w", newline="") as fh:
            write_csv(res.rows, fh)
        sys.stdout.write(summary)
    if args.figure:
        from .plotting import write_figures
        for p in write_figures(res, args.figure):
            print(f"figure: {p}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog=PROG, description="Synthesize diagonal Hermitian gates from C^kZ gates.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("decompose", help="decompose a gate and print the lowered circuit")
    _gate_args(d)
    d.add_argument("--backend", choices=BACKENDS, default="subset")
    d.add_argument("--format", choices=("text", "qasm"), default="text")
    d.add_argument("--out", help="write the circuit here ('-' for stdout)")
    d.set_defaults(func=cmd_decompose)

    v = sub.add_parser("verify", help="check a circuit file against a gate")
    v.add_argument("circuit", help="circuit text file ('-' for stdin)")
    _gate_args(v)
    v.add_argument("--tol", type=float, help=f"tolerance (default 1e-10, or ${TOL_ENV})")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("compare", help="proposed vs baseline counts for one gate")
    _gate_args(c)
    c.add_argument("--backend", choices=BACKENDS, default="subset")
    c.set_defaults(func=cmd_compare)

    e = sub.add_parser("enumerate", help="sweep gates and write the comparison CSV")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--out", default="-", help="CSV path ('-' for stdout)")
    e.add_argument("--backend", choices=BACKENDS, default="subset")
    e.add_argument("--sample", type=int, help="compare this many random gates instead")
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--workers", type=int, default=1)
    e.add_argument("--figure", help="also write <FIGURE>_hist.png and <FIGURE>_scatter.png")
    e.set_defaults(func=cmd_enumerate)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except (UsageError, ValueError, CircuitError, OSError, KeyError) as exc:
        msg = str(exc).strip().splitlines()[0] if str(exc).strip() else type(exc).__name__
        print(f"{PROG}: error: {msg}", file=sys.stderr)
        return 2
    except VerificationError as exc:
        print(f"{PROG}: verification failed: {exc}", file=sys.stderr)
        return 1

