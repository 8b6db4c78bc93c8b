"""Synthesis of diagonal Hermitian gates from multiple-controlled Z gates."""
from .circuit import (Circuit, CostReport, Gate, GateKind, count_gates, emit_qasm, emit_text,
                      parse_text)
from .diag import DiagonalHermitian, from_id, matrix_id, normalize, parse_binary, parse_signs
from .lowering import lower_ckz, lower_selection
from .baseline import baseline_circuit, baseline_cost
from .sim import equal_up_to_phase, unitary_of
from .synth import CzSelection, decompose, reconstruct

__version__ = "0.1.0"

__all__ = [
    "Circuit", "CostReport", "Gate", "GateKind", "count_gates", "emit_qasm", "emit_text",
    "parse_text", "DiagonalHermitian", "from_id", "matrix_id", "normalize", "parse_binary",
    "parse_signs", "lower_ckz", "lower_selection", "baseline_circuit", "baseline_cost",
    "equal_up_to_phase", "unitary_of", "CzSelection", "decompose", "reconstruct",
]
