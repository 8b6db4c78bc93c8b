import itertools
import math

import numpy as np
import pytest

from czsynth.circuit import Circuit, Gate, GateKind, ckz, cknot, cnot, cz, h, rx, rz, t, z
from czsynth.lowering import toffoli_z
from czsynth.sim import (diagonal_of, equal_up_to_phase, gate_matrix, is_unitary, max_deviation,
                         unitary_of)

from conftest import direct_ckz_diagonal


def random_unitary(dim, rng):
    q, r = np.linalg.qr(rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim)))
    return q * (np.diag(r) / abs(np.diag(r)))


class TestGateMatrix:
    def test_cz(self):
        np.testing.assert_array_equal(gate_matrix(cz(0, 1), 2), np.diag([1, 1, 1, -1]))

    def test_rx0(self):
        np.testing.assert_allclose(gate_matrix(rx(0, 0.0), 1), np.eye(2))

    def test_c2z(self):
        np.testing.assert_array_equal(gate_matrix(ckz((0, 1, 2)), 3),
                                      np.diag([1, 1, 1, 1, 1, 1, 1, -1]))

    def test_wire0_is_msb(self):
        np.testing.assert_array_equal(np.diag(gate_matrix(z(0), 2)), [1, 1, -1, -1])

    def test_cnot(self):
        expect = np.eye(4)[[0, 1, 3, 2]]
        np.testing.assert_array_equal(gate_matrix(cnot(0, 1), 2), expect)

    def test_cknot(self):
        u = gate_matrix(cknot((0, 2), 1), 3)
        # |101> <-> |111>
        assert u[7, 5] == 1 and u[5, 7] == 1 and u[0, 0] == 1

    def test_out_of_width(self):
        with pytest.raises(ValueError):
            gate_matrix(cz(0, 3), 2)


class TestUnitaryOf:
    def test_hh(self):
        np.testing.assert_allclose(unitary_of(Circuit(1, (h(0), h(0)))), np.eye(2), atol=1e-15)

    def test_fig2(self):
        u = unitary_of(Circuit(3, tuple(toffoli_z(0, 1, 2))))
        assert equal_up_to_phase(u, np.diag(direct_ckz_diagonal(3, (0, 1, 2))), 1e-10)

    def test_cz_rewrite(self):
        u = unitary_of(Circuit(2, (h(1), cnot(0, 1), h(1))))
        assert max_deviation(u, np.diag([1, 1, 1, -1])) <= 1e-15
        # exact, not just up to phase
        np.testing.assert_allclose(u, np.diag([1, 1, 1, -1]), atol=1e-15)

    def test_order_leftmost_first(self):
        c1, c2 = Circuit(2, (h(0),)), Circuit(2, (t(0), cz(0, 1)))
        np.testing.assert_allclose(unitary_of(c1 + c2), unitary_of(c2) @ unitary_of(c1),
                                   atol=1e-12)

    def test_width_guard(self):
        with pytest.raises(ValueError):
            unitary_of(Circuit(13))

    def test_unitary(self):
        rng = np.random.default_rng(2)
        gates = [rx(int(rng.integers(3)), rng.normal()) for _ in range(5)] + [cz(0, 2), h(1)]
        assert is_unitary(unitary_of(Circuit(3, tuple(gates))))


class TestPhaseEquality:
    def test_global_phase(self):
        u = random_unitary(4, np.random.default_rng(0))
        assert equal_up_to_phase(u, np.exp(1j * math.pi / 7) * u)

    def test_minus(self):
        zm = np.diag([1, -1])
        assert equal_up_to_phase(zm, -zm)

    def test_z_vs_x(self):
        assert not equal_up_to_phase(np.diag([1, -1]), np.array([[0, 1], [1, 0]]))

    def test_diagonal_vs_matrix(self):
        d = np.array([1, -1, 1, 1])
        assert equal_up_to_phase(np.diag(d) * 1j, d)

    def test_equivalence_relation(self):
        rng = np.random.default_rng(7)
        tol = 1e-10
        us = [random_unitary(4, rng) for _ in range(3)]
        items = us + [np.exp(1j * rng.uniform(0, 6)) * u for u in us]
        for a in items:
            assert equal_up_to_phase(a, a, tol)
        for a, b in itertools.product(items, repeat=2):
            assert equal_up_to_phase(a, b, tol) == equal_up_to_phase(b, a, tol)
        for a, b, c in itertools.product(items, repeat=3):
            if equal_up_to_phase(a, b, tol) and equal_up_to_phase(b, c, tol):
                assert equal_up_to_phase(a, c, 2 * tol)

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            max_deviation(np.eye(2), np.eye(4))


def _diag_gates(n, rng, count):
    out = []
    for _ in range(count):
        k = int(rng.integers(0, 4))
        wires = [int(w) for w in rng.permutation(n)]
        if k == 0:
            out.append(rz(wires[0], rng.normal()))
        elif k == 1:
            out.append(Gate(GateKind(rng.choice(["t", "tdg", "z"])), (wires[0],)))
        elif k == 2 and n >= 2:
            out.append(cz(wires[0], wires[1]))
        else:
            out.append(ckz(wires[:int(rng.integers(1, n + 1))]))
    return out


def test_fast_path_exhaustive_small():
    # every sequence of up to two C^kZ gates for n <= 3
    for n in (1, 2, 3):
        gates = [ckz(ws) for k in range(1, n + 1) for ws in itertools.combinations(range(n), k)]
        for seq in itertools.chain([()], ((g,) for g in gates), itertools.product(gates, repeat=2)):
            c = Circuit(n, tuple(seq))
            np.testing.assert_allclose(np.diag(unitary_of(c)), diagonal_of(c), atol=1e-14)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_fast_path_random(n):
    rng = np.random.default_rng(n)
    for _ in range(20):
        c = Circuit(n, tuple(_diag_gates(n, rng, 10)))
        u = unitary_of(c)
        np.testing.assert_allclose(u, np.diag(diagonal_of(c)), atol=1e-12)


def test_fast_path_rejects_non_diagonal():
    with pytest.raises(ValueError):
        diagonal_of(Circuit(1, (h(0),)))
