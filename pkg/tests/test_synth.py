import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from czsynth.circuit import Circuit, GateKind, cz, z
from czsynth.diag import DiagonalHermitian, binary_of, from_id, matrix_id
from czsynth.sim import diagonal_of, max_deviation
from czsynth.synth import CzSelection, decompose, reconstruct, selection_to_circuit


class TestDecompose:
    def test_example(self):
        d = DiagonalHermitian(2, (1, 1, -1, 1))
        assert decompose(d).masks == [1, 3]

    def test_identity(self):
        assert decompose(DiagonalHermitian.identity(3)).masks == []

    def test_id20(self):
        assert decompose(from_id(20, 3)).masks == [5, 6]

    def test_id10376(self):
        assert decompose(from_id(10376 // 2, 4)).masks == [11, 12]

    def test_requires_normalized(self):
        with pytest.raises(ValueError):
            decompose(DiagonalHermitian(1, (-1, 1)))

    def test_unknown_backend(self):
        with pytest.raises(ValueError):
            decompose(from_id(1, 2), "magic")

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_backends_agree(self, n):
        for i in range(1 << ((1 << n) - 1)):
            d = from_id(i, n)
            assert decompose(d, "subset") == decompose(d, "gaussian")


class TestCircuit:
    def test_example(self):
        c = selection_to_circuit(CzSelection(2, {1, 3}))
        assert c == Circuit(2, (z(0), cz(0, 1)))

    def test_empty(self):
        assert selection_to_circuit(CzSelection(3, set())) == Circuit(3)

    def test_four_cz(self):
        c = selection_to_circuit(CzSelection(4, {3, 6, 9, 12}))
        assert [g.kind for g in c.gates] == [GateKind.CZ] * 4

    def test_bad_mask(self):
        with pytest.raises(ValueError):
            CzSelection(2, {4})


class TestReconstruct:
    def test_example(self):
        assert reconstruct(CzSelection(2, {1, 3})).signs == (1, 1, -1, 1)

    def test_empty(self):
        assert reconstruct(CzSelection(3, set())) == DiagonalHermitian.identity(3)

    def test_id18(self):
        assert matrix_id(reconstruct(CzSelection(3, {2, 3, 5, 6}))) == 18

    def test_label(self):
        assert CzSelection(3, {6, 5}).label() == "5+6"


@pytest.mark.parametrize("n", [2, 3])
def test_simulation_matches(n):
    for i in range(1 << ((1 << n) - 1)):
        d = from_id(i, n)
        c = selection_to_circuit(decompose(d))
        assert max_deviation(diagonal_of(c), d.diagonal()) <= 1e-12


def test_simulation_matches_random_n4():
    rng = np.random.default_rng(4)
    for i in rng.integers(0, 1 << 15, 200):
        d = from_id(int(i), 4)
        assert max_deviation(diagonal_of(selection_to_circuit(decompose(d))), d.diagonal()) == 0


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 6), st.data())
def test_bijective(n, data):
    masks = data.draw(st.sets(st.integers(1, (1 << n) - 1)))
    s = CzSelection(n, masks)
    assert decompose(reconstruct(s)) == s


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 6), st.data())
def test_reconstruct_inverts_decompose(n, data):
    i = data.draw(st.integers(0, (1 << ((1 << n) - 1)) - 1))
    d = from_id(i, n)
    assert reconstruct(decompose(d)) == d
    assert binary_of(reconstruct(decompose(d))) == binary_of(d)
