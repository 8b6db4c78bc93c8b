import itertools

import numpy as np
import pytest

from czsynth.diag import (DiagonalHermitian, GateMask, basis_matrix, binary_of, czi_binary,
                          diagmat_of, from_id, matrix_id, normalize, parse_binary, parse_signs)
from czsynth.gf2 import BitVec, rank, xor_combine

from conftest import direct_ckz_diagonal


def D(*signs):
    return DiagonalHermitian(int(np.log2(len(signs))), signs)


def bv(*bits):
    return BitVec.from_tuple(bits)


class TestNormalize:
    def test_flip(self):
        d = normalize(D(-1, 1, 1, 1))
        assert d.signs == (1, -1, -1, -1) and d.global_phase_flipped

    def test_unchanged(self):
        d = normalize(D(1, 1, -1, 1))
        assert d.signs == (1, 1, -1, 1) and not d.global_phase_flipped

    def test_all_minus(self):
        d = normalize(D(-1, -1, -1, -1))
        assert d.signs == DiagonalHermitian.identity(2).signs and d.global_phase_flipped

    def test_phase_tracked_in_matrix(self):
        d = D(-1, 1, 1, -1)
        np.testing.assert_array_equal(normalize(d).matrix(), d.matrix())


class TestBinary:
    def test_cz(self):
        assert binary_of(D(1, 1, 1, -1)) == bv(1, 0, 0)

    def test_example(self):
        assert binary_of(D(1, 1, -1, 1)) == bv(0, 1, 0)

    def test_identity(self):
        assert binary_of(DiagonalHermitian.identity(3)) == BitVec(7, 0)

    def test_needs_normalized(self):
        with pytest.raises(ValueError):
            binary_of(D(-1, 1, 1, 1))

    def test_diagmat(self):
        assert diagmat_of(bv(1, 0, 0), 2) == D(1, 1, 1, -1)
        assert diagmat_of(BitVec(3, 0), 2) == DiagonalHermitian.identity(2)
        assert diagmat_of(bv(1, 1, 1), 2) == D(1, -1, -1, -1)

    def test_diagmat_length(self):
        with pytest.raises(ValueError):
            diagmat_of(bv(1, 0), 2)


class TestIds:
    def test_cz_is_4(self):
        assert matrix_id(D(1, 1, 1, -1)) == 4

    def test_identity_is_0(self):
        assert matrix_id(DiagonalHermitian.identity(4)) == 0

    def test_id18(self):
        d = from_id(18, 3)
        assert [m for m, s in enumerate(d.signs) if s == -1] == [2, 5]

    def test_out_of_range(self):
        with pytest.raises(ValueError, match="out of range"):
            from_id(8, 2)
        with pytest.raises(ValueError):
            from_id(-1, 2)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_round_trips_exhaustive(self, n):
        for i in range(1 << ((1 << n) - 1)):
            d = from_id(i, n)
            assert matrix_id(d) == i
            assert diagmat_of(binary_of(d), n) == d


class TestCzi:
    def test_example_vectors(self):
        assert czi_binary(2, 1) == bv(1, 1, 0)
        assert czi_binary(2, 2) == bv(1, 0, 1)
        assert czi_binary(2, 3) == bv(1, 0, 0)

    def test_n3_mask5(self):
        # mask 5 touches wires 0 and 2, the 4s and 1s bits of the state index
        assert czi_binary(3, 5).positions() == [5, 7]

    def test_bad_mask(self):
        with pytest.raises(ValueError):
            czi_binary(2, 0)
        with pytest.raises(ValueError):
            czi_binary(2, 4)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_matches_direct_construction(self, n):
        for i in range(1, 1 << n):
            wires = GateMask(n, i).wires
            d = DiagonalHermitian(n, tuple(int(s) for s in direct_ckz_diagonal(n, wires)))
            assert czi_binary(n, i) == binary_of(d)

    def test_gatemask(self):
        g = GateMask(4, 0b1011)
        assert g.wires == (0, 1, 3) and g.popcount == 3 and g.controls == 2


class TestBasisMatrix:
    def test_n2_columns(self):
        B = basis_matrix(2)
        assert [B.column(j).to_tuple() for j in range(3)] == [(1, 1, 0), (1, 0, 1), (1, 0, 0)]

    def test_n1(self):
        B = basis_matrix(1)
        assert (B.nrows, B.ncols) == (1, 1) and B.column(0) == bv(1)

    def test_n3_full_rank(self):
        assert rank(basis_matrix(3)) == 7


class TestProductSemantics:
    def test_exhaustive_pairs_n2(self):
        for i, j in itertools.product(range(8), repeat=2):
            a, b = from_id(i, 2), from_id(j, 2)
            prod = tuple(x * y for x, y in zip(a.signs, b.signs))
            assert diagmat_of(xor_combine([binary_of(a), binary_of(b)]), 2).signs == prod

    @pytest.mark.parametrize("n", [3, 4])
    def test_random_multisets(self, n):
        rng = np.random.default_rng(n)
        top = 1 << ((1 << n) - 1)
        for _ in range(200):
            ds = [from_id(int(i), n) for i in rng.integers(0, top, rng.integers(1, 6))]
            prod = np.prod([d.signs for d in ds], axis=0)
            got = diagmat_of(xor_combine([binary_of(d) for d in ds]), n)
            assert got.signs == tuple(int(s) for s in prod)


class TestParse:
    def test_signs(self):
        assert parse_signs("+,+,-,+") == D(1, 1, -1, 1)
        assert parse_signs("1, 1, -1, 1") == D(1, 1, -1, 1)

    def test_binary(self):
        assert parse_binary("010") == D(1, 1, -1, 1)
        assert parse_binary("100") == D(1, 1, 1, -1)

    @pytest.mark.parametrize("text", ["+,+,-", "+,*,+,+", ""])
    def test_bad_signs(self, text):
        with pytest.raises(ValueError):
            parse_signs(text)

    @pytest.mark.parametrize("text", ["01", "0120", ""])
    def test_bad_binary(self, text):
        with pytest.raises(ValueError):
            parse_binary(text)

    def test_n_mismatch(self):
        with pytest.raises(ValueError):
            parse_signs("+,+,-,+", n=3)

    def test_invalid_entries(self):
        with pytest.raises(ValueError):
            DiagonalHermitian(1, (1, 2))
        with pytest.raises(ValueError):
            DiagonalHermitian(2, (1, 1))
