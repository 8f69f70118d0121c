from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from schurlab.exact import (
    ExactComplex,
    NotPSDError,
    as_exact,
    exact_rank,
    hermitian_ldl,
    i_power,
    inertia,
    negative_direction,
    nullspace,
    parse_rational,
    psd_factor,
    quadratic_value,
    rational_vectors,
    scalar_from_json,
    scalar_to_json,
    sum_of_two_gaussian_norms,
)

from conftest import gaussian


def _matmul(a, b):
    return [[sum((a[i][t] * b[t][j] for t in range(len(b))), ExactComplex(0)) for j in range(len(b[0]))] for i in range(len(a))]


def _adjoint(a):
    return [[a[j][i].conjugate() for j in range(len(a))] for i in range(len(a[0]))]


def _hermitian_from(factor):
    return _matmul(factor, _adjoint(factor))


class TestScalars:
    def test_reduced_storage(self):
        z = ExactComplex(Fraction(2, 4), Fraction(-3, -6))
        assert (z.re, z.im) == (Fraction(1, 2), Fraction(1, 2))
        assert z.re.denominator > 0

    def test_equality_with_plain_numbers(self):
        assert ExactComplex(3) == 3
        assert ExactComplex(Fraction(1, 2)) == Fraction(1, 2)
        assert ExactComplex(0, 1) != 1

    def test_i_powers_cycle(self):
        assert [i_power(k) for k in range(5)] == [1, ExactComplex(0, 1), -1, ExactComplex(0, -1), 1]

    def test_float_refused(self):
        with pytest.raises(TypeError):
            as_exact(0.5)

    @given(gaussian, gaussian, gaussian)
    def test_field_axioms(self, a, b, c):
        assert (a + b) * c == a * c + b * c
        assert (a * b).conjugate() == a.conjugate() * b.conjugate()
        assert (a * a.conjugate()).im == 0
        if b:
            assert (a / b) * b == a

    @given(gaussian)
    def test_json_round_trip(self, z):
        assert scalar_from_json(scalar_to_json(z)) == z

    def test_decimal_strings_rejected(self):
        with pytest.raises(ValueError):
            parse_rational("0.5")


class TestRank:
    def test_against_sympy(self, rng):
        for _ in range(25):
            rows, cols, rank = rng.integers(1, 6), rng.integers(1, 6), rng.integers(0, 5)
            left = rng.integers(-3, 4, size=(rows, rank)) + 1j * rng.integers(-3, 4, size=(rows, rank))
            right = rng.integers(-3, 4, size=(rank, cols)) + 1j * rng.integers(-3, 4, size=(rank, cols))
            m = left @ right if rank else np.zeros((rows, cols), dtype=complex)
            exact = [[ExactComplex(int(z.real), int(z.imag)) for z in row] for row in m]
            oracle = sympy.Matrix([[int(z.real) + sympy.I * int(z.imag) for z in row] for row in m]).rank()
            assert exact_rank(exact) == oracle

    def test_empty_and_zero(self):
        assert exact_rank([]) == 0
        assert exact_rank([[0, 0], [0, 0]]) == 0


class TestHermitian:
    @given(st.lists(st.lists(gaussian, min_size=3, max_size=3), min_size=1, max_size=4))
    def test_psd_factor_reassembles(self, rows):
        factor = [list(r) for r in zip(*rows)]  # 3 x m
        M = _hermitian_from(factor)
        vecs = psd_factor(M)
        assert len(vecs) <= 2 * exact_rank(M)
        rebuilt = [[sum((w[i] * w[j].conjugate() for w in vecs), ExactComplex(0)) for j in range(3)] for i in range(3)]
        assert rebuilt == M

    def test_psd_factor_rejects_indefinite(self):
        with pytest.raises(NotPSDError):
            psd_factor([[1, 2], [2, 1]])

    def test_ldl_detects_zero_diagonal_block(self):
        _, psd = hermitian_ldl([[0, 1], [1, 0]])
        assert not psd

    @pytest.mark.parametrize(
        "mat, kind",
        [([[2, 0], [0, 3]], "pd"), ([[1, 1], [1, 1]], "psd"), ([[1, 2], [2, 1]], "indefinite"), ([[0, 0], [0, 0]], "psd")],
    )
    def test_inertia(self, mat, kind):
        assert inertia(mat) == kind

    @pytest.mark.parametrize("mat", [[[1, 2], [2, 1]], [[0, 1], [1, 0]], [[1, 0, 0], [0, 0, 3], [0, 3, 0]]])
    def test_negative_direction_is_negative(self, mat):
        w = negative_direction(mat)
        assert quadratic_value(mat, w) < 0

    def test_negative_direction_none_for_psd(self):
        assert negative_direction([[2, 1], [1, 2]]) is None

    def test_nullspace(self):
        M = [[1, 1], [1, 1]]
        (v,) = nullspace(M)
        assert quadratic_value(M, v) == 0 and any(v)

    @given(st.fractions(min_value=0, max_value=50, max_denominator=30))
    def test_two_gaussian_norms(self, d):
        parts = sum_of_two_gaussian_norms(d)
        assert len(parts) <= 2
        assert sum((c.abs2() for c in parts), Fraction(0)) == d


def test_rational_vectors_fix_largest_entry():
    vec = np.array([0.3 + 0.4j, -1.0j, 0.1])
    first = next(iter(rational_vectors(vec)))
    assert first[1] == 1
    assert all(abs(complex(c)) <= 1 for c in first)
