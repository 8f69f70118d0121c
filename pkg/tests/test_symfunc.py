import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from schurlab.symfunc import (
    char_poly_coefficients,
    character,
    compose,
    conjugate_partition,
    elementary_symmetric,
    fl_coefficient_matrix,
    fl_expand,
    hook_content_eval,
    inverse,
    jacobi_trudi,
    lr_coefficients,
    partitions,
    schur_bialternant,
    schur_tableau_sum,
    ssyt,
    standard_tableaux,
    strip,
    young_orthogonal_irrep,
)


def all_partitions(k):
    return [strip(lam) for lam in partitions(k, k)] if k else [()]


class TestPartitions:
    @pytest.mark.parametrize(
        "k, r, expected",
        [(2, 2, [(2, 0), (1, 1)]), (3, 2, [(2, 1, 0), (1, 1, 1)]), (1, 5, [(1,)]), (0, 3, [()])],
    )
    def test_examples(self, k, r, expected):
        assert partitions(k, r) == expected

    def test_counts_match_generating_function(self):
        # number of partitions of k with parts <= r, by the standard recurrence
        @lru_count
        def count(k, r):
            if k == 0:
                return 1
            if r == 0:
                return 0
            return count(k, r - 1) + (count(k - r, r) if k >= r else 0)

        for k in range(7):
            for r in range(7):
                assert len(partitions(k, r)) == count(k, r)

    @pytest.mark.parametrize("lam, r, expected", [((1, 1), 2, (2, 0)), ((2, 0), 2, (1, 1)), ((3,), 3, (1, 1, 1))])
    def test_conjugate_examples(self, lam, r, expected):
        assert conjugate_partition(lam, r) == expected

    def test_conjugate_involution(self):
        for k in range(1, 7):
            for r in range(1, 7):
                for lam in partitions(k, r):
                    lc = conjugate_partition(lam, r)
                    assert sum(lc) == k
                    assert strip(conjugate_partition(lc, k)) == strip(lam)

    def test_conjugate_cap(self):
        with pytest.raises(ValueError):
            conjugate_partition((3,), 2)


def lru_count(fn):
    cache = {}

    def wrapped(*args):
        if args not in cache:
            cache[args] = fn(*args)
        return cache[args]

    return wrapped


class TestJacobiTrudi:
    def test_single_row(self):
        c = [1, 5, 7, 11]
        assert jacobi_trudi((3, 0, 0), c) == 11

    def test_column(self):
        c = [1, 5, 7]
        assert jacobi_trudi((1, 1), c) == 5 * 5 - 7

    def test_trivial_chern(self):
        for lam in partitions(3, 3):
            assert jacobi_trudi(lam, [1, 0, 0, 0]) == 0

    def test_against_bialternant_exhaustively(self):
        rng = np.random.default_rng(7)
        for r in range(1, 7):
            for k in range(1, 7):
                for lam in partitions(k, r):
                    lc = conjugate_partition(lam, r)
                    for _ in range(10):
                        x = [Fraction(int(a), int(b)) for a, b in zip(rng.integers(-9, 10, r), rng.integers(1, 5, r))]
                        assert jacobi_trudi(lam, elementary_symmetric(x)) == schur_bialternant(lc, x)


class TestSchurPolynomials:
    def test_examples(self):
        assert schur_bialternant((2, 0), [1, 2]) == 7
        assert schur_bialternant((1, 1), [1, 2]) == 2
        assert schur_bialternant((0, 0, 0), [1, 2, 3]) == 1

    def test_repeated_points_fall_back(self):
        assert schur_bialternant((2, 0), [1, 1]) == 3
        with pytest.raises(ZeroDivisionError):
            schur_bialternant((2, 0), [1, 1], fallback=False)

    @given(st.lists(st.integers(-5, 5), min_size=3, max_size=3, unique=True), st.sampled_from(partitions(3, 3) + partitions(2, 3)))
    def test_tableau_sum_agrees(self, x, lam):
        lc = conjugate_partition(lam, 3)
        assert schur_tableau_sum(lc, x) == schur_bialternant(lc, x)

    @pytest.mark.parametrize("lc, value", [((2, 0), 3), ((1, 1), 1), ((0, 0, 0), 1)])
    def test_hook_content_examples(self, lc, value):
        assert hook_content_eval(lc) == value

    def test_hook_content_counts_tableaux(self):
        for r in range(1, 7):
            for k in range(1, 7):
                for lam in partitions(k, r):
                    lc = conjugate_partition(lam, r)
                    value = hook_content_eval(lc)
                    assert value >= 1
                    assert value == len(ssyt(lc, r))


def schur_poly(shape, nvars):
    """Integer coefficient dictionary of s_shape in nvars variables, from tableaux."""
    out = {}
    for t in ssyt(shape, nvars):
        exp = [0] * nvars
        for row in t:
            for v in row:
                exp[v - 1] += 1
        out[tuple(exp)] = out.get(tuple(exp), 0) + 1
    return out


def poly_mul(a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            key = tuple(x + y for x, y in zip(ea, eb))
            out[key] = out.get(key, 0) + ca * cb
    return out


def expand_in_schur(poly, k, nvars):
    """Coefficients of poly in the Schur basis, peeling off dominant monomials."""
    poly = {e: c for e, c in poly.items() if c}
    coeffs = {}
    while poly:
        lead = max(e for e in poly if list(e) == sorted(e, reverse=True))
        c = poly[lead]
        shape = strip(lead)
        coeffs[shape] = c
        for e, v in schur_poly(shape, nvars).items():
            poly[e] = poly.get(e, 0) - c * v
            if not poly[e]:
                del poly[e]
    return coeffs


class TestLittlewoodRichardson:
    def test_examples(self):
        assert lr_coefficients((2,)).get((1,), (1,)) == 1
        assert lr_coefficients((1, 1)).get((1,), (1,)) == 1
        for lam in [(3, 1), (2, 2, 1), (1,)]:
            table = lr_coefficients(lam)
            assert table.get(lam, ()) == 1 and table.get((), lam) == 1

    def test_against_polynomial_products(self):
        # oracle: expand s_mu * s_nu in enough variables and read off Schur coefficients
        for k in range(1, 6):
            for lam in all_partitions(k):
                table = lr_coefficients(lam)
                for (mu, nu), c in table.items():
                    assert sum(mu) + sum(nu) == k and c > 0
                    product = expand_in_schur(poly_mul(schur_poly(mu, k), schur_poly(nu, k)), k, k)
                    assert product.get(lam, 0) == c
        for mu, nu in [((2, 1), (1,)), ((2,), (1, 1)), ((1, 1), (2, 1))]:
            k = sum(mu) + sum(nu)
            product = expand_in_schur(poly_mul(schur_poly(mu, k), schur_poly(nu, k)), k, k)
            for lam, c in product.items():
                assert lr_coefficients(lam).get(mu, nu) == c

    def test_conjugation_symmetry(self):
        def conj(p):
            return strip(conjugate_partition(p, p[0])) if p else ()

        for k in range(1, 7):
            for lam in all_partitions(k):
                table, dual = lr_coefficients(lam), lr_coefficients(conj(lam))
                assert {(conj(m), conj(n)): c for (m, n), c in table.items()} == dict(dual.items())

    def test_bound(self):
        with pytest.raises(ValueError):
            lr_coefficients((5, 4))


class TestIrreps:
    def test_s2(self):
        triv, sign = young_orthogonal_irrep((2,)), young_orthogonal_irrep((1, 1))
        assert triv((1, 0)).tolist() == [[1.0]]
        assert sign((1, 0)).tolist() == [[-1.0]]

    def test_s3_standard(self):
        rep = young_orthogonal_irrep((2, 1))
        assert rep.dim == 2
        assert round(rep.character((1, 0, 2))) == 0
        assert round(rep.character((1, 2, 0))) == -1

    @pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
    def test_orthogonal_and_homomorphic(self, k):
        rng = np.random.default_rng(k)
        perms = list(itertools.permutations(range(k)))
        for lam in all_partitions(k):
            rep = young_orthogonal_irrep(lam)
            assert rep.dim == len(standard_tableaux(lam))
            for p in perms:
                m = rep(p)
                assert np.allclose(m @ m.T, np.eye(rep.dim), atol=1e-12)
            for _ in range(20):
                s, t = perms[rng.integers(len(perms))], perms[rng.integers(len(perms))]
                assert np.allclose(rep(compose(s, t)), rep(s) @ rep(t), atol=1e-10)

    @pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
    def test_character_orthogonality(self, k):
        perms = list(itertools.permutations(range(k)))
        lams = all_partitions(k)
        for a in lams:
            for b in lams:
                total = sum(character(a, p) * character(b, p) for p in perms)
                assert Fraction(total, math.factorial(k)) == (a == b)

    def test_coefficients_are_characters(self):
        for lam in [(2, 1), (1, 1, 1), (3,)]:
            floats = fl_coefficient_matrix(lam)
            exact = fl_coefficient_matrix(lam, use_characters=True)
            for (s, t), v in exact.items():
                assert abs(floats[(s, t)] - v) < 1e-12
                lc = strip(conjugate_partition(lam, lam[0]))
                assert v == character(lc, compose(inverse(s), t))

    def test_bound(self):
        with pytest.raises(ValueError):
            young_orthogonal_irrep((3, 3))


class TestFultonLazarsfeld:
    def test_matches_jacobi_trudi(self):
        rng = np.random.default_rng(3)
        for r in range(1, 4):
            for k in range(1, 4):
                for lam in partitions(k, r):
                    for _ in range(10):
                        B = rng.normal(size=(r, r)) + 1j * rng.normal(size=(r, r))
                        assert abs(fl_expand(lam, B) - jacobi_trudi(lam, char_poly_coefficients(B))) <= 1e-9

    def test_identity_gives_hook_content(self):
        assert fl_expand((1, 1), np.eye(2).tolist(), use_characters=True) == 3
        assert fl_expand((2, 0), np.eye(2).tolist(), use_characters=True) == 1
        for r in range(1, 4):
            for k in range(1, 4):
                for lam in partitions(k, r):
                    value = fl_expand(lam, np.eye(r))
                    assert abs(value - hook_content_eval(conjugate_partition(lam, r))) <= 1e-9

    def test_trace_collapse(self):
        B = np.arange(9.0).reshape(3, 3)
        assert abs(fl_expand((1,), B) - np.trace(B)) < 1e-12

    def test_zero_matrix(self):
        for lam in partitions(3, 3):
            assert fl_expand(lam, np.zeros((3, 3))) == 0

    def test_exact_over_integers(self):
        B = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(3)]]
        for lam in partitions(2, 2):
            value = fl_expand(lam, B, use_characters=True)
            assert isinstance(value, Fraction)
            assert value == jacobi_trudi(lam, [1, Fraction(5), Fraction(5)])
