import itertools

import numpy as np
import pytest

from schurlab.curvature import (
    ABFactorization,
    CurvatureTensor,
    SplitSpec,
    chern_forms,
    classify,
    curvature_from_ab,
    dual_nakano_matrix,
    extract_ab_factorization,
    flattened_ranks,
    generate,
    nakano_matrix,
    schur_form,
    span_condition_type1,
)
from schurlab.exact import ExactComplex, NotPSDError
from schurlab.hermitian import check_hermitian
from schurlab.multilinear import Form, wedge
from schurlab.symfunc import partitions

from conftest import I

STRICT = ("Griffiths", "Nakano", "DualNakano", "StronglyTypeI", "StronglyTypeII")


def hand_factorization(a=ExactComplex(2, 1), b=ExactComplex(1, -3)):
    zero = ExactComplex(0)
    return ABFactorization.build(2, 1, 1, A=[[[zero, a]]], B=[[[b, zero]]])


def line_bundle(rho):
    return CurvatureTensor.from_entries(1, 1, {(1, 1, 1, 1): rho})


def statuses(verdict):
    return {name: v.status for name, v in verdict.items()}


class TestFactorizations:
    def test_hand_expansion(self):
        a, b = ExactComplex(2, 1), ExactComplex(1, -3)
        R = curvature_from_ab(hand_factorization(a, b))
        assert R.get(1, 1, 1, 1) == b.abs2()
        assert R.get(1, 1, 2, 2) == a.abs2()
        assert R.get(1, 1, 1, 2) == 0 and R.get(1, 1, 2, 1) == 0

    def test_zero(self):
        assert curvature_from_ab(ABFactorization.zero(2, 3)) == CurvatureTensor.zero(2, 3)
        assert flattened_ranks(ABFactorization.zero(2, 3)) == (0, 0)

    def test_hermitian_symmetry_of_generated(self):
        for cls in ("nakano", "decomposable", "type2"):
            R, _, _ = generate(cls, 2, 2, seed=3)
            for i, j, a, b in itertools.product(range(1, 3), repeat=4):
                assert R.get(j, i, b, a) == R.get(i, j, a, b).conjugate()

    def test_json_round_trips(self):
        R, f, split = generate("type1", 3, 2, seed=5)
        assert CurvatureTensor.from_json(R.to_json()) == R
        assert curvature_from_ab(ABFactorization.from_json(f.to_json())) == R
        assert SplitSpec.from_json(split.to_json()) == split


class TestGenerate:
    def test_nakano_line_bundle(self):
        R, _, _ = generate("nakano", 1, 1, seed=11)
        assert R.get(1, 1, 1, 1).re > 0

    def test_type1_hand_shape(self):
        R, _, split = generate("type1", 2, 1, seed=1, split=SplitSpec("type1", (1,)))
        assert split.indices == (1,)
        assert R.get(1, 1, 1, 2) == 0 and R.get(1, 1, 1, 1).re > 0 and R.get(1, 1, 2, 2).re > 0

    @pytest.mark.parametrize(
        "cls, n, r, split, ranks",
        [
            ("nakano", 2, 2, None, (0, 4)),
            ("dual-nakano", 2, 2, None, (4, 0)),
            ("type1", 3, 2, SplitSpec("type1", (1,)), (4, 2)),
            ("type2", 2, 3, SplitSpec("type2", (1,)), (4, 2)),
        ],
    )
    def test_flattened_ranks(self, cls, n, r, split, ranks):
        _, f, _ = generate(cls, n, r, seed=2, split=split)
        assert flattened_ranks(f) == ranks

    def test_type1_span_condition(self):
        _, f, _ = generate("type1", 3, 2, seed=4)
        assert span_condition_type1(f)

    def test_determinism(self):
        assert generate("decomposable", 2, 2, seed=9)[0] == generate("decomposable", 2, 2, seed=9)[0]

    def test_errors(self):
        with pytest.raises(ValueError):
            generate("bogus", 2, 2, seed=0)
        with pytest.raises(ValueError):
            generate("nakano", 2, 2, seed=0, split=SplitSpec("type1", (1,)))
        with pytest.raises(ValueError):
            generate("type1", 2, 2, seed=0, split=SplitSpec("type2", (1,)))
        with pytest.raises(ValueError):
            generate("nakano", 2, 2, seed=0, N=1)


class TestChern:
    def test_zero_curvature(self):
        c = chern_forms(CurvatureTensor.zero(2, 2))
        assert c[0] == Form.scalar(2, 1)
        assert not c[1] and not c[2]

    def test_line_bundle(self):
        c = chern_forms(line_bundle(5))
        assert c[1] == wedge(Form.dz(1, 1), Form.dzbar(1, 1)).scale(I * 5)

    def test_diagonal_rank_two(self):
        R = CurvatureTensor.from_entries(2, 2, {(1, 1, 1, 1): 2, (1, 1, 1, 2): ExactComplex(0, 1), (2, 2, 2, 2): 3})
        R1, R2 = R.form(1, 1), R.form(2, 2)
        assert chern_forms(R)[2] == wedge(R1, R2).scale(-1)

    def test_real(self):
        for seed in range(4):
            R, _, _ = generate("decomposable", 2, 3, seed=seed)
            assert all(c.is_real() for c in chern_forms(R))

    def test_schur_examples(self):
        R, _, _ = generate("decomposable", 3, 2, seed=1)
        c = chern_forms(R)
        assert schur_form((1,), R) == c[1]
        assert schur_form((2, 0), R) == c[2]
        assert schur_form((1, 1), R) == wedge(c[1], c[1]) - c[2]
        assert not schur_form((3,), R)
        assert not schur_form((1, 1), CurvatureTensor.zero(3, 2))
        with pytest.raises(ValueError):
            schur_form((1, 2), R)


class TestClassify:
    def test_zero_curvature(self):
        v = statuses(classify(CurvatureTensor.zero(2, 2)))
        assert all(v[name] == "Fails" for name in STRICT)
        assert v["Decomposable"] == "Fails"
        ev = classify(CurvatureTensor.zero(2, 2)).nakano.evidence
        assert ev["nonnegative"]

    def test_hand_example_is_type1(self):
        R = curvature_from_ab(hand_factorization())
        v = classify(R, hints=SplitSpec("type1", (1,)))
        assert v.type1.status == "Holds" and v.griffiths.status == "Holds"
        assert v.type1.evidence["cross_terms_vanish"]

    @pytest.mark.parametrize("seed", range(3))
    def test_nakano_round_trip(self, seed):
        R, f, _ = generate("nakano", 2, 2, seed=seed)
        v = classify(R, factorization=f)
        assert v.nakano.status == "Holds" and v.nakano.evidence["margin"] > 0
        assert v.decomposable.status == "Holds"

    @pytest.mark.parametrize("seed", range(3))
    def test_type2_found_without_hint(self, seed):
        R, _, split = generate("type2", 2, 3, seed=seed)
        v = classify(R)
        assert v.type2.status == "Holds"

    def test_negative_line_bundle_fails_griffiths(self):
        v = classify(line_bundle(-1))
        assert v.griffiths.status == "Fails" and v.griffiths.evidence["value"] < 0

    def test_needs_exact(self):
        with pytest.raises(TypeError):
            classify(CurvatureTensor.from_array(np.zeros((1, 1, 1, 1), dtype=complex)))


class TestHermitianMatrices:
    def test_nakano_of_generated_is_definite(self):
        R, _, _ = generate("nakano", 3, 2, seed=0)
        assert check_hermitian(nakano_matrix(R)).positive
        assert not check_hermitian(dual_nakano_matrix(R)).positive

    def test_dual_nakano_of_generated_is_definite(self):
        R, _, _ = generate("dual-nakano", 3, 2, seed=0)
        assert check_hermitian(dual_nakano_matrix(R)).positive


class TestExtract:
    def test_zero(self):
        f = extract_ab_factorization(CurvatureTensor.zero(2, 2), SplitSpec("type1", (1,)))
        assert f.N == 0

    @pytest.mark.parametrize("seed", range(4))
    def test_type1_round_trip(self, seed):
        R, _, split = generate("type1", 3, 2, seed=seed)
        assert curvature_from_ab(extract_ab_factorization(R, split)) == R

    def test_nakano_full_split(self):
        n, r = 2, 2
        R, _, _ = generate("nakano", n, r, seed=6)
        f = extract_ab_factorization(R, SplitSpec("type1", range(1, n + 1)))
        rank_a, rank_b = flattened_ranks(f)
        assert rank_a == 0 and rank_b == r * n

    def test_type2_round_trip(self):
        R, _, split = generate("type2", 2, 3, seed=1)
        assert curvature_from_ab(extract_ab_factorization(R, split)) == R

    def test_cross_block_injection_is_rejected(self):
        R, _, split = generate("type2", 1, 2, seed=0, split=SplitSpec("type2", (1,)))
        entries = R.entries()
        entries[(1, 2, 1, 1)] = ExactComplex(1)
        broken = CurvatureTensor.from_entries(1, 2, entries)
        assert classify(broken, hints=split).type2.status != "Holds"
        with pytest.raises(ValueError):
            extract_ab_factorization(broken, split)

    def test_wrong_split_rejected(self):
        R, _, _ = generate("decomposable", 2, 2, seed=0)
        with pytest.raises((ValueError, NotPSDError)):
            extract_ab_factorization(R, SplitSpec("type1", (1,)))


def test_all_partitions_give_real_forms():
    R, _, _ = generate("type2", 2, 2, seed=0)
    chern = chern_forms(R)
    for k in range(1, 3):
        for lam in partitions(k, 2):
            f = schur_form(lam, R, chern)
            assert f.bidegree == (k, k) and f.is_real()
