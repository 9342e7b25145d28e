import random

import pytest
from hypothesis import given, strategies as st

from datagen import perturb, random_datum, random_valid, seed_data
from ldforms.datum import (CharacterizingDatum, ResidueTuple, apply_affine, check_homogeneous_relations,
                           numerator_oracle, oracle_verdict, residue_type, scale_residues, verify_datum)
from ldforms.errors import DuplicatePoles, InvalidDatum, ZeroScale
from ldforms.field import make_field
from ldforms.poly import MultiPoly

F3 = make_field(3)
rngs = st.integers(0, 2**32 - 1).map(random.Random)


def datum(poles, res, spec=F3):
    return CharacterizingDatum.build(spec, poles, res)


def test_three_pole_example_valid():
    v = verify_datum(datum([0, 1, 2], [1, 1, 1]))
    assert v.valid and v.u == 2 and v.violations == []


def test_duplicate_poles_reported():
    v = verify_datum(datum([0, 0], [1, 2]))
    assert not v.valid
    assert any("duplicate poles at indices (0, 1)" in s for s in v.violations)


def test_nonzero_residue_sum_reported():
    v = verify_datum(datum([0, 1], [1, 1]))
    assert not v.valid
    assert "residue sum 2 != 0" in v.violations


def test_two_pole_datum_valid():
    v = verify_datum(datum([0, 1], [1, 2]))
    assert v.valid and v.u == 2


def test_zero_residue_and_moment_reported():
    v = verify_datum(datum([0, 1, 2, 3 % 3], [1, 1, 1, 0]))
    assert any("residue zero at index 3" in s for s in v.violations)
    F9 = make_field(3, 2)
    # (1,1,1) at three poles with nonzero first moment
    v = verify_datum(datum([0, 1, F9.gen], [1, 1, 1], F9))
    assert "moment k=1 nonzero" in v.violations


def test_numerator_oracle_examples():
    X = MultiPoly.var(F3, "X")
    assert numerator_oracle(datum([0, 1, 2], [1, 1, 1])) == MultiPoly.const(F3, 2, ("X",))
    assert numerator_oracle(datum([0, 1], [1, 2])) == MultiPoly.const(F3, 2, ("X",))
    assert numerator_oracle(datum([0, 1], [1, 1])) == 2 * X + 2
    with pytest.raises(DuplicatePoles):
        numerator_oracle(datum([1, 1], [1, 2]))


def test_homogeneous_relations():
    d = datum([0, 1, 2], [1, 1, 1])
    assert check_homogeneous_relations(d, 3)
    assert check_homogeneous_relations(d, 0)
    with pytest.raises(InvalidDatum):
        check_homogeneous_relations(datum([0, 1], [1, 1]), 2)


def test_apply_affine_examples():
    d = datum([0, 1, 2], [1, 1, 1])
    assert apply_affine(d, 1, 0) == d
    e = apply_affine(d, 2, 1)
    assert [int(x) for x in e.poles] == [1, 0, 2]
    assert verify_datum(e).u == 2
    f = apply_affine(datum([0, 1], [1, 2]), 2, 0)
    assert [int(x) for x in f.poles] == [0, 2]
    assert verify_datum(f).u == 1  # alpha^m u = 2 * 2
    with pytest.raises(ZeroScale):
        apply_affine(d, 0, 1)


def test_residue_type():
    assert residue_type((1, 1, 2), 3) == (2, 1)
    assert residue_type((1, 1, 1, 1, 2), 3) == (4, 1)
    assert residue_type((), 3) == (0, 0)
    assert residue_type((), 5) == (0, 0, 0, 0)


def test_residue_tuple_rejects_zero():
    with pytest.raises(ValueError):
        ResidueTuple((1, 3), 3)
    assert ResidueTuple((1, -1), 3).h == (1, 2)


def test_seeds_valid():
    for d in seed_data():
        assert verify_datum(d).valid


@given(rngs)
def test_verifier_agrees_with_numerator_oracle(rng):
    d = random_datum(rng)
    v = verify_datum(d)
    ok, u = oracle_verdict(d)
    assert v.valid == ok
    if ok:
        assert v.u == u


@given(rngs)
def test_affine_invariance(rng):
    d, alpha, beta, _ = random_valid(rng)
    e = apply_affine(d, alpha, beta)
    vd, ve = verify_datum(d), verify_datum(e)
    assert vd.valid and ve.valid
    assert ve.u == alpha**d.m * vd.u
    bad = perturb(d, rng)
    assert verify_datum(bad).valid == verify_datum(apply_affine(bad, alpha, beta)).valid


@given(rngs, st.sampled_from([1, 2]))
def test_residue_scaling(rng, c):
    d = random_valid(rng)[0]
    e = scale_residues(d, c)
    assert verify_datum(e).valid
    assert verify_datum(e).u == verify_datum(d).u * c


@given(rngs, st.integers(0, 6))
def test_homogeneous_relations_on_valid_data(rng, K):
    d = random_valid(rng)[0]
    assert check_homogeneous_relations(d, K)


@given(rngs)
def test_pole_sum_vanishes_when_p_divides_pole_count(rng):
    d = random_valid(rng)[0]
    if d.m_plus_1 % 3 == 0:
        total = d.spec.zero
        for x in d.poles:
            total = total + x
        assert total.is_zero()


@given(rngs)
def test_perturbed_pole_breaks_relations_or_validity(rng):
    d = random_valid(rng)[0]
    pairs = list(d.pairs)
    x, h = pairs[0]
    pairs[0] = (x + 1, h) if d.spec.k == 1 else (x + d.spec.gen, h)
    e = CharacterizingDatum(d.spec, tuple(pairs))
    if verify_datum(e).valid:
        # still valid: then the relations hold for it as for any valid datum
        assert check_homogeneous_relations(e, 3)
    else:
        with pytest.raises(InvalidDatum):
            check_homogeneous_relations(e, 3)
