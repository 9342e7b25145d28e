import pytest
from hypothesis import given, strategies as st

from ldforms.errors import FieldDivisionByZero, NonPrime, ResourceLimit, SpecMismatch
from ldforms.field import (FieldSpec, arith, enumerate_field, is_irreducible, is_prime, make_field,
                           pow_frobenius, smallest_irreducible)

SPECS = [make_field(3), make_field(3, 2), make_field(3, 3), make_field(5, 2), make_field(2, 4), make_field(7)]


def elements(spec):
    return st.integers(0, spec.order - 1).map(spec.element)


spec_and_triple = st.sampled_from(SPECS).flatmap(
    lambda s: st.tuples(st.just(s), elements(s), elements(s), elements(s)))


def test_is_prime_small():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_prime_field_modulus_is_x():
    assert make_field(3, 1).modulus == (0, 1)


def test_f9_modulus_is_x2_plus_1():
    # X^2 + 1 has no root among 0, 1, 2
    assert make_field(3, 2).modulus == (1, 0, 1)
    assert all((x * x + 1) % 3 for x in range(3))


def test_f27_modulus_smallest_irreducible():
    # a cubic is irreducible iff it has no root; scan low-to-high lexicographically
    def rootless(c):
        return all(sum(ci * x**i for i, ci in enumerate(c)) % 3 for x in range(3))

    cubics = sorted((c0, c1, c2, 1) for c0 in range(3) for c1 in range(3) for c2 in range(3))
    first = next(c for c in cubics if rootless(c))
    assert first == (1, 0, 2, 1)
    assert smallest_irreducible(3, 3) == first
    for c in cubics:
        assert is_irreducible(c, 3) == rootless(c)


def test_nonprime_rejected():
    with pytest.raises(NonPrime):
        make_field(4, 1)
    with pytest.raises(NonPrime):
        FieldSpec(9, 1, (0, 1))


def test_degree_bound():
    with pytest.raises(ResourceLimit):
        make_field(3, 40)


def test_reducible_modulus_rejected():
    with pytest.raises(ValueError):
        make_field(3, 2, modulus=(2, 0, 1))  # X^2 - 1


def test_explicit_modulus_overrides():
    spec = make_field(3, 2, modulus=(2, 1, 1))
    assert spec.modulus == (2, 1, 1)
    t = spec.gen
    assert t * t == spec((1, 2))  # t^2 = -t - 2


def test_f9_t_squared_is_2():
    F9 = make_field(3, 2)
    t = F9.gen
    assert arith(t, t, "mul") == F9(2)


def test_prime_field_add():
    F3 = make_field(3)
    assert arith(F3(2), F3(2), "add") == F3(1)


def test_frobenius_f9():
    F9 = make_field(3, 2)
    t = F9.gen
    assert pow_frobenius(t) == F9((0, 2))


def test_zero_to_zero_is_one():
    for spec in SPECS:
        assert spec.zero ** 0 == spec.one
    assert pow_frobenius(make_field(3)(2), "power", 2) == 1


def test_division_by_zero():
    F9 = make_field(3, 2)
    with pytest.raises(FieldDivisionByZero):
        arith(F9.one, F9.zero, "div")
    with pytest.raises(FieldDivisionByZero):
        F9.zero.inverse()


def test_spec_mismatch():
    with pytest.raises(SpecMismatch):
        arith(make_field(3).one, make_field(3, 2).one, "add")
    with pytest.raises(SpecMismatch):
        make_field(3).one + make_field(5).one


def test_enumerate_prime_field_order():
    assert [str(x) for x in enumerate_field(make_field(3))] == ["0", "1", "2"]


def test_enumerate_f9():
    F9 = make_field(3, 2)
    xs = list(enumerate_field(F9))
    assert len(xs) == 9 and len(set(xs)) == 9
    assert all(x**9 == x for x in xs)
    assert [x.coeffs for x in xs[:4]] == [(0, 0), (1, 0), (2, 0), (0, 1)]
    assert xs == list(enumerate_field(F9))


def test_str_and_int():
    F9 = make_field(3, 2)
    assert str(F9((2, 1))) == "t + 2"
    assert int(make_field(3)(5)) == 2
    with pytest.raises(ValueError):
        int(F9.gen)


@given(spec_and_triple)
def test_field_axioms(data):
    spec, a, b, c = data
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a and a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == spec.zero and a + (-a) == spec.zero
    if not a.is_zero():
        assert a * a.inverse() == spec.one
        assert (b / a) * a == b


@given(spec_and_triple)
def test_frobenius_is_ring_homomorphism(data):
    spec, a, b, _ = data
    assert (a + b).frobenius() == a.frobenius() + b.frobenius()
    assert (a * b).frobenius() == a.frobenius() * b.frobenius()
    assert (a.frobenius() == a) == a.in_prime_field()


@given(spec_and_triple)
def test_order_power_is_identity(data):
    spec, a, _, _ = data
    assert a ** spec.order == a


@given(spec_and_triple, st.integers(0, 40), st.integers(0, 40))
def test_power_laws(data, e, f):
    _, a, b, _ = data
    assert a ** (e + f) == a**e * a**f
    assert (a * b) ** e == a**e * b**e
