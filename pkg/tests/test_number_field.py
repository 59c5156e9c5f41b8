from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from ckepoly.exact_algebra import QMatrix
from ckepoly.number_field import (
    FieldMismatchError,
    MonicIntPolynomial,
    NumberField,
    companion_matrix,
    fe_inv,
    fe_mul,
    fe_norm,
    to_matrix,
)
from ckepoly.platform import resolve_platform
from conftest import ALL, fr

GOLDEN = NumberField.from_coefficients([-1, -1, 1])


def el(coeffs, field=GOLDEN):
    return field.element(coeffs)


def test_companion_examples():
    assert companion_matrix(MonicIntPolynomial.from_coefficients([-1, -1, 1])) == QMatrix([[0, 1], [1, 1]])
    assert companion_matrix(MonicIntPolynomial.from_coefficients([1, 0, 1])) == QMatrix([[0, -1], [1, 0]])
    m = companion_matrix(MonicIntPolynomial.from_coefficients([-2, 0, 0, 1]))
    assert m == QMatrix([[0, 0, 2], [1, 0, 0], [0, 1, 0]])


def test_polynomial_validation():
    with pytest.raises(ValueError):
        MonicIntPolynomial.from_coefficients([1, 2])  # not monic
    with pytest.raises(ValueError):
        NumberField.from_coefficients([0, 1, 1])  # divisible by x
    with pytest.raises(ValueError):
        NumberField.from_coefficients([-1, 0, 1])  # root 1
    assert str(MonicIntPolynomial.from_coefficients([-1, 0, 0, -1, 0, 1])) == "x^5 - x^3 - 1"


def test_to_matrix_examples():
    assert to_matrix(el([1, 0])) == QMatrix.identity(2)
    assert to_matrix(el([0, 1])) == QMatrix([[0, 1], [1, 1]])
    assert to_matrix(el([1, 1])) == QMatrix([[1, 1], [1, 2]])


def test_mul_examples():
    t = GOLDEN.theta()
    assert fe_mul(t, t) == el([1, 1])
    assert fe_mul(GOLDEN.one(), el([3, -2])) == el([3, -2])
    assert fe_mul(t, el([-1, 1])) == GOLDEN.one()


def test_inverse_examples():
    assert fe_inv(GOLDEN.one()) == GOLDEN.one()
    assert fe_inv(GOLDEN.theta()) == el([-1, 1])
    assert fe_inv(el([2, 0])) == el([Fraction(1, 2), 0])
    with pytest.raises(ZeroDivisionError):
        fe_inv(GOLDEN.zero())


def test_norm_examples():
    assert fe_norm(GOLDEN.one()) == 1
    assert fe_norm(GOLDEN.theta()) == -1
    assert fe_norm(GOLDEN.zero()) == 0
    assert fe_norm(NumberField.from_coefficients([-2, -1] + [0] * 13 + [1]).theta()) == 2


def test_field_mismatch():
    other = NumberField.from_coefficients([1, 0, 1])
    with pytest.raises(FieldMismatchError):
        GOLDEN.one() + other.one()


def test_from_matrix_roundtrip():
    e = el([Fraction(3, 2), -7])
    assert GOLDEN.from_matrix(to_matrix(e)) == e
    with pytest.raises(ValueError):
        GOLDEN.from_matrix(QMatrix([[1, 0], [0, 2]]))


def test_power_and_division():
    t = GOLDEN.theta()
    assert t ** 2 == t + GOLDEN.one()
    assert t ** -1 == el([-1, 1])
    assert (t * 3) / t == GOLDEN.scalar(3)


@pytest.mark.parametrize("name", ALL)
def test_frozen_field_values(oracles, name):
    f = resolve_platform(name).field
    for case in oracles["field"][name]:
        a, b = f.element(fr(case["a"])), f.element(fr(case["b"]))
        assert fe_mul(a, b) == f.element(fr(case["product"]))
        assert fe_inv(a) == f.element(fr(case["inverse_a"]))
        assert fe_norm(a) == Fraction(case["norm_a"])


small_ints = st.integers(-6, 6)


@pytest.mark.parametrize("name", ("x2", "x5", "x7"))
@given(data=st.data())
@settings(max_examples=25, deadline=None)
def test_against_sympy(name, data):
    f = resolve_platform(name).field
    ref = oracle.RefField(list(f.poly.coefficients))
    n = f.degree
    a = data.draw(st.lists(small_ints, min_size=n, max_size=n).filter(any))
    b = data.draw(st.lists(st.fractions(-5, 5, max_denominator=4), min_size=n, max_size=n))
    ea, eb = f.element(a), f.element(b)
    assert fe_mul(ea, eb).coeffs.entries == tuple(ref.mul(a, b))
    assert fe_inv(ea).coeffs.entries == tuple(ref.inv(a))
    assert fe_norm(ea) == ref.norm(a)
    # matrix model is a ring homomorphism
    assert to_matrix(ea) @ to_matrix(eb) == to_matrix(fe_mul(ea, eb))
    assert fe_norm(fe_mul(ea, eb)) == fe_norm(ea) * fe_norm(eb)
