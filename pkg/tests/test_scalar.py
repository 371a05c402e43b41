"""Field arithmetic: exhaustive checks over small prime fields and
property-based checks over the rationals."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from locfin.scalar import GF, QQ, DivisionByZero, FieldDescriptor, FieldMismatch, Scalar


@pytest.mark.parametrize("p", [2, 3, 5])
def test_prime_field_axioms_exhaustive(p):
    f = GF(p)
    els = list(f.elements())
    assert len(els) == p
    for a in els:
        assert f.add(a, f.zero()) == a
        assert f.mul(a, f.one()) == a
        assert f.add(a, f.neg(a)) == f.zero()
        if a != f.zero():
            assert f.mul(a, f.inv(a)) == f.one()
        for b in els:
            assert f.add(a, b) == f.add(b, a)
            assert f.mul(a, b) == f.mul(b, a)
            for c in els:
                assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
                assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
                assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


def test_non_prime_modulus_rejected():
    with pytest.raises(ValueError):
        FieldDescriptor(p=4)
    with pytest.raises(ValueError):
        FieldDescriptor(p=1)


rationals = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**4)


@given(rationals, rationals, rationals)
def test_rational_field_axioms(a, b, c):
    f = QQ
    assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    assert f.sub(a, b) == f.add(a, f.neg(b))
    if b != 0:
        assert f.mul(b, f.inv(b)) == f.one()


def test_rational_json_round_trip():
    f = QQ
    for v in [Fraction(0), Fraction(-3, 7), Fraction(22, 4)]:
        enc = f.raw_to_json(v)
        assert isinstance(enc, str)
        assert f.raw_from_json(enc) == v
    assert f.raw_to_json(Fraction(22, 4)) == "11/2"


def test_prime_json_round_trip():
    f = GF(5)
    for v in f.elements():
        assert f.raw_from_json(f.raw_to_json(v)) == v


def test_field_descriptor_json():
    assert FieldDescriptor.from_json("Q") == QQ
    assert FieldDescriptor.from_json({"Fp": 7}) == GF(7)
    assert QQ.to_json() == "Q"
    assert GF(7).to_json() == {"Fp": 7}


def test_scalar_wrapper_mismatch_and_division():
    a = Scalar(GF(3), 1)
    b = Scalar(QQ, Fraction(1))
    with pytest.raises(FieldMismatch):
        _ = a + b
    with pytest.raises(DivisionByZero):
        Scalar(GF(3), 0).inv()
    assert (a + a + a).value == 0  # characteristic 3


def test_division_by_zero_raw():
    with pytest.raises(DivisionByZero):
        GF(2).inv(0)
    with pytest.raises(DivisionByZero):
        QQ.inv(Fraction(0))
