from fractions import Fraction

import pytest

from ppalg.errors import RangeError
from ppalg.fields import GF, QQ, GaloisField, PrimeField, field_from_json


def test_rationals_are_exact_and_reduced():
    x = QQ.parse_scalar("3/7")
    y = QQ.parse_scalar("2/7")
    assert QQ.add(x, y) == Fraction(5, 7)
    assert QQ.format_scalar(Fraction(6, 14)) == "3/7"
    assert QQ.inv(Fraction(3, 7)) == Fraction(7, 3)


def test_prime_field_fermat_inverse():
    f = GF(7)
    for a in range(1, 7):
        assert f.mul(a, f.inv(a)) == 1


def test_prime_validation():
    with pytest.raises(RangeError):
        PrimeField(1)
    with pytest.raises(RangeError):
        PrimeField(9)
    with pytest.raises(RangeError):
        GF(6)
    assert isinstance(GF(2147483647), PrimeField)


@pytest.mark.parametrize("q", [4, 8, 9])
def test_prime_power_field_axioms_by_enumeration(q):
    f = GF(q)
    assert isinstance(f, GaloisField)
    elems = list(f.elements())
    assert len(elems) == q
    for a in elems:
        assert f.add(a, f.zero()) == a
        assert f.mul(a, f.one()) == a
        assert f.add(a, f.neg(a)) == f.zero()
        if a != f.zero():
            assert f.mul(a, f.inv(a)) == f.one()
        for b in elems:
            assert f.add(a, b) == f.add(b, a)
            assert f.mul(a, b) == f.mul(b, a)
            for c in elems:
                assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))


def test_gf4_has_no_zero_divisors():
    f = GF(4)
    for a in f.elements():
        for b in f.elements():
            if a != 0 and b != 0:
                assert f.mul(a, b) != 0


def test_field_json_round_trip():
    for field in (QQ, GF(5), GF(4)):
        assert field_from_json(field.to_json()) == field


def test_scalar_strings_round_trip():
    f5 = GF(5)
    assert f5.parse_scalar(f5.format_scalar(3)) == 3
    assert QQ.parse_scalar("-2") == Fraction(-2)
