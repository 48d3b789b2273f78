"""Tests for prime-field arithmetic."""
import pytest

from app.core.exceptions import FieldArithmeticError
from app.services.lie_processing import scalars
from app.services.lie_processing.scalars import PrimeField, is_prime


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


@pytest.mark.parametrize("modulus", [0, 1, 4, 9, 15])
def test_composite_modulus_rejected(modulus):
    with pytest.raises(FieldArithmeticError):
        PrimeField(modulus)


def test_basic_operations():
    f = PrimeField(7)
    assert f(3) + f(5) == f(1)
    assert f(3) - f(5) == f(5)
    assert f(3) * f(5) == f(1)
    assert f(3).inv() == f(5)
    assert f(3) / f(5) == f(2)
    assert -f(3) == f(4)
    assert f(2) ** -1 == f(4)
    assert f(10) == f(3)
    assert f(-1).value == 6


@pytest.mark.parametrize(
    "p,expr,expected",
    [(5, lambda f: f(3) + f(4), 2), (5, lambda f: f(2) * f(3), 1), (2, lambda f: f(1) + f(1), 0),
     (7, lambda f: f(3).inv(), 5), (5, lambda f: f(1).inv(), 1), (11, lambda f: f(2).inv(), 6),
     (5, lambda f: f(2) ** -1, 3), (7, lambda f: f(3) ** 0, 1), (5, lambda f: f(2) ** 4, 1)],
)
def test_small_examples(p, expr, expected):
    assert expr(PrimeField(p)).value == expected


def test_square_examples():
    f7 = PrimeField(7)
    assert f7(2).is_square()
    assert not f7(3).is_square()
    assert PrimeField(2)(1).is_square()
    with pytest.raises(FieldArithmeticError):
        f7(0) ** -1


def test_int_coercion():
    f = PrimeField(5)
    assert f(3) + 4 == f(2)
    assert 4 - f(3) == f(1)
    assert 2 * f(3) == f(1)


def test_zero_not_invertible():
    with pytest.raises(FieldArithmeticError, match="not invertible"):
        PrimeField(5)(0).inv()


def test_mismatched_moduli():
    with pytest.raises(FieldArithmeticError, match="mismatched moduli"):
        PrimeField(5)(1) + PrimeField(7)(1)


def test_module_functions():
    f = PrimeField(11)
    a, b = f(4), f(9)
    assert scalars.add(a, b) == f(2)
    assert scalars.sub(a, b) == f(6)
    assert scalars.mul(a, b) == f(3)
    assert scalars.mul(a, scalars.inv(a)) == f.one
    assert scalars.power(a, 5) == f(1)
    assert scalars.is_square(a)


@pytest.mark.parametrize("p,root", [(2, 1), (3, 2), (5, 2), (7, 3), (11, 2), (13, 2)])
def test_primitive_root(p, root):
    f = PrimeField(p)
    assert f.primitive_root == f(root)
    if p > 2:
        powers = {(f.primitive_root ** k).value for k in range(p - 1)}
        assert powers == set(range(1, p))


def test_squares():
    assert [s.value for s in PrimeField(7).squares()] == [1, 2, 4]
    assert [s.value for s in PrimeField(5).squares()] == [1, 4]


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_half_the_units_are_squares(p):
    f = PrimeField(p)
    assert sum(1 for a in f.units() if a.is_square()) == (p - 1) // 2


@pytest.mark.parametrize("p", [2, 3, 5])
def test_field_axioms_exhaustive(p):
    f = PrimeField(p)
    elems = list(f.elements())
    for a in elems:
        assert a + f.zero == a
        assert a * f.one == a
        if a:
            assert a * a.inv() == f.one
        for b in elems:
            assert a + b == b + a
            assert a * b == b * a
            for c in elems:
                assert a * (b + c) == a * b + a * c
