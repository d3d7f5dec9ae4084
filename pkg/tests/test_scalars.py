from fractions import Fraction

import pytest

from lattice_commutant.scalars import BACKEND, HalfInt, Q, as_scalar, doubled, scalar_str


def test_backend_is_exact():
    assert BACKEND in ("gmpy2", "fractions")
    assert Q(1, 3) + Q(1, 6) == Q(1, 2)


@pytest.mark.parametrize("raw,expected", [(3, Q(3)), ("-5/96", Q(-5, 96)), (Fraction(7, 256), Q(7, 256))])
def test_as_scalar_accepts_exact_inputs(raw, expected):
    assert as_scalar(raw) == expected


def test_as_scalar_rejects_floats():
    with pytest.raises(TypeError):
        as_scalar(0.5)


def test_scalar_str_lowest_terms():
    assert scalar_str(Q(6, 8)) == "3/4"
    assert scalar_str(Q(4, 2)) == "2"


def test_half_integers():
    h = HalfInt.of("3/2")
    assert h.doubled == 3 and not h.is_integer
    assert str(h - 2) == "-1/2"
    assert doubled(-1) == -2
    with pytest.raises(ValueError):
        HalfInt.of(Fraction(1, 3))
