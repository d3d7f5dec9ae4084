import pytest
from hypothesis import given, strategies as st

from lattice_commutant.fock import FockVector, TermSyntaxError, canonicalize, heisenberg_apply
from lattice_commutant.scalars import Q

from strategies import homogeneous_states, states


def test_lattice_vector_weights():
    assert FockVector.lattice(2).weight() == 1
    assert FockVector.lattice(1).weight() == Q(1, 4)
    assert FockVector.monomial(1, (2, 1)).bidegree() == (1, Q(13, 4))


def test_parse_accepts_both_alphabets():
    v = FockVector.parse("3/16*a(-1)^2*e[2] - 1/8*a(-2)*e[2]")
    w = FockVector.parse("3/4*w(-1)^2*e[2] - 1/4*w(-2)*e[2]")
    assert v == w
    assert v.to_text("a") == "3/16*a(-1)^2*e[2] - 1/8*a(-2)*e[2]"
    assert v.to_text("w") == "3/4*w(-1)^2*e[2] - 1/4*w(-2)*e[2]"


def test_zero_renders_as_zero():
    assert FockVector.zero().to_text() == "0"
    assert FockVector.zero() == 0


@pytest.mark.parametrize("bad", ["e[", "+", "w(2)*e[0]", "3/0*e[1]", "x(-1)*e[0]", "w(-1)"])
def test_parse_errors(bad):
    with pytest.raises(TermSyntaxError):
        FockVector.parse(bad)


def test_canonicalize_combines_and_drops():
    v = canonicalize([((0, (1, 2)), Q(1)), ((0, (2, 1)), Q(-1)), ((2, ()), Q(2, 4))])
    assert v.terms == {(2, ()): Q(1, 2)}


@given(states())
def test_canonicalize_idempotent(v):
    once = canonicalize(v.terms.items())
    assert canonicalize(once.terms.items()) == once == v


@given(states())
def test_text_and_json_round_trip(v):
    assert FockVector.parse(v.to_text("w")) == v
    assert FockVector.parse(v.to_text("a")) == v
    assert FockVector.from_json(v.to_json()) == v


@given(states(), st.integers(1, 5))
def test_heisenberg_relation(v, n):
    lhs = heisenberg_apply(n, heisenberg_apply(-n, v)) - heisenberg_apply(-n, heisenberg_apply(n, v))
    assert lhs == Q(n, 2) * v


@given(homogeneous_states(), st.integers(-4, 4))
def test_oscillator_shifts_weight(v, n):
    out = heisenberg_apply(n, v)
    if out:
        c, w = v.bidegree()
        assert out.bidegree() == (c, w - n)


@given(states())
def test_coefficients_in_lowest_terms(v):
    for c in (v * Q(6, 4) + v).terms.values():
        assert Q(c.numerator, c.denominator) == c
        assert c != 0


def test_render_order_is_deterministic():
    v = FockVector.parse("w(-2)*e[2] + w(-1)^2*e[2] + e[0]")
    assert v.to_text() == "1*e[0] + 1*w(-1)^2*e[2] + 1*w(-2)*e[2]"
