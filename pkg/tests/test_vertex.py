from hypothesis import given, strategies as st

from lattice_commutant.fock import FockVector, heisenberg_apply, pairing
from lattice_commutant.scalars import HalfInt, Q
from lattice_commutant.vertex import (
    derivation,
    omega,
    rational_binomial,
    schur_creation_apply,
    state_field_mode,
    vertex_mode_apply,
    virasoro_mode,
)

from strategies import homogeneous_states, monomial_states, states

VAC = FockVector.vacuum()
E_W = FockVector.lattice(1)
E_A = FockVector.lattice(2)


def test_vertex_mode_examples():
    assert vertex_mode_apply(1, HalfInt(-3), E_W) == E_A
    assert vertex_mode_apply(1, HalfInt(-1), E_W) == 0
    assert vertex_mode_apply(2, 0, FockVector.lattice(-2)) == FockVector.monomial(0, (1,), 2)
    got = vertex_mode_apply(1, HalfInt(-5), FockVector.monomial(1, (1,)))
    assert got == FockVector.parse("3/4*w(-1)^2*e[2] - 1/4*w(-2)*e[2]")


def test_wrong_coset_is_zero():
    assert vertex_mode_apply(1, 0, E_W) == 0
    assert state_field_mode(E_W, 1, E_W) == 0


def test_schur_creation():
    got = schur_creation_apply(2, 2, VAC)
    assert got == FockVector.parse("2*w(-1)^2*e[0] + 1*w(-2)*e[0]")


def test_rational_binomial():
    assert rational_binomial(Q(1, 2), 2) == Q(-1, 8)
    assert rational_binomial(-1, 3) == -1
    assert rational_binomial(5, 0) == 1


def test_state_field_mode_of_lattice_vector_is_vertex_mode():
    for v in (VAC, E_W, FockVector.monomial(-1, (2,))):
        for m2 in range(-7, 4):
            assert state_field_mode(E_A, HalfInt(m2), v) == vertex_mode_apply(2, HalfInt(m2), v)


def test_virasoro_vector():
    assert virasoro_mode(0, E_A) == E_A
    assert virasoro_mode(0, E_W) == Q(1, 4) * E_W
    assert virasoro_mode(-1, E_A) == derivation(E_A)
    assert state_field_mode(omega(), 1, E_A) == E_A


@given(states())
def test_creation_identity(u):
    assert state_field_mode(u, -1, VAC) == u
    for n in range(4):
        assert state_field_mode(u, n, VAC) == 0


@given(states())
def test_derivation_is_minus_two_mode_on_vacuum(u):
    assert derivation(u) == state_field_mode(u, -2, VAC)


@given(states())
def test_derivation_is_L_minus_one(u):
    assert derivation(u) == virasoro_mode(-1, u)


@given(monomial_states(), st.integers(-6, 4), monomial_states())
def test_translation_covariance(u, m2, v):
    m2 = m2 * 2 + (u.charge() * v.charge()) % 2
    m = HalfInt(m2)
    lhs = state_field_mode(derivation(u), m, v)
    rhs = -Q(m2, 2) * state_field_mode(u, m - 1, v)
    assert lhs == rhs


@given(st.integers(-3, 3), st.sampled_from([-2, -1, 1, 2]), st.integers(-8, 6), states())
def test_heisenberg_vertex_commutator(n, b, m2, v):
    m = HalfInt(m2)
    lhs = heisenberg_apply(n, vertex_mode_apply(b, m, v)) - vertex_mode_apply(b, m, heisenberg_apply(n, v))
    assert lhs == pairing(1, b) * vertex_mode_apply(b, m + n, v)


@given(homogeneous_states(), st.integers(-6, 6), homogeneous_states())
def test_grading_contract(u, m2, v):
    out = state_field_mode(u, HalfInt(m2), v)
    if out:
        (cu, wu), (cv, wv) = u.bidegree(), v.bidegree()
        assert out.bidegree() == (cu + cv, wu + wv - Q(m2, 2) - 1)
