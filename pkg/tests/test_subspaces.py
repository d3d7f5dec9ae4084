import pytest
from hypothesis import given, strategies as st

from lattice_commutant import subspaces as S
from lattice_commutant.fock import FockVector
from lattice_commutant.linalg import span_rank
from lattice_commutant.scalars import Q
from lattice_commutant.vertex import derivation, state_field_mode, vertex_mode_apply


def test_index_tuples():
    assert S.index_tuples(2, 3) == [(0, 3), (1, 2)]
    assert S.index_tuples(0, 0) == [()]
    assert S.index_tuples(0, 1) == []
    assert S.index_tuples(3, 2) == [(0, 0, 2), (0, 1, 1)]


def test_phi_low_cases():
    assert S.phi(0) == FockVector.lattice(2)
    assert S.phi(1).to_text("a") == "3/16*a(-1)^2*e[2] - 1/8*a(-2)*e[2]"


@pytest.mark.parametrize("n", range(4))
def test_phi_matches_schur_expansion(n):
    assert S.phi(n) == S.phi_schur(n)


@pytest.mark.parametrize("n", range(4))
def test_phi_bidegree(n):
    assert S.phi(n).bidegree() == (2, 2 * n + 1)


def test_principal_vectors():
    assert S.principal_vector((0,)) == FockVector.lattice(2)
    assert S.principal_vector((0, 0)) == FockVector.lattice(4)
    assert S.principal_vector((0, 1)).bidegree() == (4, 5)


def test_generalized_vectors():
    assert S.generalized_principal_vector((0,)) == FockVector.lattice(1)
    assert S.generalized_principal_vector((0, 0)) == FockVector.lattice(2)
    with pytest.raises(ValueError):
        S.generalized_principal_vector((-1,))


@given(st.integers(0, 3), st.integers(0, 3))
def test_commutant_basis_is_annihilated(a, b):
    v = S.generalized_principal_vector((min(a, b), max(a, b)))
    for n in range(0, 2 * (a + b) + 4):
        assert vertex_mode_apply(2, n, v) == 0


def test_commutant_table_and_sandwich():
    rows = S.commutant_dimension_table("W", "VA1", max_weight=6, max_charge=4)
    assert all(r.sandwich for r in rows)
    dims = {(r.charge, int(r.weight)): r.dim for r in rows if r.dim}
    assert dims[(2, 5)] == 3 and dims[(4, 6)] == 2
    assert (0, 3) not in dims


def test_generalized_commutant_in_dual_lattice():
    rows = S.commutant_dimension_table("W", "VA1circ", max_weight=3, max_charge=3)
    assert all(r.sandwich for r in rows)
    assert sum(r.dim for r in rows if r.weight == 3) == S.basis_count("Wcirc", 2, 3)


def test_sandwich_failure_is_reported(monkeypatch):
    monkeypatch.setattr(S, "graded_basis", lambda space, c, w: [FockVector.monomial(c, (1,) * int(w - Q(c * c, 4)))])
    with pytest.raises(S.SandwichMismatch):
        S.commutant_dimension_table("W", "VA1", max_weight=2, max_charge=2)


def test_duality_small():
    rows = S.commutant_dimension_table("C", "VA1", max_weight=4, max_charge=8, K=2)
    assert all(r.sandwich for r in rows)


def test_generator_kernel_requires_cutoff():
    with pytest.raises(ValueError):
        S.generator_operators("C", 2, 3)


@pytest.mark.parametrize("r,w", [(2, 8), (3, 10)])
def test_cnew_basis(r, w):
    assert S.verify_basis_cnew(r, w).passed


def test_sl2_report():
    rep = S.sl2_report(7, 3)
    assert rep.passed
    assert [row.dim for row in rep.rows] == [(d + 1) // 2 for d in range(1, 8)]
    assert [row.ker_L1 for row in rep.rows] == [d % 2 for d in range(1, 8)]


def test_matrix_A_determinant():
    m = S._matrix_A_check(3)
    assert m["ok"] and m["det"] == Q(13, 2) * Q(11, 2) * Q(9, 2)


def test_d_phi_recurrence_matches_direct_derivation():
    for n in range(3):
        for m in range(3):
            lhs = derivation(S.generalized_principal_vector((n, m)))
            rhs = (Q(m) + Q(3, 2)) * S.generalized_principal_vector((n, m + 1)) + (n + 1) * S.generalized_principal_vector((n + 1, m))
            assert lhs == rhs


def test_strong_generation_and_minimality():
    assert S.strong_generation_check(5).passed
    for k in range(3):
        assert S.minimality_check(k).passed


def test_phi_monomial_lies_in_commutant():
    v = S.phi_monomial(((1, 0), (0, 0)))
    assert v == state_field_mode(S.phi(1), -1, S.phi(0))
    assert v.bidegree() == (4, 4)
    assert all(not vertex_mode_apply(2, n, v) for n in range(8))
