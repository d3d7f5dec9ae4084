import json

import pytest

from lattice_commutant import qseries as QS
from lattice_commutant import subspaces as S
from lattice_commutant import zhu as Z
from lattice_commutant.fock import FockVector
from lattice_commutant.vertex import derivation


def test_ring_json_round_trip():
    spec = Z.DifferentialRingSpec.from_json('{"vars": [["x1", 1], ["x2", 3]], "rels": ["x1*x1", "x1*x2"]}')
    assert Z.DifferentialRingSpec.from_json(json.dumps(spec.to_json())) == spec


@pytest.mark.parametrize(
    "doc",
    [
        '{"vars": [["x", 1], ["x", 2]], "rels": []}',
        '{"vars": [["x", 0]], "rels": []}',
        '{"vars": [["x", 1], ["y", 2]], "rels": ["x*y + x"]}',
        '{"vars": [["x", 1]], "rels": ["x*q"]}',
    ],
)
def test_ring_validation(doc):
    with pytest.raises(Z.RingSyntaxError):
        Z.DifferentialRingSpec.from_json(doc)


@pytest.mark.parametrize("weights", [(1,), (1, 2), (2, 3)])
def test_free_jet_counts_weighted_monomials(weights):
    spec = Z.DifferentialRingSpec(tuple((f"x{i}", w) for i, w in enumerate(weights)))
    # each variable of weight w contributes jet variables of weights w, w+1, ...
    order = 7
    gen = [1] + [0] * order
    for w in weights:
        for part in range(w, order + 1):
            for n in range(part, order + 1):
                gen[n] += gen[n - part]
    assert Z.jet_character(spec, order).to_list() == gen


def test_jet_of_RW_is_character_of_W():
    jw = Z.jet_character(Z.ring_RW(), 8)
    assert QS.compare(jw, QS.enumerated_char("W", 8, with_z=False)) is None


def test_jet_of_RC():
    jc = Z.jet_character(Z.ring_RC(6), 6)
    assert jc.to_list()[:6] == [1, 1, 1, 2, 3, 5]
    m = QS.compare(jc, QS.fermionic_char_C(6))
    assert (m.q, m.left, m.right) == (5, 5, 4)


def test_c2_dims():
    assert Z.c2_dims("C", 7).graded_dims() == [1, 1, 0, 1, 0, 1, 0, 1]
    assert Z.c2_dims("W", 5).graded_dims() == [1, 1, 0, 0, 0, 0]


def test_c2_span_contains_derivatives_and_higher_charge():
    for w in range(2, 8):
        span = Z.c2_span("C", 2, w)
        for v in S.graded_basis("C", 2, w - 1):
            assert span.contains(derivation(v))
        assert Z.c2_span("C", 4, w).rank == S.basis_count("C", 4, w)


def test_phi_classes_nonzero_products_zero():
    for n in range(3):
        assert not Z.zhu_class(S.phi(n), "C").is_zero
        for m in range(3):
            assert Z.zhu_product(S.phi(n), S.phi(m), "C").is_zero
            assert Z.zhu_bracket(S.phi(n), S.phi(m), "C").is_zero


def test_commutativity_and_antisymmetry_in_lattice_algebra():
    states = [FockVector.lattice(2), FockVector.lattice(-2), FockVector.monomial(0, (1,)), FockVector.monomial(2, (1,))]
    for u in states:
        for v in states:
            assert Z.zhu_product(u, v, "VA1") == Z.zhu_product(v, u, "VA1")
            assert Z.zhu_bracket(u, v, "VA1") == -Z.zhu_bracket(v, u, "VA1")
    assert not Z.zhu_bracket(states[0], states[1], "VA1").is_zero


def test_generalized_c2_quotient_of_dual_commutant_is_small():
    rows = Z.generalized_c2_dims_Wcirc(6)
    nonzero = [(c, w) for c, w, dim, rank, quot in rows if quot]
    assert all(w <= 1 for _, w in nonzero)
