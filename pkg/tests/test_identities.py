import pytest

from lattice_commutant import identities as I
from lattice_commutant.fock import FockVector
from lattice_commutant.scalars import HalfInt, Q

E_W, E_A = FockVector.lattice(1), FockVector.lattice(2)


def test_single_borcherds_instance():
    rep = I.check_borcherds(E_W, E_W, E_A, HalfInt(-5), -3, -2)
    assert rep.passed and rep.checked == 1


def test_wrong_coset_is_recorded_as_inapplicable():
    rep = I.check_borcherds(E_W, E_W, E_A, 0, 0, 0)
    assert rep.checked == 0 and rep.inapplicable == 1


def test_borcherds_sides_are_not_trivial():
    lhs, rhs = I.borcherds_sides(E_W, E_W, E_W, HalfInt(-5), HalfInt(-5), HalfInt(-3))
    assert lhs == rhs == FockVector.parse("-2/3*w(-1)^3*e[3] - w(-2)*w(-1)*e[3] - 1/3*w(-3)*e[3]")


def test_exhaustive_small_suite():
    rep = I.borcherds_suite_exhaustive(3)
    assert rep.passed and rep.checked > 100_000 and rep.inapplicable == 0


def test_sampling_is_deterministic():
    a = I.sample_borcherds_instances(6, 40, seed=3)
    assert a == I.sample_borcherds_instances(6, 40, seed=3)
    assert a != I.sample_borcherds_instances(6, 40, seed=4)


def test_sampled_suite():
    rep = I.borcherds_suite_sampled(6, 100, 1)
    assert rep.passed and rep.checked == 100


def test_corrupted_sign_is_caught(monkeypatch):
    """Flipping the braiding sign must produce failures."""
    from lattice_commutant import kernels

    real = kernels.borcherds_sides

    def flipped(b, c, d, n2, m2, k2, tops, eta, cache):
        return real(b, c, d, n2, m2, k2, tops, eta + 2, {})

    monkeypatch.setattr(kernels, "borcherds_sides", flipped)
    ev = I.BorcherdsEvaluator(E_W, E_W, E_W)
    bad = sum(1 for n2, m2, k2 in ev.window() if ev.sides(n2, m2, k2)[0] != ev.sides(n2, m2, k2)[1])
    assert bad > 0


def test_central_charge_is_one():
    assert I.calibrate_central_charge() == 1


def test_quasiconformal_requires_n_at_least_minus_one():
    with pytest.raises(ValueError):
        I.check_quasiconformal(-2, 0, E_A)


def test_quasiconformal_and_virasoro_suites():
    assert I.quasiconformal_suite(3).passed
    assert I.virasoro_suite(3).passed


def test_wrong_central_charge_fails():
    rep = I.check_virasoro_algebra(2, -2, FockVector.vacuum(), central_charge=2)
    assert not rep.passed


def test_lattice_relation_suites():
    for rep in (
        I.commutation_suite(2),
        I.heisenberg_vertex_suite(2),
        I.rho_suite(3),
        I.translation_suite(2),
        I.creation_suite(3),
    ):
        assert rep.passed and rep.checked > 0, rep.summary()


def test_rho_rejects_odd_charge():
    with pytest.raises(ValueError):
        I.rho_sides(0, 0, 0, E_W)


def test_report_json_is_stable():
    rep = I.commutation_suite(1)
    js = rep.to_json()
    assert js == I.commutation_suite(1).to_json()
    assert set(js) >= {"identity", "checked", "inapplicable", "failures"}
