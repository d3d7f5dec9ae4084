"""Acceptance gate: the ten end-to-end criteria, all exact (zero tolerance).

Run with ``pytest tests/test_acceptance.py -v -s`` to see one PASS/FAIL line per criterion.
"""
import pytest

from lattice_commutant import acceptance

# exact comparisons only; these are the pinned truncations
EXHAUSTIVE_BORCHERDS_WEIGHT = 5
SAMPLED_BORCHERDS_WEIGHT = 7
SAMPLED_BORCHERDS_COUNT = 500
COMMUTANT_WEIGHT = 8
DUALITY_WEIGHT = 6

CASES = {
    1: lambda: acceptance.generator_coefficients(),
    2: lambda: acceptance.ope(),
    3: lambda: acceptance.borcherds(EXHAUSTIVE_BORCHERDS_WEIGHT, SAMPLED_BORCHERDS_WEIGHT, SAMPLED_BORCHERDS_COUNT, seed=0),
    4: lambda: acceptance.commutant_dimensions(COMMUTANT_WEIGHT, max_charge=6),
    5: lambda: acceptance.duality(DUALITY_WEIGHT),
    6: lambda: acceptance.zhu_algebra(c_weight=9, w_weight=6, phi_bound=3),
    7: lambda: acceptance.jet_mismatch(order_w=8, order_c=5),
    8: lambda: acceptance.sl2_structure(max_weight=9, recurrence_bound=4, cnew_weight=8),
    9: lambda: acceptance.generation(max_weight=6, max_k=3),
    10: lambda: acceptance.conformal(max_weight=4),
}


@pytest.mark.parametrize("number", sorted(CASES))
def test_criterion(number, acceptance_lines):
    try:
        result = CASES[number]()
    except Exception as exc:
        acceptance_lines[number] = f"[FAIL] criterion {number}: raised {type(exc).__name__}: {exc}"
        raise
    acceptance_lines[number] = result.line()
    print(result.line())
    assert result.number == number
    assert result.passed, result.details
