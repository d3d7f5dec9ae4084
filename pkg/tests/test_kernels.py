"""The compiled and pure kernels agree, and the combinatorial kernels match sympy."""
import importlib

import pytest
import sympy
from sympy.functions.combinatorial.numbers import partition

from lattice_commutant import _pykernels as py
from lattice_commutant import kernels
from lattice_commutant.scalars import Q

try:
    ck = importlib.import_module("lattice_commutant._ckernels")
except ImportError:  # extension not built
    ck = None

needs_compiled = pytest.mark.skipif(ck is None, reason="compiled kernels not built")

MONOS = [(0, ()), (1, ()), (2, ()), (-1, (1,)), (2, (2, 1)), (1, (1, 1)), (-2, (3,)), (0, (2, 2))]


@pytest.mark.parametrize("k", range(9))
def test_partition_counts(k):
    assert len(py.partitions(k)) == int(partition(k))
    assert all(list(p) == sorted(p, reverse=True) and sum(p) == k for p in py.partitions(k))


@pytest.mark.parametrize("b,k", [(1, 3), (2, 4), (-1, 5), (2, 6)])
def test_schur_terms_against_series(b, k):
    z = sympy.Symbol("z")
    xs = sympy.symbols(f"x1:{k + 1}")
    gen = sympy.exp(sum(sympy.Rational(b, i) * xs[i - 1] * z ** i for i in range(1, k + 1)))
    want = sympy.expand(sympy.series(gen, z, 0, k + 1).removeO().coeff(z, k))
    got = sum(
        sympy.Rational(int(c.numerator), int(c.denominator)) * sympy.Mul(*[xs[p - 1] for p in parts])
        for parts, c in py.schur_terms(b, k)
    )
    assert sympy.expand(got - want) == 0


def test_selected_implementation_is_reported():
    assert kernels.IMPLEMENTATION in ("compiled", "python")


@needs_compiled
@pytest.mark.parametrize("u", MONOS)
@pytest.mark.parametrize("d", MONOS)
def test_mode_kernels_agree(u, d):
    for m2 in range(-10, 7):
        assert ck.mode_on_monomial(u, m2, d) == py.mode_on_monomial(u, m2, d)


@needs_compiled
def test_vertex_and_heisenberg_kernels_agree():
    for b in (-2, -1, 1, 2):
        for c, parts in MONOS:
            for m2 in range(-8, 5):
                assert ck.vertex_on_monomial(b, m2, c, parts) == py.vertex_on_monomial(b, m2, c, parts)
            for n in range(-3, 4):
                assert ck.heisenberg_on_monomial(n, c, parts) == py.heisenberg_on_monomial(n, c, parts)


@needs_compiled
def test_rref_agrees():
    rows = [[Q(i * j - 3, j + 1) for j in range(6)] for i in range(5)] + [[Q(0)] * 6]
    assert ck.rref(rows, 6) == py.rref(rows, 6)


@needs_compiled
def test_borcherds_kernel_agrees():
    b, c, d = {(1, ()): Q(1)}, {(1, (1,)): Q(1)}, {(2, ()): Q(1)}
    tops = (4, 4, 4)
    for n2 in (-3, -1, 1):
        for m2 in (-2, 0):
            for k2 in (-2, 0, 2):
                args = (b, c, d, n2, m2 + 1, k2 + 1, tops, 1)
                assert ck.borcherds_sides(*args, {}) == py.borcherds_sides(*args, {})


def test_rref_pivots_leftmost():
    rows = [[Q(0), Q(2), Q(4)], [Q(1), Q(1), Q(1)]]
    red, piv = kernels.rref(rows, 3)
    assert piv == [0, 1]
    assert red == [[Q(1), Q(0), Q(-1)], [Q(0), Q(1), Q(2)]]


def test_mode_memo_does_not_change_results():
    u, d = (2, (1,)), (-2, (2,))
    first = {k: v for k, v in kernels.mode_on_monomial(u, -2, d).items()}
    kernels.clear_caches()
    assert kernels.mode_on_monomial(u, -2, d) == first


def test_pure_fallback_is_selectable():
    import os
    import subprocess
    import sys

    env = dict(os.environ, LATTICE_COMMUTANT_PURE="1")
    out = subprocess.run(
        [sys.executable, "-c", "from lattice_commutant import kernels; print(kernels.IMPLEMENTATION)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
