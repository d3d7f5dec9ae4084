"""Exact, per-instance verification of the generalized vertex algebra identities.

All checks compare canonical sparse vectors for literal equality; there are no
tolerances.  Mode indices are handled doubled internally (``n2 = 2n``).

Mode windows for the exhaustive Borcherds suite
-----------------------------------------------
For bi-homogeneous b, c, d the term b(x)c can only be non-zero when
``x <= wt b + wt c - 1 - (charge of the product)^2 / 4`` and similarly for the
pairs (b, d), (c, d); the output weight must be at least the minimal weight of
its charge sector.  The window takes every coset-admissible index from -3 up
to its bound plus 2, with the output-weight bound also relaxed by 2, so that
the vanishing just outside the bounds is confirmed as well.
"""
from __future__ import annotations

import itertools
import random
from typing import Iterable

from . import kernels
from .fock import FockVector, heisenberg_apply, pairing
from .linalg import enumerate_graded_monomials
from .report import IdentityReport, timed
from .scalars import Q, ZERO, HalfInt, doubled
from .vertex import derivation, rational_binomial, state_field_mode, vertex_mode_apply, virasoro_mode

VACUUM = FockVector.vacuum()
E_ALPHA = FockVector.lattice(2)
E_VARPI = FockVector.lattice(1)

WINDOW_LOW = -3
WINDOW_EXTENSION = 2


def _binom2(x2: int, j: int) -> Q:
    return kernels.binom_half(x2, j)


def _parity_sign(e2: int) -> int:
    """(-1)^(e2/2) for even e2."""
    return -1 if (e2 // 2) % 2 else 1


def _w4(v: FockVector) -> tuple:
    c, w = v.bidegree()
    return c, int(4 * w)


_mode_dict = kernels.mode_on_vector


class BorcherdsEvaluator:
    """Both sides of the Borcherds identity for a fixed bi-homogeneous triple.

    Intermediate products b(q)c, c(p)d, b(p)d and the iterated modes are cached
    per triple, so sweeping a window of (n, m, k) reuses them.
    """

    def __init__(self, b: FockVector, c: FockVector, d: FockVector):
        self.b, self.c, self.d = b.terms, c.terms, d.terms
        self.cb, self.wb4 = _w4(b)
        self.cc, self.wc4 = _w4(c)
        self.cd, self.wd4 = _w4(d)
        self._cache: dict = {}
        self._tops = self.bounds()[:3]

    # largest doubled index for which x(idx)y can be non-zero
    def _top2(self, wx4: int, wy4: int, charge: int) -> int:
        # x(m)y has weight wx + wy - m - 1 >= charge^2/4
        return (wx4 + wy4 - 4 - charge * charge) // 2

    def bounds(self) -> tuple:
        cb, cc, cd = self.cb, self.cc, self.cd
        return (
            self._top2(self.wb4, self.wc4, cb + cc),
            self._top2(self.wb4, self.wd4, cb + cd),
            self._top2(self.wc4, self.wd4, cc + cd),
            # n + m + k <= S where output weight >= (total charge)^2/4
            (self.wb4 + self.wc4 + self.wd4 - 8 - (cb + cc + cd) ** 2) // 2,
        )

    def admissible(self, n2: int, m2: int, k2: int) -> bool:
        return (
            (n2 + self.cb * self.cc) % 2 == 0
            and (k2 + self.cc * self.cd) % 2 == 0
            and (m2 + self.cb * self.cd) % 2 == 0
        )

    def sides(self, n2: int, m2: int, k2: int) -> tuple:
        lhs, rhs = kernels.borcherds_sides(
            self.b, self.c, self.d, n2, m2, k2, self._tops, self.cb * self.cc, self._cache
        )
        return FockVector(lhs, _trusted=True), FockVector(rhs, _trusted=True)

    def window(self) -> list:
        top_n, top_m, top_k, top_s = self.bounds()
        ext = 2 * WINDOW_EXTENSION
        lo = 2 * WINDOW_LOW
        out = []
        for n2 in range(lo, top_n + ext + 1):
            if (n2 + self.cb * self.cc) % 2:
                continue
            for m2 in range(lo, top_m + ext + 1):
                if (m2 + self.cb * self.cd) % 2:
                    continue
                for k2 in range(lo, top_k + ext + 1):
                    if (k2 + self.cc * self.cd) % 2:
                        continue
                    if n2 + m2 + k2 > top_s + ext:
                        continue
                    out.append((n2, m2, k2))
        return out


def borcherds_sides(b: FockVector, c: FockVector, d: FockVector, n, m, k) -> tuple | None:
    """(lhs, rhs) of the Borcherds identity, or None when the mode triple is in the wrong coset."""
    ev = BorcherdsEvaluator(b, c, d)
    n2, m2, k2 = doubled(n), doubled(m), doubled(k)
    if not ev.admissible(n2, m2, k2):
        return None
    return ev.sides(n2, m2, k2)


def check_borcherds(b: FockVector, c: FockVector, d: FockVector, n, m, k) -> IdentityReport:
    rep = IdentityReport("borcherds")
    with timed(rep):
        res = borcherds_sides(b, c, d, n, m, k)
        if res is None:
            rep.inapplicable += 1
        else:
            rep.record((str(b), str(c), str(d), str(HalfInt.of(n)), str(HalfInt.of(m)), str(HalfInt.of(k))), *res)
    return rep


def basis_monomials(max_weight) -> list:
    """All Fock monomials of V_{A1 dual} with weight <= max_weight, canonical order."""
    from .subspaces import bidegrees

    out = []
    for c, w in bidegrees("VA1circ", max_weight):
        out.extend(enumerate_graded_monomials(c, w).monomials)
    return out


def basis_triples(max_weight) -> list:
    mons = basis_monomials(max_weight)
    w4 = {m: m[0] * m[0] + 4 * sum(m[1]) for m in mons}
    lim = int(4 * Q(max_weight))
    return [t for t in itertools.product(mons, repeat=3) if w4[t[0]] + w4[t[1]] + w4[t[2]] <= lim]


def _vec(mono) -> FockVector:
    return FockVector({mono: Q(1)}, _trusted=True)


def borcherds_suite_exhaustive(max_weight=5, progress=None) -> IdentityReport:
    """Every basis triple of total weight <= max_weight over its whole mode window."""
    rep = IdentityReport(f"borcherds_exhaustive[weight<={max_weight}]")
    with timed(rep):
        triples = basis_triples(max_weight)
        for i, (b, c, d) in enumerate(triples):
            if progress and i % 500 == 0:
                progress(f"borcherds triple {i}/{len(triples)}")
            ev = BorcherdsEvaluator(_vec(b), _vec(c), _vec(d))
            for n2, m2, k2 in ev.window():
                lhs, rhs = ev.sides(n2, m2, k2)
                rep.record((b, c, d, n2, m2, k2), lhs, rhs)
        rep.notes["triples"] = len(triples)
    return rep


def sample_borcherds_instances(max_weight, count: int, seed: int) -> list:
    """``count`` seeded (triple, doubled mode triple) draws at total weight <= max_weight.

    Triples whose mode window is empty are redrawn.
    """
    rng = random.Random(seed)
    triples = basis_triples(max_weight)
    out = []
    while len(out) < count:
        t = triples[rng.randrange(len(triples))]
        win = BorcherdsEvaluator(*(_vec(x) for x in t)).window()
        if win:
            out.append((t, win[rng.randrange(len(win))]))
    return out


def borcherds_suite_sampled(max_weight=7, count: int = 500, seed: int = 0) -> IdentityReport:
    rep = IdentityReport(f"borcherds_sampled[weight<={max_weight},n={count},seed={seed}]")
    with timed(rep):
        for (b, c, d), (n2, m2, k2) in sample_borcherds_instances(max_weight, count, seed):
            ev = BorcherdsEvaluator(_vec(b), _vec(c), _vec(d))
            rep.record((b, c, d, n2, m2, k2), *ev.sides(n2, m2, k2))
    return rep


# ------------------------------------------------------------ lattice relations

def check_commutation_sign(m, k, v: FockVector) -> IdentityReport:
    """e^a(m) e^w(k) = -e^w(k) e^a(m) on v."""
    rep = IdentityReport("commutation_sign")
    with timed(rep):
        lhs = vertex_mode_apply(2, m, vertex_mode_apply(1, k, v))
        rhs = -vertex_mode_apply(1, k, vertex_mode_apply(2, m, v))
        rep.record((str(HalfInt.of(m)), str(HalfInt.of(k)), str(v)), lhs, rhs)
    return rep


def check_heisenberg_vertex(n: int, b: int, m, v: FockVector) -> IdentityReport:
    """[w(n), e^{b w}(m)] = (w, b w) e^{b w}(n + m)."""
    rep = IdentityReport("heisenberg_vertex_commutator")
    with timed(rep):
        lhs = heisenberg_apply(n, vertex_mode_apply(b, m, v)) - vertex_mode_apply(b, m, heisenberg_apply(n, v))
        rhs = pairing(1, b) * vertex_mode_apply(b, HalfInt.of(m) + n, v)
        rep.record((n, b, str(HalfInt.of(m)), str(v)), lhs, rhs)
    return rep


def check_quasiconformal(n: int, m, v: FockVector, which: str = "both") -> IdentityReport:
    """[L_n, e^a(m)] = -m e^a(n+m) and [L_n, e^w(m)] = (-m - 3n/4 - 3/4) e^w(n+m) on v."""
    if n < -1:
        raise ValueError("quasiconformal relations are checked for n >= -1")
    rep = IdentityReport("quasiconformal")
    mh = HalfInt.of(m)
    mv = Q(mh.doubled, 2)
    cases = []
    if which in ("both", "alpha"):
        cases.append((2, -mv))
    if which in ("both", "varpi"):
        cases.append((1, -mv - Q(3 * n, 4) - Q(3, 4)))
    with timed(rep):
        for b, coef in cases:
            lhs = virasoro_mode(n, vertex_mode_apply(b, mh, v)) - vertex_mode_apply(b, mh, virasoro_mode(n, v))
            rhs = coef * vertex_mode_apply(b, mh + n, v)
            if not v or all((mh.doubled + b * c) % 2 for c, _ in v.terms):
                rep.inapplicable += 1
                continue
            rep.record((b, n, str(mh), str(v)), lhs, rhs)
    return rep


def calibrate_central_charge() -> Q:
    """c from [L_2, L_{-2}] 1 = (4 L_0 + c/2) 1 = (c/2) 1."""
    v = virasoro_mode(2, virasoro_mode(-2, VACUUM)) - virasoro_mode(-2, virasoro_mode(2, VACUUM))
    return 2 * v.coefficient((0, ()))


def check_virasoro_algebra(m: int, n: int, v: FockVector, central_charge=None) -> IdentityReport:
    """[L_m, L_n] v = (m - n) L_{m+n} v + (m^3 - m)/12 c delta_{m+n,0} v."""
    c = calibrate_central_charge() if central_charge is None else Q(central_charge)
    rep = IdentityReport("virasoro")
    with timed(rep):
        lhs = virasoro_mode(m, virasoro_mode(n, v)) - virasoro_mode(n, virasoro_mode(m, v))
        rhs = (m - n) * virasoro_mode(m + n, v)
        if m + n == 0:
            rhs = rhs + Q(m ** 3 - m, 12) * c * v
        rep.record((m, n, str(v)), lhs, rhs)
        rep.notes["central_charge"] = c
    return rep


def rho_sides(m: int, k: int, n: int, v: FockVector) -> tuple:
    """rho_{m,k;n} v by its defining sum and by its Borcherds expansion."""
    if m < 0 or k < 0:
        raise ValueError("m and k must be non-negative")
    if any(c % 2 for c, _ in v.terms):
        raise ValueError("rho acts on V_{A1} (even charge)")
    vd = v.terms
    ev = vd and max(c * c + 4 * sum(p) for c, p in vd)
    lhs: dict = {}
    for j in range(m + 1):
        u = vertex_mode_apply(1, HalfInt(2 * (n + j) - 1), E_VARPI)
        if u:
            kernels.add_into(lhs, _mode_dict(u.terms, 2 * (m + k - j), vd), Q(rational_binomial(m, j)))
    rhs: dict = {}
    n2 = 2 * n - 1
    sign = -1 if n % 2 else 1
    # e^w(p) v vanishes once p exceeds the weight of v
    top = (ev // 4 + 2) if vd else 0
    for j in range(0, max(top - k, 0) + 1):
        t = _mode_dict(E_VARPI.terms, 2 * (m + n - j) - 1, _mode_dict(E_VARPI.terms, 2 * (k + j), vd))
        if t:
            kernels.add_into(rhs, t, _binom2(n2, j) * (-1) ** j)
    for j in range(0, max(top - m, 0) + 1):
        t = _mode_dict(E_VARPI.terms, 2 * (n + k - j) - 1, _mode_dict(E_VARPI.terms, 2 * (m + j), vd))
        if t:
            kernels.add_into(rhs, t, -sign * _binom2(n2, j) * (-1) ** j)
    return FockVector(lhs, _trusted=True), FockVector(rhs, _trusted=True)


def check_rho_identity(m: int, k: int, n: int, v: FockVector) -> IdentityReport:
    rep = IdentityReport("rho_identity")
    with timed(rep):
        rep.record((m, k, n, str(v)), *rho_sides(m, k, n, v))
    return rep


def check_translation_covariance(u: FockVector, m, v: FockVector) -> IdentityReport:
    """(du)(m) v = -m u(m-1) v."""
    rep = IdentityReport("translation_covariance")
    mh = HalfInt.of(m)
    with timed(rep):
        lhs = state_field_mode(derivation(u), mh, v)
        rhs = -Q(mh.doubled, 2) * state_field_mode(u, mh - 1, v)
        rep.record((str(u), str(mh), str(v)), lhs, rhs)
    return rep


def check_creation(u: FockVector, max_mode: int = 3) -> IdentityReport:
    """u(-1) 1 = u and u(n) 1 = 0 for n >= 0."""
    rep = IdentityReport("creation")
    with timed(rep):
        rep.record((str(u), -1), state_field_mode(u, -1, VACUUM), u)
        for n in range(max_mode + 1):
            rep.record((str(u), n), state_field_mode(u, n, VACUUM), FockVector.zero())
    return rep


# ------------------------------------------------------------ suites

def _states(max_weight, even_only: bool = False) -> list:
    return [_vec(m) for m in basis_monomials(max_weight) if not (even_only and m[0] % 2)]


def _merge(name: str, reports: Iterable[IdentityReport]) -> IdentityReport:
    out = IdentityReport(name)
    for r in reports:
        out = out.merge(r)
    out.identity = name
    return out


def quasiconformal_suite(max_weight=4, max_n: int = 3, max_m: int = 4) -> IdentityReport:
    reps = []
    for v in _states(max_weight):
        for n in range(-1, max_n + 1):
            for m2 in range(-2 * max_m, 2 * max_m + 1):
                reps.append(check_quasiconformal(n, HalfInt(m2), v))
    return _merge(f"quasiconformal[weight<={max_weight}]", reps)


def virasoro_suite(max_weight=4, max_mode: int = 3) -> IdentityReport:
    c = calibrate_central_charge()
    reps = []
    for v in _states(max_weight):
        for m in range(-max_mode, max_mode + 1):
            for n in range(-max_mode, max_mode + 1):
                reps.append(check_virasoro_algebra(m, n, v, c))
    rep = _merge(f"virasoro[weight<={max_weight}]", reps)
    rep.notes["central_charge"] = c
    return rep


def commutation_suite(max_weight=3, max_mode: int = 3) -> IdentityReport:
    reps = []
    for v in _states(max_weight):
        for m in range(-max_mode, max_mode + 1):
            for k2 in range(-2 * max_mode, 2 * max_mode + 1):
                reps.append(check_commutation_sign(m, HalfInt(k2), v))
    return _merge(f"commutation_sign[weight<={max_weight}]", reps)


def heisenberg_vertex_suite(max_weight=3, max_mode: int = 3) -> IdentityReport:
    reps = []
    for v in _states(max_weight):
        for b in (1, 2, -1):
            for n in range(-max_mode, max_mode + 1):
                for m2 in range(-2 * max_mode, 2 * max_mode + 1):
                    reps.append(check_heisenberg_vertex(n, b, HalfInt(m2), v))
    return _merge(f"heisenberg_vertex[weight<={max_weight}]", reps)


def rho_suite(max_weight=3, max_mk: int = 2, n_range: int = 2) -> IdentityReport:
    reps = []
    for v in _states(max_weight, even_only=True):
        for m in range(max_mk + 1):
            for k in range(max_mk + 1):
                for n in range(-n_range, n_range + 1):
                    reps.append(check_rho_identity(m, k, n, v))
    return _merge(f"rho_identity[weight<={max_weight}]", reps)


def translation_suite(max_weight=3, max_mode: int = 3) -> IdentityReport:
    reps = []
    states = _states(max_weight)
    for u in states:
        for v in states:
            cu, cv = u.charge(), v.charge()
            for m2 in range(-2 * max_mode, 2 * max_mode + 1):
                if (m2 + cu * cv) % 2:
                    continue
                reps.append(check_translation_covariance(u, HalfInt(m2), v))
    return _merge(f"translation_covariance[weight<={max_weight}]", reps)


def creation_suite(max_weight=4) -> IdentityReport:
    return _merge(f"creation[weight<={max_weight}]", (check_creation(u) for u in _states(max_weight)))


SUITES = {
    "borcherds": lambda w, seed, progress=None: borcherds_suite_exhaustive(w, progress),
    "borcherds-sampled": lambda w, seed, progress=None: borcherds_suite_sampled(w, 500, seed),
    "commutation": lambda w, seed, progress=None: commutation_suite(min(w, 3)),
    "heisenberg": lambda w, seed, progress=None: heisenberg_vertex_suite(min(w, 3)),
    "quasiconformal": lambda w, seed, progress=None: quasiconformal_suite(w),
    "virasoro": lambda w, seed, progress=None: virasoro_suite(w),
    "rho": lambda w, seed, progress=None: rho_suite(min(w, 3)),
    "translation": lambda w, seed, progress=None: translation_suite(min(w, 3)),
    "creation": lambda w, seed, progress=None: creation_suite(w),
}
