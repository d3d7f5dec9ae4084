"""The ten end-to-end acceptance checks, shared by the test suite and the CLI ``report`` command.

Every check is exact; ``Criterion.details`` carries the observed values.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from . import identities, qseries, subspaces, zhu
from .fock import FockVector
from .scalars import Q
from .vertex import state_field_mode

PHI1_TEXT = "3/16*a(-1)^2*e[2] - 1/8*a(-2)*e[2]"
PHI2_TEXT = (
    "-1/64*a(-4)*e[2] - 5/96*a(-3)*a(-1)*e[2] + 15/256*a(-2)^2*e[2]"
    " + 7/256*a(-2)*a(-1)^2*e[2] + 31/3072*a(-1)^4*e[2]"
)
OPE_COEFFICIENT = Q(-25, 32)
W_TOTALS = [1, 1, 1, 2, 3, 4, 5, 7, 9]


@dataclass
class Criterion:
    number: int
    title: str
    passed: bool = True
    details: dict = field(default_factory=dict)

    def require(self, key: str, ok: bool, value=None) -> None:
        self.details[key] = value if value is not None else ok
        if not ok:
            self.passed = False
            self.details.setdefault("failed", []).append(key)

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] criterion {self.number}: {self.title}"

    def to_json(self) -> dict:
        from .report import jsonable

        return {"number": self.number, "title": self.title, "passed": self.passed, "details": jsonable(self.details)}


def generator_coefficients() -> Criterion:
    crit = Criterion(1, "phi_1 and phi_2 coefficients")
    for n, text in ((1, PHI1_TEXT), (2, PHI2_TEXT)):
        got = subspaces.phi(n)
        crit.require(f"phi{n}", got == FockVector.parse(text), got.to_text("a"))
    crit.require("phi1_render", subspaces.phi(1).to_text("a") == PHI1_TEXT)
    return crit


def ope() -> Criterion:
    crit = Criterion(2, "phi OPE coefficients and vanishing modes")
    p0, p1 = subspaces.phi(0), subspaces.phi(1)
    e2a = FockVector.lattice(4)
    crit.require("phi1(1)phi1", state_field_mode(p1, 1, p1) == OPE_COEFFICIENT * e2a)
    crit.require("phi1(0)phi1", state_field_mode(p1, 0, p1) == OPE_COEFFICIENT * 2 * FockVector.monomial(4, (1,)))
    crit.require("phi1(n)phi1=0 for 2<=n<=6", all(not state_field_mode(p1, n, p1) for n in range(2, 7)))
    crit.require(
        "phi0(n)phik=0 for 0<=n,k<=4",
        all(not state_field_mode(p0, n, subspaces.phi(k)) for n in range(5) for k in range(5)),
    )
    return crit


def borcherds(exhaustive_weight: int = 5, sample_weight: int = 7, samples: int = 500, seed: int = 0, progress=None) -> Criterion:
    crit = Criterion(3, "Borcherds identity suites")
    ex = identities.borcherds_suite_exhaustive(exhaustive_weight, progress)
    sa = identities.borcherds_suite_sampled(sample_weight, samples, seed)
    crit.require("exhaustive", ex.passed and ex.checked > 0, ex.summary())
    crit.require("sampled", sa.passed and sa.checked >= samples, sa.summary())
    return crit


def commutant_dimensions(max_weight: int = 8, max_charge: int = 6) -> Criterion:
    crit = Criterion(4, "commutant of e^a matches the fermionic character")
    rows = subspaces.commutant_dimension_table("W", "VA1", max_weight, max_charge, strict=False)
    got = qseries.char_from_dimensions(rows, max_weight)
    want = qseries.fermionic_char_C(max_weight)
    mism = qseries.compare(got, want)
    crit.require("bigraded match", mism is None, str(mism) if mism else "equal")
    totals = got.set_z_one().to_list()
    crit.require("totals", totals == W_TOTALS[: max_weight + 1], totals)
    crit.require("sandwich", all(r.sandwich for r in rows))
    return crit


def duality(max_weight: int = 6) -> Criterion:
    crit = Criterion(5, "commutant of phi_0..phi_3 equals W")
    rows = subspaces.commutant_dimension_table("C", "VA1", max_weight, 2 * max_weight, K=3, strict=False)
    got = qseries.char_from_dimensions(rows, max_weight)
    want = qseries.enumerated_char("W", max_weight)
    mism = qseries.compare(got, want)
    crit.require("dimensions", mism is None, str(mism) if mism else got.to_text())
    crit.require("sandwich", all(r.sandwich for r in rows))
    return crit


def zhu_algebra(c_weight: int = 9, w_weight: int = 6, phi_bound: int = 3) -> Criterion:
    crit = Criterion(6, "C2 quotients and trivial Poisson structure")
    rc = zhu.c2_dims("C", c_weight).graded_dims()
    want_c = [1] + [1 if d % 2 else 0 for d in range(1, c_weight + 1)]
    crit.require("R_C dims", rc == want_c, rc)
    rw = zhu.c2_dims("W", w_weight).graded_dims()
    crit.require("R_W dims", rw == [1, 1] + [0] * (w_weight - 1), rw)
    nonzero = []
    for n in range(phi_bound + 1):
        for m in range(phi_bound + 1):
            u, v = subspaces.phi(n), subspaces.phi(m)
            if not zhu.zhu_product(u, v, "C").is_zero:
                nonzero.append(("product", n, m))
            if not zhu.zhu_bracket(u, v, "C").is_zero:
                nonzero.append(("bracket", n, m))
    crit.require("products and brackets vanish", not nonzero, nonzero or "all zero")
    return crit


def jet_mismatch(order_w: int = 8, order_c: int = 5) -> Criterion:
    crit = Criterion(7, "jet algebra characters")
    jw = zhu.jet_character(zhu.ring_RW(), order_w)
    mw = qseries.compare(jw, qseries.enumerated_char("W", order_w, with_z=False))
    crit.require("J(R_W) = ch W", mw is None, jw.to_text())
    jc = zhu.jet_character(zhu.ring_RC(order_c), order_c)
    crit.require("J(R_C) coefficients", jc.to_list() == [1, 1, 1, 2, 3, 5], jc.to_text())
    mc = qseries.compare(jc, qseries.fermionic_char_C(order_c))
    crit.require(
        "first mismatch vs ch C at q^5: 5 vs 4",
        mc is not None and (mc.q, mc.left, mc.right) == (5, 5, 4),
        str(mc),
    )
    return crit


def sl2_structure(max_weight: int = 9, recurrence_bound: int = 4, cnew_weight: int = 8) -> Criterion:
    crit = Criterion(8, "sl2 structure of the charge-a commutant and the new basis")
    rep = subspaces.sl2_report(max_weight, recurrence_bound)
    crit.require("sl2 report", rep.passed, rep.to_json())
    cn = subspaces.verify_basis_cnew(2, cnew_weight)
    crit.require("new basis at charge 2a", cn.passed, cn.summary())
    return crit


def generation(max_weight: int = 6, max_k: int = 3) -> Criterion:
    crit = Criterion(9, "strong generation and minimality of phi_0, phi_1, ...")
    sg = subspaces.strong_generation_check(max_weight)
    crit.require("strong generation", sg.passed, sg.summary())
    for k in range(max_k + 1):
        mn = subspaces.minimality_check(k)
        crit.require(f"minimality phi_{k}", mn.passed, mn.summary())
    return crit


def conformal(max_weight: int = 4) -> Criterion:
    crit = Criterion(10, "quasiconformal commutators and Virasoro relations")
    qc = identities.quasiconformal_suite(max_weight, 3, 4)
    crit.require("quasiconformal", qc.passed and qc.checked > 0, qc.summary())
    c = identities.calibrate_central_charge()
    crit.require("central charge", c == 1, c)
    vir = identities.virasoro_suite(max_weight)
    crit.require("virasoro", vir.passed and vir.checked > 0, vir.summary())
    return crit


CRITERIA: dict[int, Callable[[], Criterion]] = {
    1: generator_coefficients,
    2: ope,
    3: borcherds,
    4: commutant_dimensions,
    5: duality,
    6: zhu_algebra,
    7: jet_mismatch,
    8: sl2_structure,
    9: generation,
    10: conformal,
}


def run_all(progress=None, skip: tuple = ()) -> list:
    out = []
    for n, fn in CRITERIA.items():
        if n in skip:
            continue
        if progress:
            progress(f"criterion {n}")
        out.append(fn())
    return out
