"""Distinguished vectors, combinatorial bases and commutant computations.

Charges are in units of w (so e^a = e[2]); index tuples are non-decreasing.

* ``principal_vector(t)`` is the monomial basis of the principal subalgebra W,
  ``e^a(-n_r-(2r-1)) ... e^a(-n_2-3) e^a(-n_1-1) 1``;
* ``generalized_principal_vector(t)`` is the basis of W°,
  ``e^w(-n_r-(r+1)/2) ... e^w(-n_2-3/2) e^w(-n_1-1) 1``;
* tuples of even length 2s give the basis of the commutant C in charge s*a.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import kernels
from .fock import FockVector
from .linalg import (
    GradedPiece,
    LinearSpan,
    enumerate_graded_monomials,
    mode_kernel,
    solve_in_basis,
    span_rank,
)
from .report import IdentityReport, timed
from .scalars import Q, HalfInt, as_scalar
from .vertex import (
    derivation,
    derivation_power,
    rational_binomial,
    schur_creation_apply,
    state_field_mode,
    vertex_mode_apply,
    virasoro_mode,
)

VACUUM = FockVector.vacuum()
E_ALPHA = FockVector.lattice(2)
E_VARPI = FockVector.lattice(1)

SPACES = ("W", "C", "Wcirc", "VA1", "VA1circ")


class SandwichMismatch(RuntimeError):
    """The explicit basis does not realize the computed kernel."""


# ------------------------------------------------------------ index tuples

def index_tuples(length: int, total: int) -> list:
    """Non-decreasing tuples of ``length`` non-negative ints summing to ``total``."""
    if length == 0:
        return [()] if total == 0 else []
    out = [
        tuple(sorted(p + (0,) * (length - len(p))))
        for p in kernels.partitions(total)
        if len(p) <= length
    ]
    return sorted(out)


# ------------------------------------------------------------ basis vectors

_phi_circ_cache: dict = {(): VACUUM}
_phi_cache: dict = {(): VACUUM}


def _check_tuple(t) -> tuple:
    t = tuple(int(x) for x in t)
    if any(x < 0 for x in t):
        raise ValueError(f"index tuple entries must be non-negative: {t}")
    return t


def generalized_principal_vector(t: Iterable[int]) -> FockVector:
    """Phi°(n_1, ..., n_r); the i-th factor is e^w(-n_i - (i+1)/2)."""
    t = _check_tuple(t)
    hit = _phi_circ_cache.get(t)
    if hit is not None:
        return hit
    prev = generalized_principal_vector(t[:-1])
    i = len(t)
    v = vertex_mode_apply(1, HalfInt(-2 * t[-1] - (i + 1)), prev)
    _phi_circ_cache[t] = v
    return v


def principal_vector(t: Iterable[int]) -> FockVector:
    """Phi(n_1, ..., n_r); the i-th factor is e^a(-n_i - (2i-1))."""
    t = _check_tuple(t)
    hit = _phi_cache.get(t)
    if hit is not None:
        return hit
    prev = principal_vector(t[:-1])
    i = len(t)
    v = vertex_mode_apply(2, -(t[-1] + 2 * i - 1), prev)
    _phi_cache[t] = v
    return v


def phi(n: int) -> FockVector:
    """The generator phi_n = Phi°(n, n) of C (weight 2n+1, charge a)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return generalized_principal_vector((n, n))


def phi_schur(n: int) -> FockVector:
    """sum_k (-1)^k binom(1/2, k) S_{n+k}(a/2) S_{n-k}(a/2) e^a."""
    out = FockVector.zero()
    for k in range(n + 1):
        c = rational_binomial(Q(1, 2), k) * (-1) ** k
        out = out + c * schur_creation_apply(n - k, 1, schur_creation_apply(n + k, 1, E_ALPHA))
    return out


def cnew_vector(t: Sequence[int]) -> FockVector:
    """Phi°(n_{2r-1}, n_{2r}+r-1)(-r) ... Phi°(n_3, n_4+1)(-2) Phi°(n_1, n_2)(-1) 1."""
    t = _check_tuple(t)
    if len(t) % 2:
        raise ValueError("tuple length must be even")
    v = VACUUM
    for i in range(1, len(t) // 2 + 1):
        u = generalized_principal_vector((t[2 * i - 2], t[2 * i - 1] + i - 1))
        v = state_field_mode(u, -i, v)
    return v


# ------------------------------------------------------------ graded bases

def _level(charge: int, weight) -> int | None:
    lv = as_scalar(weight) - Q(charge * charge, 4)
    if lv < 0 or lv.denominator != 1:
        return None
    return int(lv)


def basis_labels(space: str, charge: int, weight) -> list:
    """Index tuples labelling the combinatorial basis of ``space`` in one bidegree.

    ``charge`` is in units of w.  For VA1 / VA1circ the labels are the Fock
    monomials themselves.
    """
    lv = _level(charge, weight)
    if lv is None:
        return []
    if space in ("W", "C"):
        if charge < 0 or charge % 2:
            return []
        length = charge // 2 if space == "W" else charge
        return index_tuples(length, lv)
    if space == "Wcirc":
        if charge < 0:
            return []
        return index_tuples(charge, lv)
    if space in ("VA1", "VA1circ"):
        if space == "VA1" and charge % 2:
            return []
        return list(enumerate_graded_monomials(charge, weight).monomials)
    raise ValueError(f"unknown space {space!r}; expected one of {SPACES}")


def basis_vector(space: str, label) -> FockVector:
    if space == "W":
        return principal_vector(label)
    if space in ("C", "Wcirc"):
        return generalized_principal_vector(label)
    if space in ("VA1", "VA1circ"):
        return FockVector({label: Q(1)}, _trusted=True)
    raise ValueError(f"unknown space {space!r}")


def graded_basis(space: str, charge: int, weight) -> list:
    return [basis_vector(space, t) for t in basis_labels(space, charge, weight)]


def basis_count(space: str, charge: int, weight) -> int:
    return len(basis_labels(space, charge, weight))


def bidegrees(space: str, max_weight, max_charge: int | None = None, min_charge: int | None = None) -> list:
    """(charge, weight) pairs of ``space`` with weight <= max_weight, canonical order."""
    max_weight = as_scalar(max_weight)
    out = []
    r = 0
    lim = max_charge if max_charge is not None else 10 ** 6
    while Q(r * r, 4) <= max_weight and r <= lim:
        for c in ((r,) if r == 0 else (r, -r)):
            if min_charge is not None and c < min_charge:
                continue
            if space in ("W", "C", "VA1") and c % 2:
                continue
            if space in ("W", "C", "Wcirc") and c < 0:
                continue
            lv = Q(c * c, 4)
            while lv <= max_weight:
                out.append((c, lv))
                lv += 1
        r += 1
    out.sort(key=lambda cw: (cw[1], cw[0]))
    return out


def piece(charge: int, weight) -> GradedPiece:
    return enumerate_graded_monomials(charge, weight)


# ------------------------------------------------------------ kernels

def _mode_window(gen_weight, charge: int, weight, gen_charge: int = 2) -> range:
    """Non-negative integer modes of a generator that can act non-trivially."""
    top = as_scalar(gen_weight) + as_scalar(weight) - 1 - Q((charge + gen_charge) ** 2, 4)
    if top < 0:
        return range(0)
    return range(0, int(top) + 1)


def generator_operators(generators: str, charge: int, weight, K: int | None = None) -> list:
    """(u, m) pairs: the non-negative modes of the generating set acting on one piece."""
    if generators == "W":
        return [(E_ALPHA, n) for n in _mode_window(1, charge, weight)]
    if generators == "C":
        if K is None:
            raise ValueError("C-generators need an explicit cutoff K")
        ops = []
        for k in range(K + 1):
            ops.extend((phi(k), n) for n in _mode_window(2 * k + 1, charge, weight))
        return ops
    raise ValueError("generators must be 'W' (e^a) or 'C' (phi_0..phi_K)")


@dataclass
class DimRow:
    charge: int
    weight: Q
    dim: int
    explicit_rank: int
    basis_count: int
    sandwich: bool

    def to_json(self) -> dict:
        from .scalars import scalar_str

        return {
            "charge": self.charge,
            "weight": scalar_str(self.weight),
            "dim": self.dim,
            "explicit_rank": self.explicit_rank,
            "basis_count": self.basis_count,
            "sandwich": self.sandwich,
        }


def commutant_piece(generators: str, charge: int, weight, K: int | None = None) -> LinearSpan:
    pc = piece(charge, weight)
    return mode_kernel(generator_operators(generators, charge, weight, K), pc)


def commutant_dimension_table(
    generators: str,
    ambient: str = "VA1",
    max_weight: int = 6,
    max_charge: int = 6,
    K: int | None = None,
    strict: bool = True,
    progress=None,
) -> list:
    """Dimensions of the joint kernel of the generators' non-negative modes.

    ``generators='W'`` uses e^a (the kernel is Com(W) = C inside VA1 and W°
    inside VA1circ); ``generators='C'`` uses phi_0..phi_K (the kernel is
    Com(C), expected to be W).  Each piece is sandwiched against the explicit
    basis: the explicit vectors must lie in the kernel and span it.
    """
    if ambient not in ("VA1", "VA1circ"):
        raise ValueError("ambient must be 'VA1' or 'VA1circ'")
    if generators == "C" and ambient != "VA1":
        raise ValueError("phi-modes are only used inside VA1")
    if generators == "C" and K is None:
        K = max(0, -(-(max_weight - 1) // 2))
    explicit = {("W", "VA1"): "C", ("W", "VA1circ"): "Wcirc", ("C", "VA1"): "W"}[(generators, ambient)]
    rows = []
    for c, w in bidegrees(ambient, max_weight, max_charge, min_charge=-max_charge):
        if progress:
            progress(f"kernel charge={c} weight={w}")
        kern = commutant_piece(generators, c, w, K)
        vecs = graded_basis(explicit, c, w)
        count = len(vecs)
        inside = all(kern.contains(v) for v in vecs)
        erank = span_rank(vecs, kern.piece).rank if vecs else 0
        ok = inside and erank == kern.rank == count
        if strict and not ok:
            raise SandwichMismatch(
                f"charge {c}, weight {w}: kernel dim {kern.rank}, explicit rank {erank}, "
                f"basis count {count}, explicit inside kernel: {inside}"
            )
        rows.append(DimRow(c, w, kern.rank, erank, count, ok))
    return rows


# ------------------------------------------------------------ Prop: basis C_new

def verify_basis_cnew(r: int, max_weight: int, leading_terms: bool = True) -> IdentityReport:
    """Rank, membership and leading-term structure of the nested-mode basis of C^{r a}."""
    rep = IdentityReport(f"basis_cnew[r={r}]")
    with timed(rep):
        for w in range(r * r, max_weight + 1):
            labels = basis_labels("C", 2 * r, w)
            cbasis = [generalized_principal_vector(t) for t in labels]
            news = [cnew_vector(t) for t in labels]
            pc = piece(2 * r, w)
            rank_new = span_rank(news, pc).rank if news else 0
            rep.record(("rank", w), rank_new, len(labels))
            for t, v in zip(labels, news):
                coeffs = solve_in_basis(cbasis, v)
                if coeffs is None:
                    rep.record(("membership", t), v, "outside C")
                    continue
                rep.checked += 1
                if leading_terms:
                    top = max((lab for lab, x in zip(labels, coeffs) if x), default=None)
                    lead = dict(zip(labels, coeffs)).get(t, 0)
                    rep.record(("leading", t), (top, lead != 0), (t, True))
    return rep


# ------------------------------------------------------------ sl2 structure of C^a

def c_alpha_basis(weight: int) -> list:
    return graded_basis("C", 2, weight)


@dataclass
class Sl2Row:
    weight: int
    dim: int
    expected_dim: int
    d_rank: int
    ker_L1: int
    d_phi_rank: int

    @property
    def ok(self) -> bool:
        expected_ker = 1 if self.weight % 2 else 0
        return (
            self.dim == self.expected_dim
            and self.d_rank == self.dim
            and self.ker_L1 == expected_ker
            and self.d_phi_rank == self.dim
        )


@dataclass
class Sl2Report:
    rows: list = field(default_factory=list)
    recurrence: IdentityReport = field(default_factory=lambda: IdentityReport("d_phi_circ_recurrence"))
    matrices: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (
            all(r.ok for r in self.rows)
            and self.recurrence.passed
            and all(m["ok"] for m in self.matrices)
        )

    def to_json(self) -> dict:
        from .scalars import scalar_str

        return {
            "passed": self.passed,
            "rows": [dict(vars(r), ok=r.ok) for r in self.rows],
            "recurrence": self.recurrence.to_json(),
            "matrices": [
                {**m, "det": scalar_str(m["det"]), "expected_det": scalar_str(m["expected_det"])}
                for m in self.matrices
            ],
        }


def d_phi_basis(weight: int) -> list:
    """{d^i phi_m : i + 2m + 1 = weight}."""
    out = []
    for m in range((weight - 1) // 2 + 1):
        i = weight - 2 * m - 1
        if i >= 0:
            out.append(derivation_power(phi(m), i))
    return out


def matrix_A(n: int) -> list:
    """Coordinates of X = {d Phi°(i, 2n-1-i)}_{i<n} + {phi_n} in Y = {Phi°(i, 2n-i)}_{i<=n}.

    Returned as a square list-of-rows with column j the coordinates of X_j.
    """
    Y = [generalized_principal_vector((i, 2 * n - i)) for i in range(n + 1)]
    X = [derivation(generalized_principal_vector((i, 2 * n - 1 - i))) for i in range(n)] + [phi(n)]
    cols = []
    for x in X:
        c = solve_in_basis(Y, x)
        if c is None:
            raise ValueError(f"vector outside span of Y at n={n}")
        cols.append(c)
    return [[cols[j][i] for j in range(n + 1)] for i in range(n + 1)]


def _matrix_A_check(n: int) -> dict:
    A = matrix_A(n)
    size = n + 1
    lower = all(A[i][j] == 0 for i in range(size) for j in range(size) if j > i)
    diag_expected = [Q(4 * n + 1 - 2 * i, 2) for i in range(n)] + [Q(1)]
    sub_expected = [Q(i + 1) for i in range(n)]
    diag_ok = all(A[i][i] == diag_expected[i] for i in range(size))
    sub_ok = all(A[i + 1][i] == sub_expected[i] for i in range(n))
    det = Q(1)
    for i in range(size):
        det *= A[i][i]
    expected_det = Q(1)
    for d in diag_expected:
        expected_det *= d
    return {
        "n": n,
        "lower_triangular": lower,
        "diagonal_ok": diag_ok,
        "subdiagonal_ok": sub_ok,
        "det": det,
        "expected_det": expected_det,
        "ok": lower and diag_ok and sub_ok and det == expected_det and det != 0,
    }


def check_d_recurrence(bound: int) -> IdentityReport:
    """d Phi°(n, m) = (m + 3/2) Phi°(n, m+1) + (n + 1) Phi°(n+1, m) for n, m <= bound."""
    rep = IdentityReport("d_phi_circ_recurrence")
    with timed(rep):
        for n in range(bound + 1):
            for m in range(bound + 1):
                lhs = derivation(generalized_principal_vector((n, m)))
                rhs = Q(2 * m + 3, 2) * generalized_principal_vector((n, m + 1)) + (n + 1) * generalized_principal_vector((n + 1, m))
                rep.record((n, m), lhs, rhs)
    return rep


def sl2_report(max_weight: int, recurrence_bound: int = 4) -> Sl2Report:
    rep = Sl2Report()
    for w in range(1, max_weight + 1):
        basis = c_alpha_basis(w)
        dim = span_rank(basis, piece(2, w)).rank if basis else 0
        dvecs = [derivation(v) for v in basis]
        d_rank = span_rank(dvecs, piece(2, w + 1)).rank if dvecs else 0
        l1 = [virasoro_mode(1, v) for v in basis]
        l1_rank = span_rank(l1, piece(2, w - 1)).rank if l1 else 0
        dp = d_phi_basis(w)
        dp_rank = span_rank(dp, piece(2, w)).rank if dp else 0
        rep.rows.append(Sl2Row(w, dim, (w + 1) // 2, d_rank, dim - l1_rank, dp_rank))
    rep.recurrence = check_d_recurrence(recurrence_bound)
    for n in range(1, (max_weight - 1) // 2 + 1):
        rep.matrices.append(_matrix_A_check(n))
    return rep


# ------------------------------------------------------------ generation

def phi_monomial(seq: Sequence[tuple]) -> FockVector:
    """phi_{m_1}(-l_1-1) ... phi_{m_s}(-l_s-1) 1 for seq = ((m_1, l_1), ...)."""
    v = VACUUM
    for m, l in reversed(seq):
        v = state_field_mode(phi(m), -l - 1, v)
        if not v:
            break
    return v


def _factor_choices(w: int) -> list:
    return [(m, w - 2 * m - 1) for m in range((w - 1) // 2 + 1)]


def phi_sequences(s: int, weight: int):
    """Ordered sequences of s factors (m, l) with sum(2m + 1 + l) = weight."""
    if s == 0:
        if weight == 0:
            yield ()
        return
    for comp in itertools.product(range(1, weight + 1), repeat=s):
        if sum(comp) != weight:
            continue
        for choice in itertools.product(*(_factor_choices(w) for w in comp)):
            yield choice


def strong_generation_check(max_weight: int, progress=None) -> IdentityReport:
    """The phi-monomials with negative modes span every bidegree of C."""
    rep = IdentityReport("strong_generation")
    with timed(rep):
        for c, w in bidegrees("C", max_weight):
            s = c // 2
            w = int(w)
            if progress:
                progress(f"strong generation charge={c} weight={w}")
            pc = piece(c, w)
            cbasis = graded_basis("C", c, w)
            dim_c = len(cbasis)
            span = span_rank([], pc)
            vecs = []
            for seq in phi_sequences(s, w):
                v = phi_monomial(seq)
                if not v or span.contains(v):
                    continue
                vecs.append(v)
                span = span_rank(span.vectors() + [v], pc)
                if span.rank >= dim_c:
                    break
            both = span_rank(span.vectors() + cbasis, pc).rank if (cbasis or vecs) else 0
            rep.record((c, w), (span.rank, both), (dim_c, dim_c))
    return rep


def minimality_check(k: int) -> IdentityReport:
    """Dropping phi_k loses exactly one dimension of C^a_{2k+1}."""
    rep = IdentityReport(f"minimality[k={k}]")
    with timed(rep):
        w = 2 * k + 1
        pc = piece(2, w)
        dim_c = basis_count("C", 2, w)
        others = [derivation_power(phi(m), w - 2 * m - 1) for m in range(k)]
        rank_without = span_rank(others, pc).rank if others else 0
        rank_with = span_rank(others + [phi(k)], pc).rank
        rep.record(("deficit", k), dim_c - rank_without, 1)
        rep.record(("restored", k), rank_with, dim_c)
    return rep
