"""C2 quotients (Zhu's Poisson algebra) and jet algebras of graded commutative rings.

The C2 subspace V(-2)V of a graded piece is spanned by u(-2)v over pairs of
explicit basis vectors whose bidegrees add up; the quotient dimension is the
basis count of the piece minus the rank of that span.  Jet algebras are
computed by plain linear algebra in the differential polynomial ring.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from . import kernels
from .fock import FockVector
from .linalg import LinearSpan, span_rank
from .qseries import QSeries
from .scalars import Q, ZERO, as_scalar
from .subspaces import basis_count, bidegrees, graded_basis, piece
from .vertex import state_field_mode

ZHU_SPACES = ("W", "C", "VA1")


# ------------------------------------------------------------ C2 spans

def _integral_weight(w) -> int:
    w = as_scalar(w)
    if w.denominator != 1:
        raise ValueError(f"weight {w} is not integral")
    return int(w)


def _split_pairs(space: str, charge: int, weight: int, n: int):
    """Bidegree pairs ((c1, a), (c2, b)) with u(n) v landing in (charge, weight)."""
    # wt u(n)v = a + b - n - 1
    total = weight + n + 1
    out = []
    for c1, a in bidegrees(space, total):
        if a == 0:
            continue
        c2 = charge - c1
        b = total - a
        if b < 0 or Q(c2 * c2, 4) > b:
            continue
        if (space in ("W", "C") and c2 < 0) or c2 % 2:
            continue
        out.append(((c1, a), (c2, b)))
    # cheap left factors first
    out.sort(key=lambda p: (p[0][1], abs(p[0][0])))
    return out


@lru_cache(maxsize=None)
def c2_span(space: str, charge: int, weight) -> LinearSpan:
    """Span of u(-2)v inside the (charge, weight) piece, u, v in the explicit basis of ``space``."""
    if space not in ZHU_SPACES:
        raise ValueError(f"space must be one of {ZHU_SPACES}")
    w = _integral_weight(weight)
    pc = piece(charge, w)
    target = basis_count(space, charge, w)
    span = LinearSpan(pc)
    for (c1, a), (c2, b) in _split_pairs(space, charge, w, -2):
        left = graded_basis(space, c1, a)
        right = graded_basis(space, c2, b)
        for u in left:
            for v in right:
                img = state_field_mode(u, -2, v)
                if not img:
                    continue
                if not span.contains(img):
                    span = span.extend([img])
                if span.rank == target:
                    return span
    return span


@dataclass
class ZhuRow:
    charge: int
    weight: int
    space_dim: int
    span_rank: int

    @property
    def quotient_dim(self) -> int:
        return self.space_dim - self.span_rank

    def to_json(self) -> dict:
        return {
            "charge": self.charge,
            "weight": self.weight,
            "space_dim": self.space_dim,
            "c2_rank": self.span_rank,
            "quotient_dim": self.quotient_dim,
        }


@dataclass
class ZhuClassTable:
    space: str
    max_weight: int
    rows: list = field(default_factory=list)

    def graded_dims(self) -> list:
        out = [0] * (self.max_weight + 1)
        for r in self.rows:
            out[r.weight] += r.quotient_dim
        return out

    def spans(self) -> dict:
        return {(r.charge, r.weight): c2_span(self.space, r.charge, r.weight) for r in self.rows}

    def to_json(self) -> dict:
        return {
            "space": self.space,
            "max_weight": self.max_weight,
            "graded_dims": self.graded_dims(),
            "rows": [r.to_json() for r in self.rows],
        }


def c2_dims(space: str, max_weight: int, max_charge: int | None = None, progress=None) -> ZhuClassTable:
    """Graded dimensions of space / space(-2)space up to ``max_weight``."""
    table = ZhuClassTable(space, max_weight)
    for c, w in bidegrees(space, max_weight, max_charge, None if max_charge is None else -max_charge):
        w = _integral_weight(w)
        if progress:
            progress(f"C2 span charge={c} weight={w}")
        dim = basis_count(space, c, w)
        rank = c2_span(space, c, w).rank if dim else 0
        table.rows.append(ZhuRow(c, w, dim, rank))
    return table


@dataclass
class ZhuClass:
    """Normal form of a vector modulo the C2 span: reduced rows for the bidegrees where it is non-zero."""

    space: str
    residues: dict

    @property
    def is_zero(self) -> bool:
        return not self.residues

    def __neg__(self) -> "ZhuClass":
        return ZhuClass(self.space, {k: [-x for x in r] for k, r in self.residues.items()})

    def to_json(self) -> dict:
        return {
            "space": self.space,
            "zero": self.is_zero,
            "residues": {
                f"{c},{w}": [str(x) for x in r] for (c, w), r in sorted(self.residues.items())
            },
        }


def zhu_class(v: FockVector, space: str) -> ZhuClass:
    res = {}
    for (c, w), comp in v.homogeneous_components().items():
        span = c2_span(space, c, _integral_weight(w))
        row = span.reduce(span.piece.coordinates(comp))
        if any(row):
            res[(c, _integral_weight(w))] = row
    return ZhuClass(space, res)


def zhu_product(u: FockVector, v: FockVector, space: str) -> ZhuClass:
    """[u] . [v] = [u(-1) v]."""
    return zhu_class(state_field_mode(u, -1, v), space)


def zhu_bracket(u: FockVector, v: FockVector, space: str) -> ZhuClass:
    """{[u], [v]} = [u(0) v]."""
    return zhu_class(state_field_mode(u, 0, v), space)


def generalized_c2_dims_Wcirc(max_weight) -> list:
    """Per bidegree of W°: (charge, weight, dim, rank of span{u(n)v : n <= -2}, quotient).

    u, v range over the explicit basis of W°; n is restricted to its coset.
    """
    rows = []
    for c, w in bidegrees("Wcirc", max_weight):
        dim = basis_count("Wcirc", c, w)
        if not dim:
            rows.append((c, w, 0, 0, 0))
            continue
        pc = piece(c, w)
        vecs = []
        rank = 0
        for c1, a in bidegrees("Wcirc", w):
            if a == 0 or c1 > c:
                continue
            c2 = c - c1
            for b in _weights_of("Wcirc", c2, w):
                # wt u(n)v = a + b - n - 1, so n = a + b - 1 - w
                n = a + b - 1 - w
                if n > -2 or (2 * n + c1 * c2) % 2:
                    continue
                for u in graded_basis("Wcirc", c1, a):
                    for v in graded_basis("Wcirc", c2, b):
                        img = state_field_mode(u, n, v)
                        if img:
                            vecs.append(img)
                if vecs:
                    rank = span_rank(vecs, pc).rank
                if rank == dim:
                    break
            if rank == dim:
                break
        rows.append((c, w, dim, rank, dim - rank))
    return rows


def _weights_of(space: str, charge: int, max_weight) -> list:
    return [w for c, w in bidegrees(space, max_weight) if c == charge]


# ------------------------------------------------------------ jet algebras

class RingSyntaxError(ValueError):
    pass


def _parse_poly(text: str, names: dict) -> dict:
    """Parse ``2*x1*x2 - x3^2 + x1`` into {sorted var-index tuple: coefficient}."""
    src = text.replace(" ", "")
    if not src:
        raise RingSyntaxError("empty relation")
    out: dict = {}
    for sign, body in re.findall(r"([+-]?)([^+-]+)", src):
        coef = Q(-1 if sign == "-" else 1)
        factors = []
        for f in body.split("*"):
            if not f:
                raise RingSyntaxError(f"bad term {body!r}")
            if re.fullmatch(r"\d+(/\d+)?", f):
                coef *= as_scalar(f)
                continue
            m = re.fullmatch(r"([A-Za-z_]\w*)(?:\^(\d+))?", f)
            if not m or m.group(1) not in names:
                raise RingSyntaxError(f"unknown factor {f!r} in {text!r}")
            factors.extend([names[m.group(1)]] * int(m.group(2) or 1))
        key = tuple(sorted(factors))
        out[key] = out.get(key, ZERO) + coef
    return {k: v for k, v in out.items() if v}


@dataclass(frozen=True)
class DifferentialRingSpec:
    """A graded commutative ring: variables with positive weights and relations."""

    vars: tuple
    rels: tuple = ()

    def __post_init__(self):
        names = [n for n, _ in self.vars]
        if len(set(names)) != len(names):
            raise RingSyntaxError("duplicate variable names")
        for _, w in self.vars:
            if int(w) != w or w <= 0:
                raise RingSyntaxError("variable weights must be positive integers")
        for r in self.rels:
            self._rel_weight(self.parsed(r))

    @property
    def names(self) -> dict:
        return {n: i for i, (n, _) in enumerate(self.vars)}

    def parsed(self, rel: str) -> dict:
        return _parse_poly(rel, self.names)

    def _rel_weight(self, poly: dict) -> int:
        ws = {sum(self.vars[i][1] for i in mono) for mono in poly}
        if len(ws) != 1:
            raise RingSyntaxError(f"relation is not homogeneous (weights {sorted(ws)})")
        return ws.pop()

    @classmethod
    def from_json(cls, data) -> "DifferentialRingSpec":
        if isinstance(data, str):
            data = json.loads(data)
        vars_ = tuple((v[0], int(v[1])) if isinstance(v, (list, tuple)) else (v["name"], int(v["weight"])) for v in data["vars"])
        return cls(vars_, tuple(data.get("rels", ())))

    def to_json(self) -> dict:
        return {"vars": [[n, w] for n, w in self.vars], "rels": list(self.rels)}


def ring_RW() -> DifferentialRingSpec:
    """C[x] / (x^2), x of weight 1."""
    return DifferentialRingSpec((("x", 1),), ("x^2",))


def ring_RC(max_weight: int) -> DifferentialRingSpec:
    """C[x_1, x_2, ...] / (x_i x_j), x_i of weight 2i - 1, truncated to weight <= max_weight."""
    n = max(1, (max_weight + 1) // 2)
    vars_ = tuple((f"x{i}", 2 * i - 1) for i in range(1, n + 1))
    rels = tuple(f"x{i}*x{j}" for i in range(1, n + 1) for j in range(i, n + 1))
    return DifferentialRingSpec(vars_, rels)


def _jet_vars(spec: DifferentialRingSpec, d: int) -> list:
    """(var index, derivative order) with total weight <= d."""
    return [(i, k) for i, (_, w) in enumerate(spec.vars) for k in range(d - w + 1)]


def _jet_weight(spec, jv) -> int:
    return spec.vars[jv[0]][1] + jv[1]


def _monomials_of_weight(spec, d: int) -> list:
    jvs = sorted(_jet_vars(spec, d))
    ws = [_jet_weight(spec, j) for j in jvs]
    out = []

    def rec(start, left, acc):
        if left == 0:
            out.append(tuple(acc))
            return
        for i in range(start, len(jvs)):
            if ws[i] <= left:
                acc.append(jvs[i])
                rec(i, left - ws[i], acc)
                acc.pop()

    rec(0, d, [])
    return out


def _derive(poly: dict) -> dict:
    out: dict = {}
    for mono, c in poly.items():
        for i, (v, k) in enumerate(mono):
            if i and mono[i - 1] == mono[i]:
                continue
            mult = mono.count((v, k))
            rest = list(mono)
            rest.remove((v, k))
            key = tuple(sorted(rest + [(v, k + 1)]))
            out[key] = out.get(key, ZERO) + mult * c
    return {k: v for k, v in out.items() if v}


def jet_dimension(spec: DifferentialRingSpec, d: int) -> int:
    """Dimension of the weight-d part of the jet algebra of ``spec``."""
    monos = _monomials_of_weight(spec, d)
    if not monos:
        return 0
    index = {m: i for i, m in enumerate(monos)}
    rows = []
    for rel in spec.rels:
        poly = spec.parsed(rel)
        wr = spec._rel_weight(poly)
        p = {tuple((i, 0) for i in mono): c for mono, c in poly.items()}
        for k in range(d - wr + 1):
            for mult in _monomials_of_weight(spec, d - wr - k):
                row = [ZERO] * len(monos)
                for mono, c in p.items():
                    row[index[tuple(sorted(mono + mult))]] += c
                rows.append(row)
            p = _derive(p)
    if not rows:
        return len(monos)
    red, piv = kernels.rref(rows, len(monos))
    return len(monos) - len(piv)


def jet_character(spec: DifferentialRingSpec, order: int) -> QSeries:
    return QSeries.from_list([jet_dimension(spec, d) for d in range(order + 1)], order)


RINGS = {"RW": ring_RW, "RC": ring_RC}
