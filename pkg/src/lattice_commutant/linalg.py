"""Graded pieces of the Fock space and exact row-reduction over Q."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from . import kernels
from .fock import FockVector
from .scalars import Q, ZERO, as_scalar
from .vertex import state_field_mode


class BidegreeMismatch(ValueError):
    """A vector does not lie in the graded piece it was checked against."""

    def __init__(self, index: int, vector: FockVector, piece: "GradedPiece"):
        self.index = index
        self.vector = vector
        super().__init__(
            f"vector #{index} ({vector}) is not in the piece of charge {piece.charge}, weight {piece.weight}"
        )


@dataclass(frozen=True)
class GradedPiece:
    """All Fock monomials of one (charge, weight) bidegree, in canonical order."""

    charge: int
    weight: Q
    monomials: tuple

    @cached_property
    def index(self) -> dict:
        return {m: i for i, m in enumerate(self.monomials)}

    @property
    def dim(self) -> int:
        return len(self.monomials)

    def coordinates(self, v: FockVector) -> list:
        row = [ZERO] * len(self.monomials)
        idx = self.index
        for mono, coef in v.terms.items():
            i = idx.get(mono)
            if i is None:
                raise KeyError(mono)
            row[i] = coef
        return row

    def vector(self, coords: Sequence) -> FockVector:
        return FockVector(
            {self.monomials[i]: c for i, c in enumerate(coords) if c}, _trusted=True
        )


def enumerate_graded_monomials(charge: int, weight) -> GradedPiece:
    weight = as_scalar(weight)
    level = weight - Q(charge * charge, 4)
    if level < 0 or level.denominator != 1:
        return GradedPiece(charge, weight, ())
    monos = tuple((charge, p) for p in kernels.partitions(int(level)))
    return GradedPiece(charge, weight, monos)


@dataclass
class LinearSpan:
    """A subspace of one graded piece, held as exact RREF rows."""

    piece: GradedPiece
    rows: list = field(default_factory=list)
    pivots: list = field(default_factory=list)

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def codim(self) -> int:
        return self.piece.dim - self.rank

    def reduce(self, coords: Sequence) -> list:
        """Normal form of a coordinate row modulo the span."""
        r = list(coords)
        for row, p in zip(self.rows, self.pivots):
            f = r[p]
            if f:
                for t in range(p, len(r)):
                    if row[t]:
                        r[t] -= f * row[t]
        return r

    def contains(self, v: FockVector) -> bool:
        try:
            coords = self.piece.coordinates(v)
        except KeyError:
            return False
        return not any(self.reduce(coords))

    def vectors(self) -> list:
        return [self.piece.vector(r) for r in self.rows]

    def extend(self, vectors: Sequence[FockVector]) -> "LinearSpan":
        return span_rank(self.vectors() + list(vectors), self.piece)


def rref(rows: list, ncols: int):
    return kernels.rref(rows, ncols)


def span_rank(vectors: Sequence[FockVector], piece: GradedPiece) -> LinearSpan:
    rows = []
    for i, v in enumerate(vectors):
        try:
            rows.append(piece.coordinates(v))
        except KeyError:
            raise BidegreeMismatch(i, v, piece) from None
    red, piv = kernels.rref(rows, piece.dim)
    return LinearSpan(piece, red, piv)


def nullspace(rows: list, ncols: int) -> list:
    """Basis of {x : M x = 0} as coordinate rows, one per free column."""
    red, piv = kernels.rref(rows, ncols)
    pivset = set(piv)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        x = [ZERO] * ncols
        x[f] = Q(1)
        for row, p in zip(red, piv):
            if row[f]:
                x[p] = -row[f]
        basis.append(x)
    return basis


def operator_matrix(images: Sequence[dict]) -> list:
    """Rows of the matrix whose column j is the j-th image (a monomial -> coef dict)."""
    keys: dict = {}
    for img in images:
        for k in img:
            if k not in keys:
                keys[k] = len(keys)
    mat = [[ZERO] * len(images) for _ in range(len(keys))]
    for j, img in enumerate(images):
        for k, v in img.items():
            mat[keys[k]][j] = v
    return mat


def mode_kernel(operators: Sequence[tuple], piece: GradedPiece) -> LinearSpan:
    """Joint kernel on ``piece`` of the modes u(m) for (u, m) in ``operators``."""
    if piece.dim == 0:
        return LinearSpan(piece)
    images = []
    for j, mono in enumerate(piece.monomials):
        col: dict = {}
        src = FockVector({mono: Q(1)}, _trusted=True)
        for i, (u, m) in enumerate(operators):
            img = state_field_mode(u, m, src)
            for k, v in img.terms.items():
                col[(i, k)] = v
        images.append(col)
    mat = operator_matrix(images)
    kern = nullspace(mat, piece.dim)
    red, piv = kernels.rref(kern, piece.dim)
    return LinearSpan(piece, red, piv)


def solve_in_basis(basis: Sequence[FockVector], target: FockVector):
    """Coefficients x with sum x_i basis_i == target, or None if not in the span.

    The basis vectors are assumed linearly independent.
    """
    keys: dict = {}
    for v in list(basis) + [target]:
        for k in v.terms:
            keys.setdefault(k, len(keys))
    n = len(basis)
    rows = [[ZERO] * (n + 1) for _ in range(len(keys))]
    for j, v in enumerate(basis):
        for k, c in v.terms.items():
            rows[keys[k]][j] = c
    for k, c in target.terms.items():
        rows[keys[k]][n] = c
    red, piv = kernels.rref(rows, n + 1)
    if piv and piv[-1] == n:
        return None
    if len(piv) < n:
        raise ValueError("basis vectors are linearly dependent")
    x = [ZERO] * n
    for row, p in zip(red, piv):
        x[p] = row[n]
    return x


def rank_of(vectors: Sequence[FockVector]) -> int:
    """Rank of arbitrary vectors (no common piece required)."""
    return len(basis_indices(vectors))


def basis_indices(vectors: Sequence[FockVector]) -> list:
    """Indices of a maximal independent prefix-greedy subset."""
    keys: dict = {}
    for v in vectors:
        for k in v.terms:
            keys.setdefault(k, len(keys))
    rows = []
    for v in vectors:
        r = [ZERO] * len(keys)
        for k, c in v.terms.items():
            r[keys[k]] = c
        rows.append(r)
    # columns of the transpose are the vectors; pivot columns are the independent ones
    cols = [list(x) for x in zip(*rows)] if rows and keys else []
    _, piv = kernels.rref(cols, len(vectors))
    return piv
