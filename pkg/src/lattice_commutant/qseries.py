"""Truncated q-series (optionally z-graded) with exact integer coefficients."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping


class TruncationMismatch(ValueError):
    """Two series with different truncation orders were combined or compared."""


class QSeries:
    """sum c(z, q) z^z q^q, kept for q <= order.  Keys are (z_power, q_power)."""

    __slots__ = ("order", "_coeffs")

    def __init__(self, order: int, coeffs: Mapping | None = None):
        if order < 0:
            raise ValueError("order must be non-negative")
        self.order = int(order)
        self._coeffs = {
            (int(z), int(q)): int(c) for (z, q), c in (coeffs or {}).items() if c and 0 <= q <= order
        }

    @classmethod
    def from_list(cls, values: Iterable[int], order: int | None = None) -> "QSeries":
        vals = list(values)
        order = len(vals) - 1 if order is None else order
        return cls(order, {(0, q): c for q, c in enumerate(vals) if q <= order})

    @property
    def coeffs(self) -> dict:
        return dict(self._coeffs)

    def coefficient(self, q: int, z: int | None = None) -> int:
        """c(z, q); with z=None the sum over all z."""
        if z is None:
            return sum(c for (zz, qq), c in self._coeffs.items() if qq == q)
        return self._coeffs.get((z, q), 0)

    def to_list(self) -> list:
        return [self.coefficient(q) for q in range(self.order + 1)]

    def set_z_one(self) -> "QSeries":
        out: dict = {}
        for (z, q), c in self._coeffs.items():
            out[(0, q)] = out.get((0, q), 0) + c
        return QSeries(self.order, out)

    @property
    def is_graded(self) -> bool:
        return any(z for z, _ in self._coeffs)

    def _check(self, other: "QSeries"):
        if not isinstance(other, QSeries):
            return NotImplemented
        if other.order != self.order:
            raise TruncationMismatch(f"orders differ: {self.order} vs {other.order}")
        return None

    def __add__(self, other: "QSeries") -> "QSeries":
        if self._check(other) is NotImplemented:
            return NotImplemented
        out = dict(self._coeffs)
        for k, c in other._coeffs.items():
            out[k] = out.get(k, 0) + c
        return QSeries(self.order, out)

    def __mul__(self, other: "QSeries") -> "QSeries":
        if self._check(other) is NotImplemented:
            return NotImplemented
        out: dict = {}
        for (z1, q1), c1 in self._coeffs.items():
            for (z2, q2), c2 in other._coeffs.items():
                if q1 + q2 <= self.order:
                    k = (z1 + z2, q1 + q2)
                    out[k] = out.get(k, 0) + c1 * c2
        return QSeries(self.order, out)

    def shift(self, q_power: int, z_power: int = 0) -> "QSeries":
        return QSeries(self.order, {(z + z_power, q + q_power): c for (z, q), c in self._coeffs.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        if other.order != self.order:
            raise TruncationMismatch(f"orders differ: {self.order} vs {other.order}")
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self.order, frozenset(self._coeffs.items())))

    def _sorted(self) -> list:
        return sorted(self._coeffs.items(), key=lambda kv: (kv[0][1], kv[0][0]))

    def to_text(self) -> str:
        """E.g. ``1 + q + q^2 + 2q^3`` or ``1 + zq + z^2q^4``; zero series render as ``0``."""
        parts = []
        for (z, q), c in self._sorted():
            mono = ""
            if z:
                mono += "z" if z == 1 else f"z^{z}" if z > 0 else f"z^({z})"
            if q:
                mono += "q" if q == 1 else f"q^{q}"
            mag = abs(c)
            body = (str(mag) if mag != 1 or not mono else "") + mono
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts) if parts else "0"

    __str__ = to_text

    def __repr__(self) -> str:
        return f"QSeries(order={self.order}, {self.to_text()})"

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [[z, q, c] for (z, q), c in self._sorted()]}

    @classmethod
    def from_json(cls, data: dict) -> "QSeries":
        return cls(data["order"], {(z, q): c for z, q, c in data["coeffs"]})


@dataclass(frozen=True)
class SeriesMismatch:
    q: int
    z: int | None
    left: int
    right: int

    def to_json(self) -> dict:
        return {"q": self.q, "z": self.z, "left": self.left, "right": self.right}

    def __str__(self) -> str:
        where = f"q^{self.q}" if self.z is None else f"z^{self.z}q^{self.q}"
        return f"first mismatch at {where}: {self.left} vs {self.right}"


def compare(a: QSeries, b: QSeries) -> SeriesMismatch | None:
    """First differing coefficient, ordered by q then z; None if equal.

    If either series is ungraded the comparison is made after setting z = 1.
    """
    if a.order != b.order:
        raise TruncationMismatch(f"orders differ: {a.order} vs {b.order}")
    graded = a.is_graded and b.is_graded
    if not graded:
        a, b = a.set_z_one(), b.set_z_one()
    keys = sorted(set(a._coeffs) | set(b._coeffs), key=lambda k: (k[1], k[0]))
    for z, q in keys:
        x, y = a._coeffs.get((z, q), 0), b._coeffs.get((z, q), 0)
        if x != y:
            return SeriesMismatch(q, z if graded else None, x, y)
    return None


def pochhammer_inverse(r: int, order: int) -> QSeries:
    """1/(q)_r: partitions into parts of size at most r."""
    coef = [1] + [0] * order
    for part in range(1, r + 1):
        for n in range(part, order + 1):
            coef[n] += coef[n - part]
    return QSeries.from_list(coef, order)


def fermionic_char_C(order: int, with_z: bool = True) -> QSeries:
    """sum_r q^{r^2} z^r / (q)_{2r}."""
    total = QSeries(order)
    r = 0
    while r * r <= order:
        total = total + pochhammer_inverse(2 * r, order).shift(r * r, r if with_z else 0)
        r += 1
    return total


def fermionic_char_W(order: int, with_z: bool = True) -> QSeries:
    """sum_r q^{r^2} z^r / (q)_r."""
    total = QSeries(order)
    r = 0
    while r * r <= order:
        total = total + pochhammer_inverse(r, order).shift(r * r, r if with_z else 0)
        r += 1
    return total


def set_z_one(s: QSeries) -> QSeries:
    return s.set_z_one()


def char_from_dimensions(rows: Iterable, order: int, with_z: bool = True) -> QSeries:
    """Build a series from (charge, weight, dim) rows.

    Charges are in units of the fundamental weight (so e^alpha has charge 2 and
    contributes z^1).  Rows may be tuples, dicts or objects with those attributes.
    Rows above the truncation order are ignored.
    """
    out: dict = {}
    for row in rows:
        if isinstance(row, dict):
            c, w, d = row["charge"], row["weight"], row["dim"]
        elif isinstance(row, tuple):
            c, w, d = row
        else:
            c, w, d = row.charge, row.weight, row.dim
        if getattr(w, "denominator", 1) != 1 or c % 2:
            raise ValueError(f"row ({c}, {w}) is not an integral bidegree of V_A1")
        w = int(w)
        if w > order or not d:
            continue
        key = (c // 2 if with_z else 0, w)
        out[key] = out.get(key, 0) + int(d)
    return QSeries(order, out)


def enumerated_char(space: str, order: int, with_z: bool = True) -> QSeries:
    """Character of one of the named subspaces from its explicit basis counts."""
    from .subspaces import basis_count, bidegrees

    rows = [(c, w, basis_count(space, c, w)) for c, w in bidegrees(space, order)]
    return char_from_dimensions(rows, order, with_z)
