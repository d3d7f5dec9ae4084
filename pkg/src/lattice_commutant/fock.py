"""Fock spaces M(1, r w) of the rank-one lattice generalized vertex algebra.

The lattice is Z w with (w, w) = 1/2; the root is a = 2w.  A state is a finite
linear combination of monomials ``w(-n_1)...w(-n_s) e[r]`` with
``n_1 >= ... >= n_s >= 1``; its conformal weight is r^2/4 + sum n_i and its
charge is r (in units of w).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

from . import kernels
from .scalars import Q, ZERO, ScalarLike, as_scalar, scalar_str


@dataclass(frozen=True)
class LatticeElement:
    """The lattice vector ``b * w``."""

    b: int


ALPHA = LatticeElement(2)
VARPI = LatticeElement(1)


def pairing(beta, gamma) -> Q:
    b = beta.b if isinstance(beta, LatticeElement) else int(beta)
    c = gamma.b if isinstance(gamma, LatticeElement) else int(gamma)
    return Q(b * c, 2)


class FockMonomial(NamedTuple):
    charge: int
    parts: tuple = ()

    @classmethod
    def make(cls, charge: int, parts: Iterable[int] = ()) -> "FockMonomial":
        ps = tuple(sorted((int(p) for p in parts), reverse=True))
        if ps and ps[-1] < 1:
            raise ValueError(f"oscillator parts must be positive, got {ps}")
        return cls(int(charge), ps)

    @property
    def weight(self) -> Q:
        return Q(self.charge * self.charge + 4 * sum(self.parts), 4)

    @property
    def level(self) -> int:
        """Oscillator degree: weight minus the weight of the lattice vector."""
        return sum(self.parts)


def weight(m) -> Q:
    return FockMonomial(*m).weight


def charge(m) -> int:
    return m[0]


def monomial_sort_key(m) -> tuple:
    """Weight ascending, charge ascending, parts lexicographically descending."""
    c, parts = m
    return (c * c + 4 * sum(parts), c, tuple(-p for p in parts))


def _render_sort_key(m) -> tuple:
    c, parts = m
    return (c * c + 4 * sum(parts), c, parts)


class FockVector:
    """An immutable, canonical sparse vector of V_{A1 dual}.

    Terms are kept in a dict keyed by plain ``(charge, parts)`` tuples; zero
    coefficients are never stored, so equality is equality of the dicts.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: dict | None = None, *, _trusted: bool = False):
        if terms is None:
            terms = {}
        elif not _trusted:
            clean = {}
            for mono, coef in terms.items():
                mono = FockMonomial.make(*mono)
                coef = as_scalar(coef)
                s = clean.get(mono, ZERO) + coef
                if s:
                    clean[tuple(mono)] = s
                else:
                    clean.pop(tuple(mono), None)
            terms = clean
        self._terms = terms
        self._hash = None

    # construction helpers
    @classmethod
    def zero(cls) -> "FockVector":
        return cls({}, _trusted=True)

    @classmethod
    def vacuum(cls) -> "FockVector":
        return cls({(0, ()): Q(1)}, _trusted=True)

    @classmethod
    def lattice(cls, r: int) -> "FockVector":
        """The highest-weight vector e[r] of M(1, r w)."""
        return cls({(int(r), ()): Q(1)}, _trusted=True)

    @classmethod
    def monomial(cls, charge: int, parts: Iterable[int] = (), coef: ScalarLike = 1) -> "FockVector":
        return canonicalize([(FockMonomial.make(charge, parts), coef)])

    # mapping-ish access
    @property
    def terms(self) -> dict:
        return self._terms

    def items(self) -> Iterator[tuple]:
        for mono in sorted(self._terms, key=monomial_sort_key):
            yield FockMonomial(*mono), self._terms[mono]

    def coefficient(self, mono) -> Q:
        return self._terms.get(tuple(mono), ZERO)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self):
        return (FockMonomial(*m) for m in sorted(self._terms, key=monomial_sort_key))

    # arithmetic
    def __add__(self, other: "FockVector") -> "FockVector":
        if not isinstance(other, FockVector):
            return NotImplemented
        out = dict(self._terms)
        kernels.add_into(out, other._terms, 1)
        return FockVector(out, _trusted=True)

    def __sub__(self, other: "FockVector") -> "FockVector":
        if not isinstance(other, FockVector):
            return NotImplemented
        out = dict(self._terms)
        kernels.add_into(out, other._terms, -1)
        return FockVector(out, _trusted=True)

    def __neg__(self) -> "FockVector":
        return FockVector({k: -v for k, v in self._terms.items()}, _trusted=True)

    def __mul__(self, scalar) -> "FockVector":
        s = as_scalar(scalar)
        if not s:
            return FockVector.zero()
        return FockVector({k: s * v for k, v in self._terms.items()}, _trusted=True)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, FockVector):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # grading
    def bidegrees(self) -> set:
        """Set of (charge, weight) pairs occurring in the vector."""
        return {(c, Q(c * c + 4 * sum(p), 4)) for c, p in self._terms}

    def is_bihomogeneous(self) -> bool:
        return len(self.bidegrees()) <= 1

    def bidegree(self) -> tuple:
        degs = self.bidegrees()
        if len(degs) != 1:
            raise ValueError(f"vector is not bi-homogeneous (bidegrees {sorted(degs)})")
        return next(iter(degs))

    def weight(self) -> Q:
        return self.bidegree()[1]

    def charge(self) -> int:
        return self.bidegree()[0]

    def homogeneous_components(self) -> dict:
        comps: dict = {}
        for mono, coef in self._terms.items():
            c, p = mono
            comps.setdefault((c, Q(c * c + 4 * sum(p), 4)), {})[mono] = coef
        return {deg: FockVector(t, _trusted=True) for deg, t in comps.items()}

    # I/O
    def to_text(self, osc: str = "w") -> str:
        return render(self, osc)

    def to_json(self) -> list:
        return [
            {"coeff": scalar_str(coef), "charge": mono.charge, "parts": list(mono.parts)}
            for mono, coef in self.items()
        ]

    @classmethod
    def from_json(cls, data: list) -> "FockVector":
        return canonicalize(
            (FockMonomial.make(t["charge"], t.get("parts", ())), as_scalar(t["coeff"])) for t in data
        )

    @classmethod
    def parse(cls, text: str) -> "FockVector":
        return parse(text)

    def __repr__(self) -> str:
        return f"FockVector({render(self)!r})"

    def __str__(self) -> str:
        return render(self)


def canonicalize(raw: Iterable[tuple]) -> FockVector:
    """Sort parts, merge like terms and drop zeros."""
    out: dict = {}
    for mono, coef in raw:
        c, parts = mono
        key = (int(c), tuple(sorted(parts, reverse=True)))
        s = out.get(key, ZERO) + as_scalar(coef)
        if s:
            out[key] = s
        else:
            out.pop(key, None)
    return FockVector(out, _trusted=True)


def heisenberg_apply(n: int, v: FockVector) -> FockVector:
    """The oscillator mode w(n), with [w(m), w(n)] = (m/2) delta_{m+n,0}."""
    out: dict = {}
    for (c, parts), coef in v.terms.items():
        for mono, hc in kernels.heisenberg_on_monomial(n, c, parts):
            s = out.get(mono, ZERO) + coef * hc
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
    return FockVector(out, _trusted=True)


# ------------------------------------------------------------------ text

_TERM_RE = re.compile(
    r"""\s*(?:(?P<coef>\d+(?:/\d+)?)\s*\*\s*)?
        (?P<oscs>(?:[wa]\(\s*-\s*\d+\s*\)(?:\s*\^\s*\d+)?\s*\*\s*)*)
        e\[\s*(?P<charge>[+-]?\d+)\s*\]\s*""",
    re.VERBOSE,
)
_OSC_RE = re.compile(r"([wa])\(\s*-\s*(\d+)\s*\)(?:\s*\^\s*(\d+))?")


class TermSyntaxError(ValueError):
    pass


def parse(text: str) -> FockVector:
    """Parse ``3/4*w(-1)^2*e[2] - 1/4*w(-2)*e[2]`` (``a(-n)`` means 2*w(-n))."""
    s = text.strip()
    if s in ("", "0"):
        return FockVector.zero()
    raw = []
    pos = 0
    sign = 1
    first = True
    while pos < len(s):
        while pos < len(s) and s[pos].isspace():
            pos += 1
        if pos < len(s) and s[pos] in "+-":
            sign = -1 if s[pos] == "-" else 1
            pos += 1
        elif not first:
            raise TermSyntaxError(f"expected '+' or '-' at column {pos} in {text!r}")
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise TermSyntaxError(f"cannot parse term at column {pos} in {text!r}")
        try:
            coef = as_scalar(m.group("coef") or "1") * sign
        except (ValueError, ZeroDivisionError) as exc:
            raise TermSyntaxError(f"bad coefficient {m.group('coef')!r} in {text!r}") from exc
        parts = []
        for kind, n, power in _OSC_RE.findall(m.group("oscs")):
            n, power = int(n), int(power or 1)
            if n < 1:
                raise TermSyntaxError(f"oscillator index must be positive in {text!r}")
            parts.extend([n] * power)
            if kind == "a":
                coef *= 2 ** power
        raw.append(((int(m.group("charge")), parts), coef))
        pos = m.end()
        sign = 1
        first = False
    return canonicalize(raw)


def render(v: FockVector, osc: str = "w") -> str:
    """Text form of a vector; ``osc='a'`` rewrites w(-n) = a(-n)/2."""
    if osc not in ("w", "a"):
        raise ValueError("osc must be 'w' or 'a'")
    if not v:
        return "0"
    pieces = []
    for mono in sorted(v.terms, key=_render_sort_key):
        c, parts = mono
        coef = v.terms[mono]
        if osc == "a":
            coef = coef / (2 ** len(parts))
        factors = []
        for p in sorted(set(parts), reverse=True):
            k = parts.count(p)
            factors.append(f"{osc}(-{p})" + (f"^{k}" if k > 1 else ""))
        factors.append(f"e[{c}]")
        body = scalar_str(abs(coef)) + "*" + "*".join(factors)
        if not pieces:
            pieces.append(("-" if coef < 0 else "") + body)
        else:
            pieces.append((" - " if coef < 0 else " + ") + body)
    return "".join(pieces)
