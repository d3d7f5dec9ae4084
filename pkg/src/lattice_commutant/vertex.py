"""Vertex-operator modes, general state-field modes, translation and Virasoro modes.

The lattice vertex operator is

    e^{b w}(z) = exp(sum_{k>0} b w(-k) z^k / k) exp(-sum_{k>0} b w(k) z^{-k} / k) e_{b w} z^{b w(0)}

with the trivial cocycle e_{b w} e[c] = e[b + c].  Modes of arbitrary states are
obtained from these and from w(n) by the associativity formula, peeling one
oscillator at a time (largest first).
"""
from __future__ import annotations

from fractions import Fraction

from . import kernels
from .fock import FockVector, heisenberg_apply
from .kernels import InternalBoundError
from .scalars import Q, ZERO, HalfInt, as_scalar, doubled

__all__ = [
    "InternalBoundError",
    "rational_binomial",
    "schur_creation_apply",
    "vertex_mode_apply",
    "state_field_mode",
    "mode",
    "derivation",
    "omega",
    "virasoro_mode",
]


def rational_binomial(m, j: int) -> Q:
    """m (m-1) ... (m-j+1) / j! for rational m."""
    if j < 0:
        raise ValueError("j must be non-negative")
    m = as_scalar(m)
    out = Q(1)
    for i in range(j):
        out = out * (m - i) / (i + 1)
    return out


def schur_creation_apply(k: int, b: int, v: FockVector) -> FockVector:
    """Apply S_k(b w): the z^k coefficient of exp(sum_{i>0} b w(-i) z^i / i)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    out: dict = {}
    for (c, parts), coef in v.terms.items():
        for sparts, scoef in kernels.schur_terms(b, k):
            key = (c, tuple(sorted(parts + sparts, reverse=True)))
            s = out.get(key, ZERO) + coef * scoef
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return FockVector(out, _trusted=True)


def _apply(fn, v: FockVector) -> FockVector:
    out: dict = {}
    for mono, coef in v.terms.items():
        res = fn(mono)
        if res:
            kernels.add_into(out, res, coef)
    return FockVector(out, _trusted=True)


def vertex_mode_apply(b: int, m, v: FockVector) -> FockVector:
    """e^{b w}(m) v.  Monomials whose charge puts m in the wrong coset contribute 0."""
    m2 = doubled(m)
    return _apply(lambda mono: kernels.vertex_on_monomial(b, m2, mono[0], mono[1]), v)


def state_field_mode(u: FockVector, m, v: FockVector) -> FockVector:
    """u(m) v for arbitrary states u, v (bilinear extension of the monomial recursion)."""
    m2 = doubled(m)
    out: dict = {}
    for umono, ucoef in u.terms.items():
        for vmono, vcoef in v.terms.items():
            res = kernels.mode_on_monomial(umono, m2, vmono)
            if res:
                kernels.add_into(out, res, ucoef * vcoef)
    return FockVector(out, _trusted=True)


def mode(u: FockVector, m, v: FockVector) -> FockVector:
    """Alias of :func:`state_field_mode`."""
    return state_field_mode(u, m, v)


def derivation(v: FockVector) -> FockVector:
    """The translation operator: d(w(-n)u) = n w(-n-1) u + w(-n) du, d e[r] = r w(-1) e[r]."""
    out: dict = {}
    for (c, parts), coef in v.terms.items():
        if c:
            key = (c, kernels.insert_part(parts, 1))
            out[key] = out.get(key, ZERO) + c * coef
        for i, p in enumerate(parts):
            if i and parts[i - 1] == p:
                continue
            mult = parts.count(p)
            rest = parts[:i] + parts[i + 1:]
            key = (c, kernels.insert_part(rest, p + 1))
            out[key] = out.get(key, ZERO) + mult * p * coef
    return FockVector({k: v for k, v in out.items() if v}, _trusted=True)


def derivation_power(v: FockVector, n: int) -> FockVector:
    for _ in range(n):
        v = derivation(v)
    return v


def omega() -> FockVector:
    """The Virasoro vector (1/4) a(-1)^2 1 = w(-1)^2 1."""
    return FockVector.monomial(0, (1, 1))


_OMEGA = ((0, (1, 1)),)


def virasoro_mode(n: int, v: FockVector) -> FockVector:
    """L_n v = omega(n+1) v."""
    m2 = 2 * (n + 1)
    out: dict = {}
    for vmono, vcoef in v.terms.items():
        res = kernels.mode_on_monomial(_OMEGA[0], m2, vmono)
        if res:
            kernels.add_into(out, res, vcoef)
    return FockVector(out, _trusted=True)


def mode_index(m) -> HalfInt:
    return HalfInt.of(m)


def half(x) -> Fraction:
    return HalfInt.of(x).value


__all__ += ["derivation_power", "heisenberg_apply", "mode_index", "half"]
