"""Pure-Python hot kernels.

The compiled twin ``_ckernels`` (Cython) implements the same functions with
the same signatures; :mod:`lattice_commutant.kernels` picks one at import.

Conventions shared by both implementations:

* a monomial is a plain tuple ``(charge, parts)`` where ``parts`` is a tuple of
  positive ints in non-increasing order; it stands for
  ``w(-parts[0]) ... w(-parts[-1]) e[charge]`` with ``w`` the oscillator of
  norm 1/2 and ``e[r]`` the lattice vector of charge ``r`` (in units of w);
* a vector is a dict ``monomial -> Q`` with no zero values;
* a mode index is passed doubled (``m2 = 2*m``) so half-integers stay ints.
"""
from __future__ import annotations

from math import comb, factorial

from .scalars import Q

ZERO = Q(0)


class InternalBoundError(RuntimeError):
    """A truncation bound was exceeded without the sum vanishing."""


# ---------------------------------------------------------------- partitions

_partition_cache: dict = {}


def partitions(k: int) -> tuple:
    """Partitions of ``k`` as non-increasing tuples, lexicographically descending."""
    hit = _partition_cache.get(k)
    if hit is not None:
        return hit
    out = []

    def rec(rest, cap, acc):
        if rest == 0:
            out.append(tuple(acc))
            return
        for p in range(min(rest, cap), 0, -1):
            acc.append(p)
            rec(rest - p, p, acc)
            acc.pop()

    rec(k, k, [])
    res = tuple(out)
    _partition_cache[k] = res
    return res


def _multiplicities(parts):
    mult = {}
    for p in parts:
        mult[p] = mult.get(p, 0) + 1
    return mult


_schur_cache: dict = {}


def schur_terms(b: int, k: int) -> tuple:
    """Expansion of S_k(b w) as ``((parts, coef), ...)``.

    S_k is the degree-k coefficient of exp(sum_{i>0} b w(-i) z^i / i), so the
    coefficient of a partition with multiplicities m_i is prod (b/i)^m_i / m_i!.
    """
    key = (b, k)
    hit = _schur_cache.get(key)
    if hit is not None:
        return hit
    terms = []
    for mu in partitions(k):
        coef = Q(1)
        for i, m in _multiplicities(mu).items():
            coef *= Q(b, i) ** m / factorial(m)
        if coef:
            terms.append((mu, coef))
    res = tuple(terms)
    _schur_cache[key] = res
    return res


_annihilation_cache: dict = {}


def annihilation_terms(b: int, parts: tuple) -> tuple:
    """Action of exp(-sum_{n>0} b w(n) z^{-n} / n) on the oscillator word ``parts``.

    Returns ``((l, remaining_parts, coef), ...)`` where ``z^{-l}`` is the power
    produced.  Removing ``t`` copies of ``w(-n)`` out of ``a`` copies gives the
    factor binom(a, t) (-b/2)^t.
    """
    key = (b, parts)
    hit = _annihilation_cache.get(key)
    if hit is not None:
        return hit
    if b == 0 or not parts:
        res = ((0, parts, Q(1)),)
        _annihilation_cache[key] = res
        return res
    mult = sorted(_multiplicities(parts).items(), reverse=True)
    half = Q(-b, 2)
    states = [(0, (), Q(1))]
    for n, a in mult:
        nxt = []
        for l, rem, coef in states:
            for t in range(a + 1):
                nxt.append((l + n * t, rem + (n,) * (a - t), coef * comb(a, t) * half ** t))
        states = nxt
    res = tuple(states)
    _annihilation_cache[key] = res
    return res


def insert_part(parts: tuple, p: int) -> tuple:
    i = 0
    n = len(parts)
    while i < n and parts[i] >= p:
        i += 1
    return parts[:i] + (p,) + parts[i:]


def merge_parts(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b, reverse=True))


# ------------------------------------------------------------ basic actions

def heisenberg_on_monomial(n: int, charge: int, parts: tuple) -> list:
    """w(n) on one monomial, as a list of ``(monomial, coef)``."""
    if n < 0:
        return [((charge, insert_part(parts, -n)), Q(1))]
    if n == 0:
        if charge == 0:
            return []
        return [((charge, parts), Q(charge, 2))]
    a = parts.count(n)
    if a == 0:
        return []
    i = parts.index(n)
    return [((charge, parts[:i] + parts[i + 1:]), Q(a * n, 2))]


def vertex_on_monomial(b: int, m2: int, charge: int, parts: tuple) -> dict:
    """The mode e^{b w}(m) (with ``m2 = 2m``) applied to one monomial."""
    # coefficient of z^{-m-1}: z^{bc/2} z^{-l} z^{k}  =>  k = l - bc/2 - m - 1
    base2 = -b * charge - m2 - 2
    if base2 % 2:
        return {}
    base = base2 // 2
    out: dict = {}
    new_charge = charge + b
    for l, rem, acoef in annihilation_terms(b, parts):
        k = l + base
        if k < 0:
            continue
        for sparts, scoef in schur_terms(b, k):
            key = (new_charge, merge_parts(rem, sparts))
            out[key] = out.get(key, ZERO) + acoef * scoef
    return {key: v for key, v in out.items() if v}


def _w4(mono) -> int:
    c, parts = mono
    return c * c + 4 * sum(parts)


_mode_memo: dict = {}


def clear_caches() -> None:
    _mode_memo.clear()
    _annihilation_cache.clear()


def memo_size() -> int:
    return len(_mode_memo)


def mode_on_monomial(u: tuple, m2: int, d: tuple) -> dict:
    """u(m) d for monomials u, d.  The returned dict is shared; do not mutate."""
    key = (u, m2, d)
    hit = _mode_memo.get(key)
    if hit is not None:
        return hit
    r, uparts = u
    c, dparts = d
    rc = r + c
    out4 = _w4(u) + _w4(d) - 2 * m2 - 4
    if out4 < rc * rc or (out4 - rc * rc) % 4:
        res = {}
    elif not uparts:
        res = vertex_on_monomial(r, m2, c, dparts)
    else:
        res = _peel(u, m2, d)
    _mode_memo[key] = res
    return res


def _peel(u, m2, d):
    # (w(-n) u1)(k) d = sum_j binom(n+j-1, j) [ w(-n-j) u1(k+j) d - (-1)^n u1(k-n-j) w(j) d ]
    r, uparts = u
    c, dparts = d
    n = uparts[0]
    u1 = (r, uparts[1:])
    rc2 = (r + c) * (r + c)
    w4base = _w4(u1) + _w4(d)
    cap = w4base // 4 + 16
    acc: dict = {}
    j = 0
    while True:
        k2 = m2 + 2 * j
        if w4base - 2 * k2 - 4 < rc2:
            break
        if j > cap:
            raise InternalBoundError(f"creation sum did not terminate for {u}, {m2}/2, {d}")
        inner = mode_on_monomial(u1, k2, d)
        if inner:
            coef = comb(n + j - 1, j)
            p = n + j
            for (cc, pp), v in inner.items():
                key = (cc, insert_part(pp, p))
                acc[key] = acc.get(key, ZERO) + coef * v
        j += 1
    sign = 1 if n % 2 else -1
    for j in range(sum(dparts) + 1):
        hv = heisenberg_on_monomial(j, c, dparts)
        if not hv:
            continue
        k2 = m2 - 2 * n - 2 * j
        coef = sign * comb(n + j - 1, j)
        for mono, hc in hv:
            inner = mode_on_monomial(u1, k2, mono)
            if inner:
                f = coef * hc
                for key, v in inner.items():
                    acc[key] = acc.get(key, ZERO) + f * v
    return {key: v for key, v in acc.items() if v}


# -------------------------------------------------------------- sparse ops

def add_into(target: dict, source: dict, coef) -> None:
    """target += coef * source, dropping cancelled entries."""
    for key, v in source.items():
        s = target.get(key, ZERO) + coef * v
        if s:
            target[key] = s
        else:
            target.pop(key, None)


# ------------------------------------------------------------ linear algebra

def rref(rows: list, ncols: int):
    """Exact reduced row-echelon form.

    ``rows`` is a list of dense rows (lists of ``Q``); it is not modified.
    Pivoting is leftmost column first, then the topmost remaining row.
    Returns ``(reduced_rows, pivot_columns)`` with zero rows dropped.
    """
    m = [list(r) for r in rows if any(r)]
    pivots = []
    prow = 0
    nrows = len(m)
    for col in range(ncols):
        if prow >= nrows:
            break
        sel = -1
        for i in range(prow, nrows):
            if m[i][col]:
                sel = i
                break
        if sel < 0:
            continue
        if sel != prow:
            m[prow], m[sel] = m[sel], m[prow]
        pr = m[prow]
        inv = 1 / pr[col]
        if inv != 1:
            for t in range(col, ncols):
                if pr[t]:
                    pr[t] *= inv
        nz = [t for t in range(col, ncols) if pr[t]]
        for i in range(nrows):
            if i == prow:
                continue
            row = m[i]
            f = row[col]
            if f:
                for t in nz:
                    row[t] -= f * pr[t]
        pivots.append(col)
        prow += 1
    return m[:prow], pivots


# ------------------------------------------------------------ bilinear modes

def mode_on_vector(u: dict, m2: int, v: dict) -> dict:
    """u(m) v for sparse vectors (a fresh dict)."""
    out: dict = {}
    for um, uc in u.items():
        for vm, vc in v.items():
            res = mode_on_monomial(um, m2, vm)
            if res:
                add_into(out, res, uc * vc)
    return out


_binom_half_cache: dict = {}


def binom_half(x2: int, j: int):
    """binom(x2/2, j) for a doubled index x2."""
    key = (x2, j)
    hit = _binom_half_cache.get(key)
    if hit is None:
        hit = Q(1)
        x = Q(x2, 2)
        for i in range(j):
            hit = hit * (x - i) / (i + 1)
        _binom_half_cache[key] = hit
    return hit


def _cached_mode(cache: dict, tag, u: dict, m2: int, v: dict) -> dict:
    hit = cache.get(tag)
    if hit is None:
        hit = mode_on_vector(u, m2, v) if v else {}
        cache[tag] = hit
    return hit


def borcherds_sides(b: dict, c: dict, d: dict, n2: int, m2: int, k2: int, tops: tuple, eta: int, cache: dict) -> tuple:
    """Both sides of the Borcherds identity on doubled indices.

    ``tops`` are the largest doubled indices for which b(.)c, b(.)d, c(.)d can
    be non-zero; ``eta`` is the pairing of the charges of b and c, doubled.
    ``cache`` holds intermediate products for this (b, c, d) and may be reused.
    """
    top_n, top_m, top_k = tops
    lhs: dict = {}
    j = 0
    while n2 + 2 * j <= top_n:
        q2 = n2 + 2 * j
        p2 = m2 + k2 - 2 * j
        key = ("t1", q2, p2)
        t = cache.get(key)
        if t is None:
            bc = _cached_mode(cache, ("bc", q2), b, q2, c)
            t = mode_on_vector(bc, p2, d) if bc else {}
            cache[key] = t
        if t:
            add_into(lhs, t, binom_half(m2, j))
        j += 1
    rhs: dict = {}
    sign = -1 if ((eta + n2) // 2) % 2 else 1
    j = 0
    while k2 + 2 * j <= top_k:
        a2 = m2 + n2 - 2 * j
        p2 = k2 + 2 * j
        key = ("t2", a2, p2)
        t = cache.get(key)
        if t is None:
            cd = _cached_mode(cache, ("cd", p2), c, p2, d)
            t = mode_on_vector(b, a2, cd) if cd else {}
            cache[key] = t
        if t:
            add_into(rhs, t, binom_half(n2, j) * (-1 if j % 2 else 1))
        j += 1
    j = 0
    while m2 + 2 * j <= top_m:
        a2 = n2 + k2 - 2 * j
        p2 = m2 + 2 * j
        key = ("t3", a2, p2)
        t = cache.get(key)
        if t is None:
            bd = _cached_mode(cache, ("bd", p2), b, p2, d)
            t = mode_on_vector(c, a2, bd) if bd else {}
            cache[key] = t
        if t:
            add_into(rhs, t, -sign * binom_half(n2, j) * (-1 if j % 2 else 1))
        j += 1
    return lhs, rhs
