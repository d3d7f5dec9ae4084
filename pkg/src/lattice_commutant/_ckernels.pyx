# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=False
"""Compiled twin of :mod:`lattice_commutant._pykernels`.

Same functions, signatures and results; the recursion, the sparse
accumulation and the row reduction run with C-typed indices.
"""
from math import comb

from ._pykernels import InternalBoundError, schur_terms, insert_part, merge_parts
from ._pykernels import annihilation_terms as _py_annihilation_terms
from ._pykernels import binom_half as _py_binom_half
from .scalars import Q

cdef object ZERO = Q(0)
cdef dict _mode_memo = {}
cdef dict _annihilation_cache = {}


def annihilation_terms(int b, tuple parts):
    key = (b, parts)
    hit = _annihilation_cache.get(key)
    if hit is None:
        hit = _py_annihilation_terms(b, parts)
        _annihilation_cache[key] = hit
    return hit


cdef tuple _insert(tuple parts, int p):
    cdef Py_ssize_t i = 0, n = len(parts)
    while i < n and <int>parts[i] >= p:
        i += 1
    return parts[:i] + (p,) + parts[i:]


def heisenberg_on_monomial(int n, int charge, tuple parts):
    cdef int a
    cdef Py_ssize_t i
    if n < 0:
        return [((charge, _insert(parts, -n)), Q(1))]
    if n == 0:
        if charge == 0:
            return []
        return [((charge, parts), Q(charge, 2))]
    a = parts.count(n)
    if a == 0:
        return []
    i = parts.index(n)
    return [((charge, parts[:i] + parts[i + 1:]), Q(a * n, 2))]


def vertex_on_monomial(int b, int m2, int charge, tuple parts):
    cdef int base2 = -b * charge - m2 - 2
    cdef int base, k, l, new_charge
    cdef dict out
    if base2 % 2:
        return {}
    base = base2 // 2
    out = {}
    new_charge = charge + b
    for l, rem, acoef in annihilation_terms(b, parts):
        k = l + base
        if k < 0:
            continue
        for sparts, scoef in schur_terms(b, k):
            key = (new_charge, merge_parts(rem, sparts))
            v = out.get(key)
            out[key] = acoef * scoef if v is None else v + acoef * scoef
    return {key: v for key, v in out.items() if v}


cdef inline int _w4(int c, tuple parts):
    cdef int s = 0
    cdef object p
    for p in parts:
        s += <int>p
    return c * c + 4 * s


def clear_caches():
    _mode_memo.clear()
    _annihilation_cache.clear()


def memo_size():
    return len(_mode_memo)


def mode_on_monomial(tuple u, int m2, tuple d):
    return _mode(u, m2, d)


cdef dict _mode(tuple u, int m2, tuple d):
    key = (u, m2, d)
    hit = _mode_memo.get(key)
    if hit is not None:
        return <dict>hit
    cdef int r = u[0]
    cdef tuple uparts = u[1]
    cdef int c = d[0]
    cdef tuple dparts = d[1]
    cdef int rc = r + c
    cdef int out4 = _w4(r, uparts) + _w4(c, dparts) - 2 * m2 - 4
    cdef dict res
    if out4 < rc * rc or (out4 - rc * rc) % 4:
        res = {}
    elif not uparts:
        res = vertex_on_monomial(r, m2, c, dparts)
    else:
        res = _peel(r, uparts, m2, c, dparts)
    _mode_memo[key] = res
    return res


cdef dict _peel(int r, tuple uparts, int m2, int c, tuple dparts):
    cdef int n = uparts[0]
    cdef tuple rest = uparts[1:]
    cdef tuple u1 = (r, rest)
    cdef tuple d = (c, dparts)
    cdef int rc2 = (r + c) * (r + c)
    cdef int w4base = _w4(r, rest) + _w4(c, dparts)
    cdef int cap = w4base // 4 + 16
    cdef int j = 0, k2, p, sign, level
    cdef dict acc = {}
    cdef dict inner
    while True:
        k2 = m2 + 2 * j
        if w4base - 2 * k2 - 4 < rc2:
            break
        if j > cap:
            raise InternalBoundError(f"creation sum did not terminate for {(r, uparts)}, {m2}/2, {d}")
        inner = _mode(u1, k2, d)
        if inner:
            coef = comb(n + j - 1, j)
            p = n + j
            for mono, v in inner.items():
                key = (mono[0], _insert(mono[1], p))
                old = acc.get(key)
                acc[key] = coef * v if old is None else old + coef * v
        j += 1
    sign = 1 if n % 2 else -1
    level = 0
    for x in dparts:
        level += <int>x
    for j in range(level + 1):
        hv = heisenberg_on_monomial(j, c, dparts)
        if not hv:
            continue
        k2 = m2 - 2 * n - 2 * j
        coef = sign * comb(n + j - 1, j)
        for mono, hc in hv:
            inner = _mode(u1, k2, mono)
            if inner:
                f = coef * hc
                for key, v in inner.items():
                    old = acc.get(key)
                    acc[key] = f * v if old is None else old + f * v
    return {key: v for key, v in acc.items() if v}


def add_into(dict target, dict source, coef):
    for key, v in source.items():
        old = target.get(key)
        s = coef * v if old is None else old + coef * v
        if s:
            target[key] = s
        else:
            target.pop(key, None)


def rref(rows, int ncols):
    cdef list m = [list(r) for r in rows if any(r)]
    cdef list pivots = []
    cdef Py_ssize_t prow = 0, nrows = len(m), col, i, sel, t
    cdef list pr, row, nz
    for col in range(ncols):
        if prow >= nrows:
            break
        sel = -1
        for i in range(prow, nrows):
            if (<list>m[i])[col]:
                sel = i
                break
        if sel < 0:
            continue
        if sel != prow:
            m[prow], m[sel] = m[sel], m[prow]
        pr = <list>m[prow]
        inv = 1 / pr[col]
        if inv != 1:
            for t in range(col, ncols):
                if pr[t]:
                    pr[t] = pr[t] * inv
        nz = [t for t in range(col, ncols) if pr[t]]
        for i in range(nrows):
            if i == prow:
                continue
            row = <list>m[i]
            f = row[col]
            if f:
                for t in nz:
                    row[t] = row[t] - f * pr[t]
        pivots.append(col)
        prow += 1
    return m[:prow], pivots


def mode_on_vector(dict u, int m2, dict v):
    return _mode_on_vector(u, m2, v)


cdef dict _mode_on_vector(dict u, int m2, dict v):
    cdef dict out = {}
    cdef dict res
    for um, uc in u.items():
        for vm, vc in v.items():
            res = _mode(um, m2, vm)
            if res:
                add_into(out, res, uc * vc)
    return out


def binom_half(int x2, int j):
    return _binom_half(x2, j)


cdef object _binom_half(int x2, int j):
    return _py_binom_half(x2, j)


cdef dict _cached_mode(dict cache, tuple tag, dict u, int m2, dict v):
    hit = cache.get(tag)
    if hit is None:
        hit = _mode_on_vector(u, m2, v) if v else {}
        cache[tag] = hit
    return <dict>hit


def borcherds_sides(dict b, dict c, dict d, int n2, int m2, int k2, tuple tops, int eta, dict cache):
    cdef int top_n = tops[0], top_m = tops[1], top_k = tops[2]
    cdef int j, q2, p2, a2, sign
    cdef dict lhs = {}, rhs = {}
    cdef dict inter
    j = 0
    while n2 + 2 * j <= top_n:
        q2 = n2 + 2 * j
        p2 = m2 + k2 - 2 * j
        key = ("t1", q2, p2)
        t = cache.get(key)
        if t is None:
            inter = _cached_mode(cache, ("bc", q2), b, q2, c)
            t = _mode_on_vector(inter, p2, d) if inter else {}
            cache[key] = t
        if t:
            add_into(lhs, t, _binom_half(m2, j))
        j += 1
    sign = -1 if ((eta + n2) // 2) % 2 else 1
    j = 0
    while k2 + 2 * j <= top_k:
        a2 = m2 + n2 - 2 * j
        p2 = k2 + 2 * j
        key = ("t2", a2, p2)
        t = cache.get(key)
        if t is None:
            inter = _cached_mode(cache, ("cd", p2), c, p2, d)
            t = _mode_on_vector(b, a2, inter) if inter else {}
            cache[key] = t
        if t:
            add_into(rhs, t, _binom_half(n2, j) * (-1 if j % 2 else 1))
        j += 1
    j = 0
    while m2 + 2 * j <= top_m:
        a2 = n2 + k2 - 2 * j
        p2 = m2 + 2 * j
        key = ("t3", a2, p2)
        t = cache.get(key)
        if t is None:
            inter = _cached_mode(cache, ("bd", p2), b, p2, d)
            t = _mode_on_vector(c, a2, inter) if inter else {}
            cache[key] = t
        if t:
            add_into(rhs, t, -sign * _binom_half(n2, j) * (-1 if j % 2 else 1))
        j += 1
    return lhs, rhs
