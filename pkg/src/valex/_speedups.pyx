# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled arithmetic kernel for sparse bivariate Laurent terms.

Same contract as valex._pykernel: dicts mapping (i, j) exponent pairs to
nonzero int coefficients, inputs never mutated, no zero coefficients stored.
Coefficients stay Python ints (fraction-free elimination needs bignums);
the speedup comes from C-level loop and dict traffic.
"""

BACKEND = "c"


def mul_terms(dict a, dict b):
    cdef dict out = {}
    cdef list items
    cdef tuple ka, kb, key
    cdef object ca, cb, v
    cdef Py_ssize_t idx, n
    if not a or not b:
        return out
    if len(a) > len(b):
        a, b = b, a
    items = list(b.items())
    n = len(items)
    for ka, ca in a.items():
        for idx in range(n):
            kb = <tuple>(<tuple>items[idx])[0]
            cb = (<tuple>items[idx])[1]
            key = (ka[0] + kb[0], ka[1] + kb[1])
            v = out.get(key)
            if v is None:
                out[key] = ca * cb
            else:
                v = v + ca * cb
                if v:
                    out[key] = v
                else:
                    del out[key]
    return out


def fma_terms(dict a, dict b, dict c, dict d):
    """a*b - c*d accumulated into one dict."""
    cdef dict out = mul_terms(a, b)
    cdef list items
    cdef tuple kc, kd, key
    cdef object cc, cd, v
    cdef Py_ssize_t idx, n
    if not c or not d:
        return out
    if len(c) > len(d):
        c, d = d, c
    items = list(d.items())
    n = len(items)
    for kc, cc in c.items():
        for idx in range(n):
            kd = <tuple>(<tuple>items[idx])[0]
            cd = (<tuple>items[idx])[1]
            key = (kc[0] + kd[0], kc[1] + kd[1])
            v = out.get(key)
            if v is None:
                out[key] = -(cc * cd)
            else:
                v = v - cc * cd
                if v:
                    out[key] = v
                else:
                    del out[key]
    return out


cdef _divexact_upoly(dict a, dict b):
    """Exact division of univariate {deg: coeff} polys over Z, or None."""
    cdef dict r, q
    cdef long db, dr, shift, e, key
    cdef object lead, top, rem, v, cof
    if not a:
        return {}
    r = dict(a)
    db = max(b)
    lead = b[db]
    q = {}
    while r:
        dr = max(r)
        if dr < db:
            return None
        top, rem = divmod(r[dr], lead)
        if rem:
            return None
        shift = dr - db
        q[shift] = top
        for e, cof in b.items():
            key = e + shift
            v = r.get(key)
            if v is None:
                r[key] = -(top * cof)
            else:
                v = v - top * cof
                if v:
                    r[key] = v
                else:
                    del r[key]
    return q


def divexact_terms(dict a, dict b):
    """Exact Laurent quotient a/b, or None when not divisible."""
    cdef long a_iu = 0, a_iv = 0, b_iu = 0, b_iv = 0
    cdef long i, j, db, dr, shift, key, su, sv, tj
    cdef dict au = {}, bu = {}, q = {}, r, col, ri, out, top, lead
    cdef tuple k
    cdef object cval, tc, v, res
    cdef bint first
    if not a:
        return {}

    first = True
    for k in a:
        i = k[0]
        j = k[1]
        if first or i < a_iu:
            a_iu = i
        if first or j < a_iv:
            a_iv = j
        first = False
    first = True
    for k in b:
        i = k[0]
        j = k[1]
        if first or i < b_iu:
            b_iu = i
        if first or j < b_iv:
            b_iv = j
        first = False

    for k, cval in a.items():
        i = <long>k[0] - a_iu
        j = <long>k[1] - a_iv
        col = <dict>au.get(i)
        if col is None:
            au[i] = {j: cval}
        else:
            col[j] = cval
    for k, cval in b.items():
        i = <long>k[0] - b_iu
        j = <long>k[1] - b_iv
        col = <dict>bu.get(i)
        if col is None:
            bu[i] = {j: cval}
        else:
            col[j] = cval

    db = max(bu)
    lead = <dict>bu[db]
    r = {}
    for i, col in au.items():
        r[i] = dict(col)
    while r:
        dr = max(r)
        if dr < db:
            return None
        res = _divexact_upoly(<dict>r[dr], lead)
        if res is None:
            return None
        top = <dict>res
        shift = dr - db
        q[shift] = top
        for i, col in bu.items():
            key = i + shift
            ri = <dict>r.get(key)
            if ri is None:
                ri = {}
                r[key] = ri
            for j, cval in col.items():
                for tj, tc in top.items():
                    v = ri.get(j + tj)
                    if v is None:
                        ri[j + tj] = -(tc * cval)
                    else:
                        v = v - tc * cval
                        if v:
                            ri[j + tj] = v
                        else:
                            del ri[j + tj]
            if not ri:
                del r[key]

    su = a_iu - b_iu
    sv = a_iv - b_iv
    out = {}
    for i, col in q.items():
        for j, cval in col.items():
            if cval:
                out[(i + su, j + sv)] = cval
    return out
