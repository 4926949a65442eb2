"""Numba kernels for structure-tensor defect scans.

Same contracts (and witness order) as numpy_backend: each scan returns
the lexicographically first mismatch, or all -1 when the identity
holds.  Products skip zero entries, which is what makes the quartic
loops affordable on smash-product tensors.
"""

import numpy as np
from numba import njit

__all__ = ["assoc_defect", "bialgebra_defect", "antipode_defect"]


@njit(cache=True, inline="always")
def _mul(exp, log, a, b):
    if a == 0 or b == 0:
        return np.int64(0)
    return exp[log[a] + log[b]]


@njit(cache=True, inline="always")
def _add(exp, log, zech, zneg, a, b):
    if a == 0:
        return b
    if b == 0:
        return a
    q1 = zech.shape[0]
    la = log[a]
    d = log[b] - la
    if d < 0:
        d += q1
    if d == zneg:
        return np.int64(0)
    return exp[la + zech[d]]


@njit(cache=True)
def assoc_defect(p, pows, exp, log, zech, zneg, neg, M):
    d = M.shape[0]
    lhs = np.zeros((d, d), np.int64)
    rhs = np.zeros((d, d), np.int64)
    out = np.full(4, -1, np.int64)
    for a in range(d):
        for b in range(d):
            for i in range(d):
                for j in range(d):
                    lhs[i, j] = 0
                    rhs[i, j] = 0
            for e in range(d):
                coef = M[a, b, e]
                if coef != 0:
                    for c in range(d):
                        for x in range(d):
                            v = M[e, c, x]
                            if v != 0:
                                lhs[c, x] = _add(exp, log, zech, zneg, lhs[c, x], _mul(exp, log, coef, v))
            for c in range(d):
                for f in range(d):
                    coef = M[b, c, f]
                    if coef != 0:
                        for x in range(d):
                            v = M[a, f, x]
                            if v != 0:
                                rhs[c, x] = _add(exp, log, zech, zneg, rhs[c, x], _mul(exp, log, coef, v))
            for c in range(d):
                for x in range(d):
                    if lhs[c, x] != rhs[c, x]:
                        out[0] = a
                        out[1] = b
                        out[2] = c
                        out[3] = x
                        return out
    return out


@njit(cache=True)
def bialgebra_defect(p, pows, exp, log, zech, zneg, neg, M, C):
    d = M.shape[0]
    buf = np.zeros((d, d), np.int64)
    out = np.full(2, -1, np.int64)
    for a in range(d):
        for b in range(d):
            for i in range(d):
                for j in range(d):
                    buf[i, j] = 0
            for e in range(d):
                coef = M[a, b, e]
                if coef != 0:
                    for r in range(d):
                        for s in range(d):
                            v = C[e, r, s]
                            if v != 0:
                                buf[r, s] = _add(exp, log, zech, zneg, buf[r, s], _mul(exp, log, coef, v))
            for r in range(d):
                for s in range(d):
                    ca = C[a, r, s]
                    if ca != 0:
                        for t in range(d):
                            for u in range(d):
                                cb = C[b, t, u]
                                if cb != 0:
                                    coef = _mul(exp, log, ca, cb)
                                    for x in range(d):
                                        m1 = M[r, t, x]
                                        if m1 != 0:
                                            c1 = neg[_mul(exp, log, coef, m1)]
                                            for y in range(d):
                                                m2 = M[s, u, y]
                                                if m2 != 0:
                                                    buf[x, y] = _add(
                                                        exp, log, zech, zneg, buf[x, y], _mul(exp, log, c1, m2)
                                                    )
            for x in range(d):
                for y in range(d):
                    if buf[x, y] != 0:
                        out[0] = a
                        out[1] = b
                        return out
    return out


@njit(cache=True)
def antipode_defect(p, pows, exp, log, zech, zneg, neg, M, C, S, unit, counit):
    d = M.shape[0]
    w1 = np.zeros(d, np.int64)
    w2 = np.zeros(d, np.int64)
    out = np.full(2, -1, np.int64)
    for a in range(d):
        for c in range(d):
            w1[c] = 0
            w2[c] = 0
        for r in range(d):
            for s in range(d):
                coef = C[a, r, s]
                if coef != 0:
                    for e in range(d):
                        sv = S[e, r]
                        if sv != 0:
                            c1 = _mul(exp, log, coef, sv)
                            for c in range(d):
                                m = M[e, s, c]
                                if m != 0:
                                    w1[c] = _add(exp, log, zech, zneg, w1[c], _mul(exp, log, c1, m))
                    for e in range(d):
                        sv = S[e, s]
                        if sv != 0:
                            c2 = _mul(exp, log, coef, sv)
                            for c in range(d):
                                m = M[r, e, c]
                                if m != 0:
                                    w2[c] = _add(exp, log, zech, zneg, w2[c], _mul(exp, log, c2, m))
        eps = counit[a]
        for c in range(d):
            if w1[c] != _mul(exp, log, eps, unit[c]):
                out[0] = a
                out[1] = 0
                return out
        for c in range(d):
            if w2[c] != _mul(exp, log, eps, unit[c]):
                out[0] = a
                out[1] = 1
                return out
    return out
