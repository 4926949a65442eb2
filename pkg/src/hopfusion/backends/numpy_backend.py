"""Pure-numpy kernels for structure-tensor defect scans.

Tensors over GF(p^k) are dense int64 code arrays but typically very
sparse, so every contraction here goes through a flat sorted-join on
the nonzero entries instead of dense matmuls.  Witnesses agree exactly
with the numba backend: both report the lexicographically first
mismatch.
"""

import numpy as np

__all__ = ["assoc_defect", "bialgebra_defect", "antipode_defect"]


def _vmul(exp, log, a, b):
    """Elementwise GF product of two code arrays."""
    out = exp[log[a] + log[b]]
    out[(a == 0) | (b == 0)] = 0
    return out


class _Sp:
    """Sparse tensor: sorted flat int64 keys plus nonzero codes."""

    __slots__ = ("shape", "keys", "vals")

    def __init__(self, shape, keys, vals):
        self.shape = tuple(int(s) for s in shape)
        self.keys = keys
        self.vals = vals

    @classmethod
    def from_dense(cls, arr):
        flat = arr.ravel()
        keys = np.flatnonzero(flat)
        return cls(arr.shape, keys, flat[keys].astype(np.int64))

    def reshape(self, *shape):
        return _Sp(shape, self.keys, self.vals)

    def transpose(self, *perm):
        idx = np.unravel_index(self.keys, self.shape)
        shape = tuple(self.shape[p] for p in perm)
        keys = np.ravel_multi_index(tuple(idx[p] for p in perm), shape)
        order = np.argsort(keys, kind="stable")
        return _Sp(shape, keys[order], self.vals[order])


def _group_sum(p, pows, keys, vals):
    """Collapse duplicate keys by GF addition; drops zero results."""
    if len(keys) == 0:
        return keys, vals
    order = np.argsort(keys, kind="stable")
    keys = keys[order]
    vals = vals[order]
    new = np.empty(len(keys), dtype=bool)
    new[0] = True
    new[1:] = keys[1:] != keys[:-1]
    starts = np.flatnonzero(new)
    digits = (vals[:, None] // pows) % p
    sums = np.add.reduceat(digits, starts, axis=0) % p
    out_vals = sums @ pows
    out_keys = keys[starts]
    keep = out_vals != 0
    return out_keys[keep], out_vals[keep]


def _contract(p, pows, exp, log, a, b):
    """Contract the last axis of `a` against the first axis of `b`."""
    j = a.shape[-1]
    assert b.shape[0] == j
    rest_a = 1
    for s in a.shape[:-1]:
        rest_a *= s
    rest_b = 1
    for s in b.shape[1:]:
        rest_b *= s
    out_shape = a.shape[:-1] + b.shape[1:]
    if len(a.keys) == 0 or len(b.keys) == 0:
        return _Sp(out_shape, np.zeros(0, np.int64), np.zeros(0, np.int64))
    oa, ja = np.divmod(a.keys, j)
    jb, ob = np.divmod(b.keys, rest_b)
    counts = np.bincount(jb, minlength=j)
    offs = np.zeros(j + 1, np.int64)
    np.cumsum(counts, out=offs[1:])
    cnt = counts[ja]
    total = int(cnt.sum())
    if total == 0:
        return _Sp(out_shape, np.zeros(0, np.int64), np.zeros(0, np.int64))
    rep = np.repeat(np.arange(len(ja)), cnt)
    cum = np.zeros(len(ja), np.int64)
    np.cumsum(cnt[:-1], out=cum[1:])
    pos = np.arange(total) + np.repeat(offs[ja] - cum, cnt)
    prod = _vmul(exp, log, a.vals[rep], b.vals[pos])
    okey = oa[rep] * rest_b + ob[pos]
    keys, vals = _group_sum(p, pows, okey, prod)
    return _Sp(out_shape, keys, vals)


def _first_diff(a, b):
    """Flat key of the lexicographically first entry where two sparse
    tensors differ, or -1 if they are equal."""
    if len(a.keys) == len(b.keys) and np.array_equal(a.keys, b.keys) and np.array_equal(a.vals, b.vals):
        return -1
    merged = np.union1d(a.keys, b.keys)
    va = np.zeros(len(merged), np.int64)
    vb = np.zeros(len(merged), np.int64)
    if len(a.keys):
        ia = np.searchsorted(a.keys, merged)
        ma = (ia < len(a.keys)) & (a.keys[np.minimum(ia, len(a.keys) - 1)] == merged)
        va[ma] = a.vals[ia[ma]]
    if len(b.keys):
        ib = np.searchsorted(b.keys, merged)
        mb = (ib < len(b.keys)) & (b.keys[np.minimum(ib, len(b.keys) - 1)] == merged)
        vb[mb] = b.vals[ib[mb]]
    bad = np.flatnonzero(va != vb)
    return int(merged[bad[0]])


def assoc_defect(p, pows, exp, log, zech, zneg, neg, M):
    """First (a, b, c, x) with ((e_a e_b) e_c)_x != (e_a (e_b e_c))_x."""
    d = M.shape[0]
    sp = _Sp.from_dense(M)
    lhs = _contract(p, pows, exp, log, sp.reshape(d * d, d), sp.reshape(d, d * d))
    rhs = _contract(
        p, pows, exp, log, sp.reshape(d * d, d), _Sp.from_dense(M.transpose(1, 0, 2)).reshape(d, d * d)
    )
    # lhs[(a,b),(c,x)]; rhs[(b,c),(a,x)] -> align to (a,b,c,x)
    rhs = rhs.reshape(d, d, d, d).transpose(2, 0, 1, 3)
    key = _first_diff(lhs.reshape(d, d, d, d), rhs)
    if key < 0:
        return np.full(4, -1, np.int64)
    return np.array(np.unravel_index(key, (d, d, d, d)), np.int64)


def bialgebra_defect(p, pows, exp, log, zech, zneg, neg, M, C):
    """First (a, b) where comultiplying e_a e_b disagrees with the
    componentwise product of the comultiplications."""
    d = M.shape[0]
    spm = _Sp.from_dense(M)
    spc = _Sp.from_dense(C)
    lhs = _contract(p, pows, exp, log, spm.reshape(d * d, d), spc.reshape(d, d * d))
    # rhs[a,b,x,y] = sum C[a,r,s] C[b,t,u] M[r,t,x] M[s,u,y]
    e = _contract(
        p,
        pows,
        exp,
        log,
        _Sp.from_dense(C.transpose(0, 2, 1)).reshape(d * d, d),
        spm.reshape(d, d * d),
    )  # ((a,s),(t,x))
    f = _contract(
        p,
        pows,
        exp,
        log,
        e.reshape(d, d, d, d).transpose(0, 1, 3, 2).reshape(d * d * d, d),
        _Sp.from_dense(C.transpose(1, 0, 2)).reshape(d, d * d),
    )  # ((a,s,x),(b,u))
    g = _contract(
        p,
        pows,
        exp,
        log,
        f.reshape(d, d, d, d, d).transpose(0, 2, 3, 1, 4).reshape(d * d * d, d * d),
        spm.reshape(d * d, d),
    )  # ((a,x,b),y)
    rhs = g.reshape(d, d, d, d).transpose(0, 2, 1, 3)  # (a,b,x,y)
    key = _first_diff(lhs.reshape(d, d, d, d), rhs)
    if key < 0:
        return np.full(2, -1, np.int64)
    a, b, _, _ = np.unravel_index(key, (d, d, d, d))
    return np.array([a, b], np.int64)


def antipode_defect(p, pows, exp, log, zech, zneg, neg, M, C, S, unit, counit):
    """First (a, side) where convolving the antipode against identity
    fails to collapse e_a to counit(e_a)*1; side 0 applies it to the
    left tensor factor, side 1 to the right."""
    d = M.shape[0]
    spm = _Sp.from_dense(M)
    # left: T1[a,c] = sum_{r,s,e} C[a,r,s] S[e,r] M[e,s,c]
    cs = _contract(
        p,
        pows,
        exp,
        log,
        _Sp.from_dense(C.transpose(0, 2, 1)).reshape(d * d, d),
        _Sp.from_dense(S.T),
    )  # ((a,s),e)
    t1 = _contract(
        p,
        pows,
        exp,
        log,
        cs.reshape(d, d, d).transpose(0, 2, 1).reshape(d, d * d),
        spm.reshape(d * d, d),
    )  # (a,c)
    # right: T2[a,c] = sum_{r,s,e} C[a,r,s] S[e,s] M[r,e,c]
    cs2 = _contract(p, pows, exp, log, _Sp.from_dense(C).reshape(d * d, d), _Sp.from_dense(S.T))
    t2 = _contract(p, pows, exp, log, cs2.reshape(d, d * d), spm.reshape(d * d, d))
    target = _Sp.from_dense(_vmul(exp, log, counit[:, None], unit[None, :]))
    k1 = _first_diff(t1, target)
    k2 = _first_diff(t2, target)
    a1 = k1 // d if k1 >= 0 else -1
    a2 = k2 // d if k2 >= 0 else -1
    if a1 < 0 and a2 < 0:
        return np.full(2, -1, np.int64)
    if a2 < 0 or (a1 >= 0 and a1 <= a2):
        return np.array([a1, 0], np.int64)
    return np.array([a2, 1], np.int64)
