"""Vectorized GF(p^k) arithmetic on int64 code arrays.

Every function takes the `GFTables` of the working field first and
numpy arrays (or python ints) of codes after; shapes broadcast like the
corresponding numpy ops.  Sentinel values in the tables (log[0],
zech[zneg]) are masked explicitly here, never exposed.

Reductions (`gf_sum`, `dot`, ...) go through base-p digit planes: summing
residue digits as ordinary integers and reducing mod p once is exact and
turns a GF reduction into a handful of dense integer passes.
"""

from __future__ import annotations

import numpy as np

from .gftables import GFTables


def _as_arr(x):
    return np.asarray(x, dtype=np.int64)


def add(t: GFTables, a, b):
    a, b = np.broadcast_arrays(_as_arr(a), _as_arr(b))
    la = t.log[a]
    lb = t.log[b]
    d = (lb - la) % (t.q - 1)
    s = t.exp[(la + t.zech[d]) % (t.q - 1)]
    s = np.where(d == t.zneg, 0, s)
    s = np.where(a == 0, b, s)
    s = np.where(b == 0, a, s)
    return s


def neg(t: GFTables, a):
    return t.neg[_as_arr(a)]


def sub(t: GFTables, a, b):
    return add(t, a, t.neg[_as_arr(b)])


def mul(t: GFTables, a, b):
    a, b = np.broadcast_arrays(_as_arr(a), _as_arr(b))
    prod = t.exp[t.log[a] + t.log[b]]
    return np.where((a == 0) | (b == 0), 0, prod)


def inv(t: GFTables, a):
    a = _as_arr(a)
    if np.any(a == 0):
        raise ZeroDivisionError("inverse of 0")
    return t.inv[a]


def gf_sum(t: GFTables, a, axis=None):
    """Exact sum of codes along `axis` (None = all axes)."""
    a = _as_arr(a)
    if axis is None:
        axis = tuple(range(a.ndim))
    if isinstance(axis, int):
        axis = (axis,)
    axis = tuple(ax % a.ndim for ax in axis)
    if t.k == 1:
        return a.sum(axis=axis) % t.p
    digits = (a[..., None] // t.pows) % t.p
    s = digits.sum(axis=axis) % t.p
    return (s * t.pows).sum(axis=-1)


def dot(t: GFTables, x, y):
    return gf_sum(t, mul(t, x, y))


def matvec(t: GFTables, M, x):
    """M (m, n) @ x (n,) -> (m,)."""
    return gf_sum(t, mul(t, M, _as_arr(x)[None, :]), axis=1)


def vecmat(t: GFTables, x, M):
    """x (m,) @ M (m, n) -> (n,)."""
    return gf_sum(t, mul(t, _as_arr(x)[:, None], M), axis=0)


def scale(t: GFTables, s, a):
    return mul(t, _as_arr(a), int(s))


def contract_bilinear(t: GFTables, T, x, y):
    """z_c = sum_{a,b} x_a y_b T[a,b,c] for a rank-3 tensor T."""
    inner = gf_sum(t, mul(t, T, _as_arr(y)[None, :, None]), axis=1)  # (a, c)
    return gf_sum(t, mul(t, inner, _as_arr(x)[:, None]), axis=0)


def apply_rank2(t: GFTables, C, x):
    """D[b,c] = sum_a x_a C[a,b,c]: a rank-2 slice of a rank-3 tensor."""
    return gf_sum(t, mul(t, C, _as_arr(x)[:, None, None]), axis=0)


def lift_int(t: GFTables, code: int, signed: bool) -> int:
    """Integer lift of a prime-subfield code.

    Unsigned lift lands in [0, p); signed lift in (-p/2, p/2].  Raises
    ValueError when the code has extension-degree digits, i.e. is not a
    prime-field element.
    """
    code = int(code)
    if code >= t.p:
        raise ValueError(f"code {code} is not in the prime subfield")
    if signed and code > t.p // 2:
        return code - t.p
    return code


def lift_int_array(t: GFTables, a, signed: bool):
    a = _as_arr(a)
    if np.any(a >= t.p):
        bad = np.argwhere(a >= t.p)[0]
        raise ValueError(f"entry at {tuple(bad)} is not in the prime subfield")
    if signed:
        return np.where(a > t.p // 2, a - t.p, a)
    return a.copy()


def embed_int_array(t: GFTables, a):
    """Codes of an integer array (entries may be negative)."""
    return np.asarray(a, dtype=np.int64) % t.p


def scatter_sum(t: GFTables, keys, a, size: int):
    """out[key] = exact GF sum of a[row] over rows with that key.

    `a` may have trailing axes; repeated keys accumulate through base-p
    digit planes, so the reduction stays exact for any multiplicity.
    """
    a = _as_arr(a)
    keys = np.asarray(keys, dtype=np.int64)
    if t.k == 1:
        out = np.zeros((size,) + a.shape[1:], dtype=np.int64)
        np.add.at(out, keys, a)
        return out % t.p
    digits = (a[..., None] // t.pows) % t.p
    out = np.zeros((size,) + a.shape[1:] + (t.k,), dtype=np.int64)
    np.add.at(out, keys, digits)
    return ((out % t.p) * t.pows).sum(axis=-1)


_RED_CACHE: dict = {}


def _reduction_digits(t: GFTables):
    """Digit rows of x^e for e < 2k-1, where x generates the digit basis."""
    key = (t.p, t.k, t.q)
    rows = _RED_CACHE.get(key)
    if rows is None:
        rows = np.zeros((2 * t.k - 1, t.k), dtype=np.int64)
        c = 1
        for e in range(2 * t.k - 1):
            rows[e] = (c // t.pows) % t.p
            c = int(mul(t, np.int64(c), np.int64(t.p)))
        _RED_CACHE[key] = rows
    return rows


def _matmul_blas(t: GFTables, A, B):
    """Digit-plane matrix product through float64 BLAS.

    Digits are below p and inner sums stay far below 2^53, so each plane
    product is exact; cross-degree planes are folded back with the
    precomputed powers of the digit generator.
    """
    p, k = t.p, t.k
    if k == 1:
        prod = A.astype(np.float64) @ B.astype(np.float64)
        return np.rint(prod).astype(np.int64) % p
    Ad = ((A[:, :, None] // t.pows) % p).astype(np.float64)
    Bd = ((B[:, :, None] // t.pows) % p).astype(np.float64)
    planes = [None] * (2 * k - 1)
    for i in range(k):
        for j in range(k):
            P = Ad[:, :, i] @ Bd[:, :, j]
            e = i + j
            planes[e] = P if planes[e] is None else planes[e] + P
    red = _reduction_digits(t)
    acc = np.zeros(planes[0].shape + (k,), dtype=np.int64)
    for e in range(2 * k - 1):
        acc += np.rint(planes[e]).astype(np.int64)[:, :, None] * red[e]
    return ((acc % p) * t.pows).sum(axis=-1)


def matmul(t: GFTables, A, B):
    """GF matrix product of (m, n) @ (n, r) code arrays.

    Large products go through exact digit-plane BLAS; small ones
    broadcast the row/column product into an (m, n, r) block and digit-
    sum over the shared axis, chunked so the temporary stays under ~8M
    entries.
    """
    A = _as_arr(A)
    B = _as_arr(B)
    m, n = A.shape
    r = B.shape[1]
    if m * n * r >= (1 << 18):
        return _matmul_blas(t, A, B)
    out = np.empty((m, r), dtype=np.int64)
    step = max(1, (8 << 20) // max(1, n * r))
    for lo in range(0, m, step):
        hi = min(m, lo + step)
        block = mul(t, A[lo:hi, :, None], B[None, :, :])
        out[lo:hi] = gf_sum(t, block, axis=1)
    return out
