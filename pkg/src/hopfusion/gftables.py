"""Lookup-table construction for GF(p^k).

Elements are stored as integer codes in [0, q), q = p^k: the code of
sum(c_i * x^i) is sum(c_i * p^i), so prime-subfield elements keep the
same code in every extension.  All arithmetic downstream is table
lookups: EXP/LOG against a fixed generator, a Zech-logarithm table for
addition, and NEG/INV tables.

The generator is the least code whose multiplicative order is q - 1,
and the modulus (unless given) is the canonical one from
`canonical_modulus`, so every table here is a pure function of (p, k).
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import InvalidInputError

# exp/log tables are materialized densely; this caps memory at ~130 MB.
MAX_FIELD_SIZE = 1 << 22


class GFTables(NamedTuple):
    p: int
    k: int
    q: int
    zneg: int  # discrete log d with 1 + g^d = 0, or -1 when p = 2 handles it at d s.t. sum is 0
    pows: np.ndarray  # (k,) powers of p for digit (de)composition
    exp: np.ndarray  # (2q-3,) exp[i] = code of g^i, doubled so mul skips a mod
    log: np.ndarray  # (q,) log[0] = 0 is a sentinel; callers mask zeros
    zech: np.ndarray  # (q-1,) zech[d] = log(1 + g^d); zech[zneg] = 0 (sentinel)
    neg: np.ndarray  # (q,) additive inverse
    inv: np.ndarray  # (q,) multiplicative inverse; inv[0] = 0 (sentinel)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for r in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % r == 0:
            return n == r
        if r * r > n:
            return True
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomial helpers over GF(p), coefficients as plain int lists --------
# Only used while bootstrapping the tables; everything later is table-driven.


def _ptrim(f):
    while len(f) > 1 and f[-1] == 0:
        f.pop()
    if not f:
        f.append(0)
    return f


def _pmul(f, g, p):
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] = (out[i + j] + a * b) % p
    return _ptrim(out)


def _pmod(f, m, p):
    f = list(f)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(f) - 1 >= dm and any(f):
        shift = len(f) - 1 - dm
        c = f[-1] * inv_lead % p
        if c:
            for i, a in enumerate(m):
                f[shift + i] = (f[shift + i] - c * a) % p
        f.pop()
        _ptrim(f)
    return _ptrim(f)


def _pgcd(f, g, p):
    f, g = list(f), list(g)
    while g != [0]:
        f, g = g, _pmod(f, g, p)
    lead = f[-1]
    if lead != 1:
        il = pow(lead, p - 2, p)
        f = [c * il % p for c in f]
    return f


def _ppow_xq(e: int, m, p):
    """x^e mod m by square and multiply."""
    result = [1]
    base = _pmod([0, 1], m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def is_irreducible(coeffs, p: int) -> bool:
    """Monic degree-k polynomial irreducible over GF(p)?

    Uses x^(p^k) = x mod f together with gcd(x^(p^(k/r)) - x, f) = 1 for
    each prime r | k.
    """
    k = len(coeffs) - 1
    if k < 1 or coeffs[-1] != 1:
        return False
    f = list(coeffs)
    x_mod_f = _pmod([0, 1], f, p)
    xq = _ppow_xq(p**k, f, p)
    if _psub(xq, x_mod_f, p) != [0]:
        return False
    for r in prime_factors(k):
        xe = _ppow_xq(p ** (k // r), f, p)
        g = _pgcd(f, _psub(xe, x_mod_f, p), p)
        if len(g) > 1:
            return False
    return True


def _psub(f, g, p):
    n = max(len(f), len(g))
    out = [0] * n
    for i in range(n):
        a = f[i] if i < len(f) else 0
        b = g[i] if i < len(g) else 0
        out[i] = (a - b) % p
    return _ptrim(out)


def canonical_modulus(p: int, k: int) -> tuple[int, ...]:
    """Deterministic monic irreducible of degree k over GF(p).

    Low-degree coefficient vectors (c_0, ..., c_{k-1}) are scanned in
    ascending order of the integer code sum(c_i * p^i); the first
    irreducible wins.  Degree 1 is the polynomial x.
    """
    if k == 1:
        return (0, 1)
    for code in range(p**k):
        coeffs = [(code // p**i) % p for i in range(k)] + [1]
        if is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise InvalidInputError(f"no irreducible of degree {k} over GF({p})")


def _code_to_poly(code: int, p: int, k: int):
    return [(code // p**i) % p for i in range(k)]


def _poly_to_code(f, p: int) -> int:
    return sum(c * p**i for i, c in enumerate(f))


def _slow_mul(a: int, b: int, modulus, p: int, k: int) -> int:
    fa = _code_to_poly(a, p, k)
    fb = _code_to_poly(b, p, k)
    return _poly_to_code(_pmod(_pmul(fa, fb, p), list(modulus), p), p)


def _order_is_full(g: int, modulus, p: int, k: int, factors) -> bool:
    q1 = p**k - 1

    def powmod(base, e):
        r = 1
        while e:
            if e & 1:
                r = _slow_mul(r, base, modulus, p, k)
            base = _slow_mul(base, base, modulus, p, k)
            e >>= 1
        return r

    return all(powmod(g, q1 // r) != 1 for r in factors)


def build_tables(p: int, k: int, modulus=None) -> tuple[GFTables, tuple[int, ...]]:
    if not is_prime(p):
        raise InvalidInputError(f"{p} is not prime")
    if k < 1:
        raise InvalidInputError("extension degree must be >= 1")
    q = p**k
    if q > MAX_FIELD_SIZE:
        raise InvalidInputError(f"field GF({p}^{k}) exceeds the table size cap")
    if modulus is None:
        modulus = canonical_modulus(p, k)
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != k + 1 or not is_irreducible(list(modulus), p):
            raise InvalidInputError("modulus is not a monic irreducible of the right degree")

    factors = prime_factors(q - 1)
    gen = None
    for cand in range(2, q):
        if _order_is_full(cand, modulus, p, k, factors):
            gen = cand
            break
    if gen is None:  # q = 2
        gen = 1

    exp = np.zeros(max(2 * q - 3, 1), dtype=np.int64)
    log = np.zeros(q, dtype=np.int64)
    acc = 1
    for i in range(q - 1):
        exp[i] = acc
        log[acc] = i
        acc = _slow_mul(acc, gen, modulus, p, k)
    if acc != 1:
        raise InvalidInputError("generator order check failed")
    exp[q - 1 : 2 * q - 3] = exp[0 : q - 2]  # exp[i] = exp[i mod (q-1)]

    pows = p ** np.arange(k, dtype=np.int64)
    codes = np.arange(q, dtype=np.int64)
    digits = (codes[:, None] // pows[None, :]) % p
    neg = (((p - digits) % p) * pows[None, :]).sum(axis=1)

    inv = np.zeros(q, dtype=np.int64)
    nz = exp[: q - 1]
    inv[nz] = exp[(q - 1 - log[nz]) % (q - 1)]

    # Zech logarithms: zech[d] = log(1 + g^d); the d with 1 + g^d = 0 is
    # flagged by zneg and gets a masked sentinel value.
    one_plus = np.array([(v - v % p) + (v % p + 1) % p for v in exp[: q - 1].tolist()], dtype=np.int64)
    zech = np.zeros(q - 1, dtype=np.int64)
    zneg = -1
    for d, v in enumerate(one_plus.tolist()):
        if v == 0:
            zneg = d
        else:
            zech[d] = log[v]

    tables = GFTables(p=p, k=k, q=q, zneg=zneg, pows=pows, exp=exp, log=log, zech=zech, neg=neg, inv=inv)
    return tables, modulus
