"""Exact linear algebra and polynomial machinery over GF(p^k).

Matrices are int64 code arrays; polynomials are tuples of codes in
ascending degree.  Everything here is deterministic: pivoting always
takes the first usable row, factor lists are sorted by (degree,
coefficients), and randomized splitting steps draw from a caller-seeded
generator while producing a canonical final answer.
"""

from __future__ import annotations

import numpy as np

from . import gfops
from .errors import InternalInconsistency
from .field import Field

# -- row reduction ----------------------------------------------------------


def rref(F: Field, A):
    """Reduced row echelon form.  Returns (R, pivot_columns)."""
    t = F.tables
    R = np.array(A, dtype=np.int64, copy=True)
    if R.ndim != 2:
        raise ValueError("rref wants a matrix")
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if len(nz) == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            R[[r, pr]] = R[[pr, r]]
        piv = int(R[r, c])
        if piv != 1:
            R[r] = gfops.scale(t, F.inv(piv), R[r])
        others = np.flatnonzero(R[:, c])
        others = others[others != r]
        if len(others):
            fac = t.neg[R[others, c]]
            R[others] = gfops.add(t, R[others], gfops.mul(t, fac[:, None], R[r][None, :]))
        pivots.append(c)
        r += 1
    return R, tuple(pivots)


def rank(F: Field, A) -> int:
    return len(rref(F, A)[1])


def row_space(F: Field, A):
    """Canonical basis (nonzero rref rows) of the row space."""
    R, pivots = rref(F, A)
    return R[: len(pivots)].copy()


def solve(F: Field, A, b):
    """One solution x of A x = b, or None if the system is inconsistent."""
    X = solve_matrix(F, A, np.asarray(b, dtype=np.int64).reshape(-1, 1))
    return None if X is None else X[:, 0]


def solve_matrix(F: Field, A, B):
    """One solution X of A X = B, or None.  Free variables are set to 0."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    rows, cols = A.shape
    aug = np.hstack([A, B])
    R, pivots = rref(F, aug)
    pivots = list(pivots)
    if pivots and pivots[-1] >= cols:
        return None
    X = np.zeros((cols, B.shape[1]), dtype=np.int64)
    for i, c in enumerate(pivots):
        X[c] = R[i, cols:]
    return X


def inv_matrix(F: Field, A):
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    X = solve_matrix(F, A, np.eye(n, dtype=np.int64))
    if X is None or rank(F, A) != n:
        raise ZeroDivisionError("matrix is singular")
    return X


def kernel(F: Field, A):
    """Rows spanning the null space {x : A x = 0} (canonical basis)."""
    A = np.asarray(A, dtype=np.int64)
    t = F.tables
    cols = A.shape[1]
    R, pivots = rref(F, A)
    free = [c for c in range(cols) if c not in set(pivots)]
    K = np.zeros((len(free), cols), dtype=np.int64)
    for row, f in enumerate(free):
        K[row, f] = 1
        for i, c in enumerate(pivots):
            K[row, c] = t.neg[R[i, f]]
    return K


# -- polynomials (tuples of codes, ascending degree) ------------------------


def ptrim(f):
    f = tuple(int(c) for c in f)
    n = len(f)
    while n > 1 and f[n - 1] == 0:
        n -= 1
    return f[:n]


def pdeg(f) -> int:
    f = ptrim(f)
    return -1 if f == (0,) else len(f) - 1


def pconst(F: Field, f):
    return pdeg(f) <= 0


def pmonic(F: Field, f):
    f = ptrim(f)
    lead = f[-1]
    if lead == 0 or lead == 1:
        return f
    il = F.inv(lead)
    return ptrim(tuple(F.mul(c, il) for c in f))


def padd(F: Field, f, g):
    n = max(len(f), len(g))
    return ptrim(tuple(F.add(f[i] if i < len(f) else 0, g[i] if i < len(g) else 0) for i in range(n)))


def psub(F: Field, f, g):
    return padd(F, f, tuple(F.neg(c) for c in g))


def pmul(F: Field, f, g):
    f, g = ptrim(f), ptrim(g)
    if f == (0,) or g == (0,):
        return (0,)
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                if b:
                    out[i + j] = F.add(out[i + j], F.mul(a, b))
    return ptrim(tuple(out))


def pdivmod(F: Field, f, g):
    f, g = list(ptrim(f)), ptrim(g)
    if g == (0,):
        raise ZeroDivisionError("polynomial division by zero")
    dg = len(g) - 1
    il = F.inv(g[-1])
    quo = [0] * max(1, len(f) - dg)
    while len(f) - 1 >= dg and any(f):
        shift = len(f) - 1 - dg
        c = F.mul(f[-1], il)
        if c:
            quo[shift] = c
            for i, a in enumerate(g):
                f[shift + i] = F.sub(f[shift + i], F.mul(c, a))
        f.pop()
        while len(f) > 1 and f[-1] == 0:
            f.pop()
        if not f:
            f = [0]
    return ptrim(tuple(quo)), ptrim(tuple(f))


def pmod(F: Field, f, g):
    return pdivmod(F, f, g)[1]


def pgcd(F: Field, f, g):
    f, g = ptrim(f), ptrim(g)
    while g != (0,):
        f, g = g, pmod(F, f, g)
    return pmonic(F, f)


def ppowmod(F: Field, f, e: int, m):
    result = (1,)
    base = pmod(F, f, m)
    while e:
        if e & 1:
            result = pmod(F, pmul(F, result, base), m)
        base = pmod(F, pmul(F, base, base), m)
        e >>= 1
    return result


def pderiv(F: Field, f):
    f = ptrim(f)
    if len(f) == 1:
        return (0,)
    return ptrim(tuple(F.mul(f[i], i % F.p) for i in range(1, len(f))))


def peval(F: Field, f, x: int) -> int:
    acc = 0
    for c in reversed(ptrim(f)):
        acc = F.add(F.mul(acc, x), c)
    return acc


def is_squarefree(F: Field, f) -> bool:
    f = ptrim(f)
    if pdeg(f) <= 1:
        return True
    df = pderiv(F, f)
    if df == (0,):
        return False
    return pdeg(pgcd(F, f, df)) == 0


def factor_squarefree(F: Field, f, rng):
    """Monic irreducible factors of a squarefree polynomial, sorted by
    (degree, coefficients).  Raises ValueError if f is not squarefree."""
    f = pmonic(F, ptrim(f))
    if pdeg(f) < 1:
        raise ValueError("cannot factor a constant")
    if not is_squarefree(F, f):
        raise ValueError("polynomial is not squarefree")
    factors = []
    # distinct-degree stage
    x = (0, 1)
    rest = f
    frob = x
    e = 0
    stages = []
    while pdeg(rest) > 0:
        e += 1
        if 2 * e > pdeg(rest):
            stages.append((pdeg(rest), rest))
            break
        frob = ppowmod(F, frob, F.q, rest)
        g = pgcd(F, rest, psub(F, frob, x))
        if pdeg(g) > 0:
            stages.append((e, g))
            rest = pdivmod(F, rest, g)[0]
            frob = pmod(F, frob, rest)
    # equal-degree stage (Cantor-Zassenhaus; q is odd here)
    for e, prod in stages:
        work = [prod]
        while work:
            g = work.pop()
            if pdeg(g) == e:
                factors.append(g)
                continue
            while True:
                h = tuple(int(c) for c in rng.integers(0, F.q, size=pdeg(g)))
                h = ptrim(h)
                if pdeg(h) < 1:
                    continue
                w = psub(F, ppowmod(F, h, (F.q**e - 1) // 2, g), (1,))
                d = pgcd(F, w, g)
                if 0 < pdeg(d) < pdeg(g):
                    work.append(d)
                    work.append(pdivmod(F, g, d)[0])
                    break
    factors.sort(key=lambda fac: (len(fac), fac))
    return factors


def roots_of_split(F: Field, f, rng):
    """All roots of a squarefree polynomial that splits into linear
    factors, sorted by code.  Raises ValueError if any factor is not
    linear."""
    out = []
    for fac in factor_squarefree(F, f, rng):
        if pdeg(fac) != 1:
            raise ValueError(f"factor of degree {pdeg(fac)}")
        out.append(F.neg(fac[0]))
    return sorted(out)


def minimal_polynomial(F: Field, A):
    """Monic minimal polynomial of a square matrix, as a code tuple."""
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    t = F.tables
    power = np.eye(n, dtype=np.int64)
    rows = [power.ravel()]
    for _ in range(n + 1):
        power = gfops.matmul(t, power, A)
        rows.append(power.ravel())
        K = kernel(F, np.stack(rows).T)
        if len(K):
            coeffs = K[0]
            lead = coeffs[-1]
            if lead == 0:
                # kernel basis vector may have trailing zeros; take the
                # relation involving the highest power present
                last = int(np.flatnonzero(coeffs)[-1])
                raise InternalInconsistency(
                    f"dependence of degree {last} appeared after degree {len(rows) - 1}"
                )
            return pmonic(F, tuple(int(c) for c in coeffs))
    raise InternalInconsistency("no minimal polynomial found")


# -- commutative algebra splitting ------------------------------------------


def mult_by(F: Field, T, z):
    """Matrix of multiplication by coordinate vector z in the algebra
    with structure tensor T (T[a,b,c] = coeff of c in e_a e_b)."""
    return gfops.apply_rank2(F.tables, np.asarray(T, dtype=np.int64), np.asarray(z, dtype=np.int64)).T


def poly_at_element(F: Field, T, unit, coeffs, z):
    """Evaluate a polynomial at an element of the algebra (T, unit)."""
    t = F.tables
    acc = np.zeros(len(unit), dtype=np.int64)
    Lz = mult_by(F, T, z)
    for c in reversed(ptrim(coeffs)):
        acc = gfops.matvec(t, Lz, acc)
        if c:
            acc = gfops.add(t, acc, gfops.scale(t, c, unit))
    return acc


def split_commutative_algebra(F: Field, T, unit, rng, max_tries: int = 64):
    """Primitive idempotents of a commutative semisimple algebra.

    T is the (m, m, m) structure tensor, unit the coordinates of 1.
    Returns a list of (idempotent_coords, field_degree) sorted by
    coordinates; degrees larger than 1 flag components that are proper
    field extensions of F.  Raises ValueError when a minimal polynomial
    comes out non-squarefree (the algebra has nilpotents)."""
    t = F.tables
    m = len(unit)
    queue = [(np.asarray(unit, dtype=np.int64), np.eye(m, dtype=np.int64))]
    done = []
    while queue:
        eps, basis = queue.pop()
        r = len(basis)
        split_found = False
        for _ in range(max_tries):
            z = gfops.gf_sum(
                t, gfops.mul(t, rng.integers(0, F.q, size=r)[:, None], basis), axis=0
            )
            # restriction of mult-by-z to this component, in basis coords
            img = gfops.matmul(t, mult_by(F, T, z), basis.T)
            coords = solve_matrix(F, basis.T, img)
            if coords is None:
                raise InternalInconsistency("component not closed under multiplication")
            mu = minimal_polynomial(F, coords)
            factors = factor_squarefree(F, mu, rng)
            if len(factors) == 1 and pdeg(mu) == r:
                done.append((eps, r))
                split_found = True
                break
            if len(factors) > 1:
                for fac in factors:
                    co = pdivmod(F, mu, fac)[0]
                    co_mod = pmod(F, co, fac)
                    _, inv_co, _ = _pxgcd(F, co_mod, fac)
                    idem_poly = pmul(F, co, inv_co)
                    e_j = poly_at_element(F, T, eps, idem_poly, z)
                    sub = row_space(F, gfops.matmul(t, mult_by(F, T, e_j), basis.T).T)
                    queue.append((e_j, sub))
                split_found = True
                break
            # single factor of degree < r: z does not separate, retry
        if not split_found:
            raise InternalInconsistency("failed to separate commutative components")
    done.sort(key=lambda pair: tuple(int(c) for c in pair[0]))
    return done


def _pxgcd(F: Field, f, g):
    """Extended gcd: returns (d, a, b) with a f + b g = d, d monic."""
    r0, r1 = ptrim(f), ptrim(g)
    a0, a1 = (1,), (0,)
    b0, b1 = (0,), (1,)
    while r1 != (0,):
        q, r = pdivmod(F, r0, r1)
        r0, r1 = r1, r
        a0, a1 = a1, psub(F, a0, pmul(F, q, a1))
        b0, b1 = b1, psub(F, b0, pmul(F, q, b1))
    lead = r0[-1]
    if lead not in (0, 1):
        il = F.inv(lead)
        r0 = tuple(F.mul(c, il) for c in r0)
        a0 = tuple(F.mul(c, il) for c in a0)
        b0 = tuple(F.mul(c, il) for c in b0)
    return ptrim(r0), ptrim(a0), ptrim(b0)
