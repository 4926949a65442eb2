"""Structure of a semisimple Hopf algebra: integrals, central
idempotents, irreducible characters, and the distinguished elements
controlling the square of the antipode.

Everything works with exact GF(p^k) codes.  Conventions that the
literature leaves ambiguous (which tensor slot the dual integral eats,
square-root branches) are resolved by deterministic recorded rules and
cross-validated against the identities they are supposed to satisfy.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

import numpy as np

from . import gfops, linalg
from .errors import (
    DegenerateIntegralSpace,
    InternalInconsistency,
    NonInvertibleU,
    NonResidue,
    NonSquareBlockDim,
    NotSemisimple,
    SplittingFieldTooSmall,
)
from .hopf import HopfAlgebra
from .report import CheckResult

# -- integrals ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Integrals:
    Lambda: np.ndarray  # two-sided integral, first nonzero coord = 1
    eps_Lambda: int  # counit of Lambda (nonzero here: Maschke)
    lam: np.ndarray  # dual integral, normalized to lam(Lambda) = 1
    convention: str  # which slot lam eats: "first-slot" | "second-slot"


def _lambda_kernel(H: HopfAlgebra, slot: str) -> np.ndarray:
    """Solution space of the dual-integral condition in the given slot."""
    F, t, d = H.field, H.field.tables, H.dim
    C = H.comult
    delta = np.zeros((d, d, d), dtype=np.int64)
    delta[np.arange(d), :, np.arange(d)] = H.unit
    if slot == "first-slot":
        mat = gfops.sub(t, C.transpose(0, 2, 1), delta).reshape(d * d, d)
    else:
        mat = gfops.sub(t, C, delta).reshape(d * d, d)
    return linalg.kernel(F, mat)


def compute_integrals(H: HopfAlgebra, slot: str = "first-slot") -> Integrals:
    F, t, d = H.field, H.field.tables, H.dim
    M = H.mult
    eye = np.eye(d, dtype=np.int64)
    blocks = []
    for a in range(d):
        La = np.ascontiguousarray(M[a].T)  # left mult by e_a
        blocks.append(gfops.sub(t, La, gfops.scale(t, int(H.counit[a]), eye)))
    K = linalg.kernel(F, np.vstack(blocks))
    if len(K) != 1:
        raise DegenerateIntegralSpace(f"integral space has dimension {len(K)}")
    Lam = K[0]
    eps_Lam = H.counit_of(Lam)
    if eps_Lam == 0:
        raise NotSemisimple("counit of the integral is 0")
    # semisimple => unimodular: the left integral must also be right
    right = gfops.gf_sum(t, gfops.mul(t, M, Lam[:, None, None]), axis=0)
    if not np.array_equal(right, gfops.mul(t, H.counit[:, None], Lam[None, :])):
        raise InternalInconsistency("left integral is not two-sided despite eps(Lambda) != 0")
    lamK = _lambda_kernel(H, slot)
    if len(lamK) != 1:
        raise DegenerateIntegralSpace(f"dual integral space has dimension {len(lamK)}")
    pairing = int(gfops.dot(t, lamK[0], Lam))
    if pairing == 0:
        raise NotSemisimple("integral pairing lam(Lambda) is degenerate")
    lam = gfops.scale(t, F.inv(pairing), lamK[0])
    return Integrals(Lam, eps_Lam, lam, slot)


# -- block decomposition ------------------------------------------------------


@dataclass(frozen=True, eq=False)
class BlockData:
    idempotents: np.ndarray  # (m, d) central primitive idempotents, e_0 trivial
    dims: tuple  # d_i as python ints
    chars: np.ndarray  # (m, d) irreducible characters chi_i(e_a)
    dualperm: tuple  # i -> i* with chi_{i*} = chi_i o S

    @property
    def m(self) -> int:
        return len(self.dims)


def compute_blocks(H: HopfAlgebra, rng) -> BlockData:
    F, t, d = H.field, H.field.tables, H.dim
    M = H.mult
    left = M.transpose(1, 2, 0)  # [b,c,a] = M[a,b,c]
    right = M.transpose(0, 2, 1)  # [b,c,a] = M[b,a,c]
    center = linalg.row_space(F, linalg.kernel(F, gfops.sub(t, left, right).reshape(d * d, d)))
    m = len(center)
    prods = np.zeros((d, m * m), dtype=np.int64)
    for i in range(m):
        for j in range(m):
            prods[:, i * m + j] = H.multiply(center[i], center[j])
    coords = linalg.solve_matrix(F, center.T, prods)
    unit_coords = linalg.solve(F, center.T, H.unit)
    if coords is None or unit_coords is None:
        raise InternalInconsistency("center is not closed under multiplication")
    T = np.ascontiguousarray(coords.T.reshape(m, m, m))
    try:
        comps = linalg.split_commutative_algebra(F, T, unit_coords, rng)
    except ValueError as exc:
        raise NotSemisimple(f"center is not etale: {exc}") from exc
    degrees = sorted({deg for _, deg in comps if deg > 1})
    if degrees:
        factor = 1
        for deg in degrees:
            factor = factor * deg // np.gcd(factor, deg)
        raise SplittingFieldTooSmall(int(factor), f"character fields of degrees {degrees}")

    idems = np.stack([gfops.matvec(t, center.T, c) for c, _ in comps])
    # invariants: orthogonal idempotents summing to 1
    total = np.zeros(d, dtype=np.int64)
    for i in range(len(idems)):
        total = gfops.add(t, total, idems[i])
        for j in range(len(idems)):
            prod = H.multiply(idems[i], idems[j])
            want = idems[i] if i == j else np.zeros(d, dtype=np.int64)
            if not np.array_equal(prod, want):
                raise InternalInconsistency(f"central idempotents {i},{j} not orthogonal")
    if not np.array_equal(total, H.unit):
        raise InternalInconsistency("central idempotents do not sum to 1")

    dims = []
    chars = []
    for i in range(len(idems)):
        R = H.right_mult_matrix(idems[i])
        r = linalg.rank(F, R)
        di = isqrt(r)
        if di * di != r:
            raise NonSquareBlockDim(f"block {i} has dimension {r}")
        if di % F.p == 0:
            raise InternalInconsistency(f"block dimension {di} vanishes mod p")
        dims.append(di)
        traces = gfops.gf_sum(t, gfops.mul(t, M, R[None, :, :]), axis=(1, 2))
        chars.append(gfops.scale(t, F.inv(di % F.p), traces))
    chars = np.stack(chars)

    trivial = [i for i in range(len(idems)) if np.array_equal(chars[i], H.counit)]
    if len(trivial) != 1:
        raise InternalInconsistency(f"{len(trivial)} blocks carry the trivial character")
    order = [trivial[0]] + sorted(
        (i for i in range(len(idems)) if i != trivial[0]),
        key=lambda i: (dims[i], tuple(int(c) for c in chars[i])),
    )
    idems = idems[order]
    dims = tuple(dims[i] for i in order)
    chars = chars[order]

    if linalg.rank(F, chars) != len(dims):
        raise InternalInconsistency("irreducible characters are linearly dependent")

    chi_S = gfops.matmul(t, chars, H.antipode)  # row i: chi_i o S
    rows = {tuple(int(c) for c in chars[i]): i for i in range(len(dims))}
    dualperm = []
    for i in range(len(dims)):
        j = rows.get(tuple(int(c) for c in chi_S[i]))
        if j is None:
            raise InternalInconsistency(f"chi_{i} o S is not an irreducible character")
        dualperm.append(j)
    for i, j in enumerate(dualperm):
        if dualperm[j] != i or dims[i] != dims[j]:
            raise InternalInconsistency("dual permutation is not a dimension-preserving involution")
        if not np.array_equal(H.apply_antipode(idems[i]), idems[j]):
            raise InternalInconsistency(f"S(e_{i}) is not e_{j}")
    return BlockData(idems, dims, chars, tuple(dualperm))


# -- the element u -------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class UData:
    u: np.ndarray
    u_inv: np.ndarray
    chi_reg: np.ndarray  # regular character: trace of left multiplication


def compute_u(H: HopfAlgebra, ints: Integrals) -> UData:
    F, t, d = H.field, H.field.tables, H.dim
    DL = H.comultiply(ints.Lambda)
    B = gfops.matmul(t, H.antipode, DL.T)  # B[x,r] = sum_s S[x,s] DL[r,s]
    u = gfops.gf_sum(t, gfops.mul(t, H.mult, B[:, :, None]), axis=(0, 1))
    u_inv = linalg.solve(F, H.left_mult_matrix(u), H.unit)
    if u_inv is None:
        raise NonInvertibleU("u has no right inverse")
    if not np.array_equal(H.multiply(u_inv, u), H.unit):
        raise NonInvertibleU("right inverse of u is not two-sided")
    chi_reg = gfops.gf_sum(t, H.mult[:, np.arange(d), np.arange(d)], axis=1)
    return UData(u, u_inv, chi_reg)


def resolve_lambda_convention(H: HopfAlgebra, ints: Integrals, blocks: BlockData, u: UData):
    """Cross-validate the dual-integral slot.

    Two independent fingerprints must agree: lam(e_i) = d_i chi_i(1/u)
    per block, and the pullback of lam along left multiplication by u
    must equal the regular character.  If the primary slot fails either,
    the flipped slot is tried once.
    """
    t = H.field.tables

    def fits(cand: Integrals) -> bool:
        for i in range(blocks.m):
            lhs = gfops.dot(t, cand.lam, blocks.idempotents[i])
            rhs = H.field.mul(blocks.dims[i] % H.field.p, int(gfops.dot(t, blocks.chars[i], u.u_inv)))
            if int(lhs) != rhs:
                return False
        pulled = gfops.vecmat(t, cand.lam, H.left_mult_matrix(u.u))
        return np.array_equal(pulled, u.chi_reg)

    if fits(ints):
        return ints, "primary"
    flipped = compute_integrals(H, "second-slot")
    if fits(flipped):
        return flipped, "flipped"
    return ints, "unresolved"


def check_u_properties(H: HopfAlgebra, ints: Integrals, blocks: BlockData, u: UData):
    F, t, d = H.field, H.field.tables, H.dim
    out = []
    DL = H.comultiply(ints.Lambda)

    # (1) u agrees with pairing the regular character into the first leg
    w = gfops.matvec(t, H.antipode, gfops.vecmat(t, u.chi_reg, DL))
    out.append(
        CheckResult("Prop3.20.1", bool(np.array_equal(w, u.u)), _vecdiff(w, u.u))
    )

    # (2) contracting 1/u between the two legs of the integral gives 1
    P = gfops.matmul(t, H.left_mult_matrix(u.u_inv), H.antipode)
    G = gfops.matmul(t, P, DL.T)  # G[y,r] = sum_s P[y,s] DL[r,s]
    got = gfops.gf_sum(t, gfops.mul(t, H.mult, G.T[:, :, None]), axis=(0, 1))
    out.append(CheckResult("Prop3.20.2", bool(np.array_equal(got, H.unit)), _vecdiff(got, H.unit)))

    # (3) lam(e_i) = d_i chi_i(1/u)
    bad = []
    for i in range(blocks.m):
        lhs = int(gfops.dot(t, ints.lam, blocks.idempotents[i]))
        rhs = F.mul(blocks.dims[i] % F.p, int(gfops.dot(t, blocks.chars[i], u.u_inv)))
        if lhs != rhs:
            bad.append(f"i={i} lam(e_i)={lhs} d_i*chi_i(1/u)={rhs}")
    out.append(CheckResult("Prop3.20.3", not bad, "; ".join(bad) or None))

    # (4) u S(u) = S(u) u = eps(Lambda) * sum_i (d_i^2 / lam(e_i)) e_i
    Su = H.apply_antipode(u.u)
    lhs1 = H.multiply(u.u, Su)
    lhs2 = H.multiply(Su, u.u)
    rhs = np.zeros(d, dtype=np.int64)
    ok4 = True
    note4 = None
    for i in range(blocks.m):
        lam_ei = int(gfops.dot(t, ints.lam, blocks.idempotents[i]))
        if lam_ei == 0:
            ok4, note4 = False, f"lam(e_{i}) = 0"
            break
        coef = F.mul(F.pow(blocks.dims[i] % F.p, 2), F.inv(lam_ei))
        rhs = gfops.add(t, rhs, gfops.scale(t, coef, blocks.idempotents[i]))
    if ok4:
        rhs = gfops.scale(t, ints.eps_Lambda, rhs)
        ok4 = bool(np.array_equal(lhs1, rhs) and np.array_equal(lhs2, rhs))
        note4 = _vecdiff(lhs1, rhs) or _vecdiff(lhs2, rhs)
    out.append(CheckResult("Prop3.20.4", ok4, note4))

    # (5) S(1/u) u = u S(1/u), a group-like element
    Suinv = H.apply_antipode(u.u_inv)
    g1 = H.multiply(Suinv, u.u)
    g2 = H.multiply(u.u, Suinv)
    ok5 = bool(np.array_equal(g1, g2))
    note5 = None if ok5 else "S(1/u)u != uS(1/u)"
    if ok5:
        grouplike = np.array_equal(
            H.comultiply(g1), gfops.mul(t, g1[:, None], g1[None, :])
        ) and H.counit_of(g1) == 1
        ok5 = bool(grouplike)
        note5 = None if ok5 else "S(1/u)u is not group-like"
    out.append(CheckResult("Prop3.20.5", ok5, note5))

    # the square of the antipode is conjugation by u
    S2 = H.antipode_power(2)
    conj = gfops.matmul(t, H.left_mult_matrix(u.u), H.right_mult_matrix(u.u_inv))
    out.append(
        CheckResult("U.Conjugation", bool(np.array_equal(S2, conj)), _vecdiff(S2, conj))
    )
    return out


# -- the element v -------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class VData:
    v: np.ndarray
    v_inv: np.ndarray
    s_Lambda: int  # recorded branch of sqrt(eps(Lambda))
    s: tuple  # recorded branch of sqrt(lam(e_i)) per block
    branch_rules: tuple  # how each branch was picked
    lam_values: tuple  # lam(e_i)
    u_scalars: tuple  # chi_i(u)/d_i


def compute_v(H: HopfAlgebra, ints: Integrals, blocks: BlockData, u: UData) -> VData:
    F, t, d = H.field, H.field.tables, H.dim
    s_Lam = F.sqrt(ints.eps_Lambda)
    if s_Lam is None:
        raise NonResidue("eps(Lambda) is not a square in the working field")
    lam_values = []
    u_scalars = []
    s = []
    rules = []
    for i in range(blocks.m):
        lam_ei = int(gfops.dot(t, ints.lam, blocks.idempotents[i]))
        if lam_ei == 0:
            raise InternalInconsistency(f"lam(e_{i}) = 0")
        lam_values.append(lam_ei)
        di = blocks.dims[i] % F.p
        ui = F.mul(int(gfops.dot(t, blocks.chars[i], u.u)), F.inv(di))
        u_scalars.append(ui)
        root = F.sqrt(lam_ei)
        if root is None:
            raise NonResidue(f"lam(e_{i}) is not a square in the working field")
        preferred = F.mul(di, F.mul(s_Lam, F.inv(ui))) if ui != 0 else None
        if preferred is not None and preferred in (root, F.neg(root)):
            s.append(preferred)
            rules.append("u-matched")
        else:
            s.append(root)
            rules.append("lex-least")
    for i in range(blocks.m):
        if lam_values[i] != lam_values[blocks.dualperm[i]]:
            raise InternalInconsistency(
                f"lam(e_{i}) != lam(e_{blocks.dualperm[i]}) on dual blocks")
    v = np.zeros(d, dtype=np.int64)
    inv_sL = F.inv(s_Lam)
    for i in range(blocks.m):
        coef = F.mul(inv_sL, F.mul(s[i], F.inv(blocks.dims[i] % F.p)))
        v = gfops.add(t, v, gfops.scale(t, coef, H.multiply(u.u, blocks.idempotents[i])))
    v_inv = linalg.solve(F, H.left_mult_matrix(v), H.unit)
    if v_inv is None or not np.array_equal(H.multiply(v_inv, v), H.unit):
        raise InternalInconsistency("v is not invertible")
    return VData(v, v_inv, int(s_Lam), tuple(s), tuple(rules), tuple(lam_values), tuple(u_scalars))


def element_power(H: HopfAlgebra, x: np.ndarray, e: int) -> np.ndarray:
    """x^e in H by binary powering (e >= 0)."""
    result = H.unit.copy()
    base = x
    while e:
        if e & 1:
            result = H.multiply(result, base)
        base = H.multiply(base, base)
        e >>= 1
    return result


def check_v_properties(H: HopfAlgebra, u: UData, vd: VData, n: int):
    F, t = H.field, H.field.tables
    out = []
    eps_v = H.counit_of(vd.v)
    out.append(CheckResult("Prop2.1", eps_v == 1, None if eps_v == 1 else f"eps(v)={eps_v}"))

    S2 = H.antipode_power(2)
    conj = gfops.matmul(t, H.left_mult_matrix(vd.v), H.right_mult_matrix(vd.v_inv))
    out.append(CheckResult("Prop2.2", bool(np.array_equal(S2, conj)), _vecdiff(S2, conj)))

    v2 = H.multiply(vd.v, vd.v)
    uSuinv = H.multiply(u.u, H.apply_antipode(u.u_inv))
    out.append(CheckResult("Prop2.3", bool(np.array_equal(v2, uSuinv)), _vecdiff(v2, uSuinv)))

    vn = element_power(H, vd.v, n)
    out.append(CheckResult("Prop2.4", bool(np.array_equal(vn, H.unit)), _vecdiff(vn, H.unit)))

    Sv = H.apply_antipode(vd.v)
    out.append(
        CheckResult("Prop2.5", bool(np.array_equal(Sv, vd.v_inv)), _vecdiff(Sv, vd.v_inv))
    )

    v_is_one = bool(np.array_equal(vd.v, H.unit))
    s2_is_id = H.is_involutory()
    ok6 = v_is_one == s2_is_id
    out.append(
        CheckResult("Prop2.6", ok6, None if ok6 else f"v==1 is {v_is_one} but S^2==id is {s2_is_id}")
    )
    return out


def _vecdiff(got, want) -> str | None:
    got = np.asarray(got)
    want = np.asarray(want)
    bad = np.argwhere(got != want)
    if len(bad) == 0:
        return None
    idx = tuple(int(x) for x in bad[0])
    return f"first mismatch at {idx}: {got[tuple(bad[0])]} != {want[tuple(bad[0])]}"
