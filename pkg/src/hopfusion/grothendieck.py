"""Product tables on characters, their decomposition, and quantum dims.

Products of characters of a split semisimple algebra are again
characters, so each product expands uniquely in the character basis.
The expansion is solved exactly over the working field, then lifted
into the integers through the prime subfield:

  N[i,j,k]  multiplicity of chi_k in chi_i chi_j under the plain
            convolution product (chi (x) chi') o Delta;
  L[i,j,k]  the same for the pivot-twisted product, where Delta(h) is
            replaced by Delta(h) Delta(1/v) (v (x) v) -- these may be
            negative;
  T         the table of the full twisted product algebra on mn labels.

Integer tensors are contracted in float64 where convenient; entries and
inner dimensions keep every partial sum far below 2^53, so that path is
exact.  All field arithmetic is table-driven and exact throughout.
"""

from dataclasses import dataclass

import numpy as np

from . import gfops, linalg
from .errors import InternalInconsistency, NonIntegralCoefficient
from .report import CheckResult

__all__ = [
    "FusionData",
    "solve_in_basis",
    "twisted_comult",
    "h_level_tables",
    "smash_table",
    "theta_vectors",
    "compute_fusion",
    "check_fusion_stage",
    "check_theorem_stage",
    "check_qdim_stage",
]


@dataclass(frozen=True, eq=False)
class FusionData:
    """Integer product tables and the cyclic-grading idempotents.

    N, L:   (m, m, m) tables on the base characters (plain / twisted).
    T:      (mn, mn, mn) table of the full twisted product algebra.
    ctable: (2m, 2m, 2m) table of the subring spanned by labels with
            j in {0, n/2}, basis flattened as (i, delta) -> 2i + delta.
    theta:  (n, mn) field coordinates of the grading idempotents
            theta_l = (1/n) sum_t psi^{-lt} chi_{0t}.
    """

    N: np.ndarray
    L: np.ndarray
    T: np.ndarray
    ctable: np.ndarray
    theta: np.ndarray


def solve_in_basis(F, X, P):
    """Coefficients C with C @ X = P, for a basis matrix X of full row rank."""
    t = F.tables
    _, piv = linalg.rref(F, X)
    if len(piv) != X.shape[0]:
        raise InternalInconsistency("expansion basis has dependent rows")
    piv = list(piv)
    C = gfops.matmul(t, P[:, piv], linalg.inv_matrix(F, X[:, piv]))
    if not np.array_equal(gfops.matmul(t, C, X), P):
        raise InternalInconsistency("basis expansion does not reproduce products")
    return C


def _lift(t, a, signed, what):
    try:
        return gfops.lift_int_array(t, a, signed)
    except ValueError as exc:
        raise NonIntegralCoefficient(f"{what}: {exc}") from None


def _char_products(t, C, chars):
    """P[i,j,x] = sum_{r,s} C[x,r,s] chars[i,r] chars[j,s]."""
    E1 = gfops.gf_sum(
        t, gfops.mul(t, C[None, :, :, :], chars[:, None, :, None]), axis=2
    )  # (i, x, s)
    return gfops.gf_sum(
        t, gfops.mul(t, E1[:, None, :, :], chars[None, :, None, :]), axis=3
    )  # (i, j, x)


def twisted_comult(H, vd):
    """Tensor Ct with (chi (x) chi')(Delta(h) Delta(1/v) (v (x) v)) =
    sum_{r,s} Ct[x,r,s] chi(e_r) chi'(e_s)."""
    t, d = H.field.tables, H.dim
    Rv = H.right_mult_matrix(vd.v)
    W = H.comultiply(vd.v_inv)
    Theta = gfops.matmul(t, gfops.matmul(t, Rv, W), Rv.T)
    # A[r',r,b] = sum_a Theta[a,b] mult[r',a,r]
    A = gfops.matmul(
        t, H.mult.transpose(0, 2, 1).reshape(d * d, d), Theta
    ).reshape(d, d, d)
    # J[(r',s'),(r,s)] = sum_b A[r',r,b] mult[s',b,s]
    J = gfops.matmul(
        t, A.reshape(d * d, d), H.mult.transpose(1, 0, 2).reshape(d, d * d)
    )
    J = J.reshape(d, d, d, d).transpose(0, 2, 1, 3).reshape(d * d, d * d)
    return gfops.matmul(t, H.comult.reshape(d, d * d), J).reshape(d, d, d)


def h_level_tables(H, blocks, vd):
    """The integer tables N (plain) and L (pivot-twisted) on base characters."""
    F, t = H.field, H.field.tables
    m = blocks.m
    P = _char_products(t, H.comult, blocks.chars)
    Cn = solve_in_basis(F, blocks.chars, P.reshape(m * m, H.dim))
    N = _lift(t, Cn, False, "plain multiplicities").reshape(m, m, m)
    Pt = _char_products(t, twisted_comult(H, vd), blocks.chars)
    Cl = solve_in_basis(F, blocks.chars, Pt.reshape(m * m, H.dim))
    L = _lift(t, Cl, True, "twisted multiplicities").reshape(m, m, m)
    return N, L


def smash_table(H, smash, simples):
    """Integer product table of the twisted product algebra's characters."""
    F, t = H.field, H.field.tables
    X = simples.chars
    mn, ds = X.shape
    idx = np.argwhere(smash.comult != 0)
    x_e, r_e, s_e = idx[:, 0], idx[:, 1], idx[:, 2]
    vals = smash.comult[x_e, r_e, s_e]
    A = gfops.mul(t, X[:, r_e], vals[None, :])
    B = X[:, s_e]
    P = np.zeros((mn, mn, ds), dtype=np.int64)
    for x in range(ds):
        sel = np.flatnonzero(x_e == x)
        if len(sel):
            P[:, :, x] = gfops.matmul(t, A[:, sel], B[:, sel].T)
    C = solve_in_basis(F, X, P.reshape(mn * mn, ds))
    return _lift(t, C, False, "twisted-algebra multiplicities").reshape(mn, mn, mn)


def theta_vectors(F, m, n, psi):
    """Coordinates of theta_l = (1/n) sum_t psi^{-lt} chi_{0t}."""
    inv_n = F.inv(n % F.p)
    theta = np.zeros((n, m * n), dtype=np.int64)
    for l in range(n):
        for tt in range(n):
            theta[l, tt] = F.mul(F.pow(psi, (-l * tt) % n), inv_n)
    return theta


def compute_fusion(H, blocks, vd, smash, simples) -> FusionData:
    """All product tables plus the grading idempotents."""
    F = H.field
    m, n = blocks.m, 2 * H.dim
    N, L = h_level_tables(H, blocks, vd)
    T = smash_table(H, smash, simples)
    csel = np.arange(m)[:, None] * n + np.array([0, n // 2])[None, :]
    csel = csel.reshape(-1)
    ctable = T[np.ix_(csel, csel)][:, :, csel].copy()
    theta = theta_vectors(F, m, n, simples.psi)
    return FusionData(N=N, L=L, T=T, ctable=ctable, theta=theta)


def _assoc_witness(T):
    """First associativity defect of an integer structure tensor, or None."""
    mn = T.shape[0]
    hi = float(np.abs(T).max())
    if hi * hi * mn >= 2.0**53:
        raise InternalInconsistency("entries too large for exact contraction")
    Tf = T.astype(np.float64)
    flat_r = Tf.reshape(mn, mn * mn)
    flat_l = Tf.reshape(mn * mn, mn)
    for i in range(mn):
        lhs = (Tf[i] @ flat_r).reshape(mn, mn, mn)
        rhs = (flat_l @ Tf[i]).reshape(mn, mn, mn)
        if not np.array_equal(lhs, rhs):
            j, l, w = np.argwhere(lhs != rhs)[0]
            return f"(x_{i} x_{j}) x_{l} vs x_{i} (x_{j} x_{l}) at {w}"
    return None


def _unital_witness(T):
    mn = T.shape[0]
    eye = np.eye(mn, dtype=np.int64)
    if not np.array_equal(T[0], eye):
        return "label 0 is not a left unit"
    if not np.array_equal(T[:, 0], eye):
        return "label 0 is not a right unit"
    return None


def check_fusion_stage(H, blocks, vd, simples, fusion):
    """Integer-table checks: structure of N, L, and the full table T."""
    F = H.field
    d = H.dim
    m, n = blocks.m, 2 * d
    n2 = n // 2
    mn = m * n
    N, L, T = fusion.N, fusion.L, fusion.T
    out = []

    # --- NTable -----------------------------------------------------------
    notes = []
    w = _unital_witness(N)
    if w:
        notes.append(w)
    w = _assoc_witness(N)
    if w:
        notes.append(w)
    dims = np.array(blocks.dims, dtype=np.int64)
    if not np.array_equal(np.einsum("ijk,k->ij", N, dims), np.outer(dims, dims)):
        notes.append("dimension count fails")
    frob = np.zeros((m, m), dtype=np.int64)
    frob[np.arange(m), list(blocks.dualperm)] = 1
    if not np.array_equal(N[:, :, 0], frob):
        notes.append("trivial-label multiplicity is not the dual pairing")
    out.append(CheckResult("NTable", not notes, "; ".join(notes) or None))

    # --- LTable -----------------------------------------------------------
    notes = []
    w = _unital_witness(L)
    if w:
        notes.append(w)
    w = _assoc_witness(L)
    if w:
        notes.append(w)
    out.append(CheckResult("LTable", not notes, "; ".join(notes) or None))

    # --- Remark6: involutory => twisted table equals the plain one --------
    if H.is_involutory():
        ok = np.array_equal(L, N)
        out.append(CheckResult(
            "Remark6", ok, None if ok else "L differs from N on an involutory input"))
    else:
        out.append(CheckResult("Remark6", True, "inapplicable: S^2 != id"))

    # --- Remark9: parity and bounds --------------------------------------
    notes = []
    if ((N + L) % 2).any():
        notes.append("N+L has an odd entry")
    if (L > N).any():
        notes.append("L exceeds N")
    if (L < -N).any():
        notes.append("L drops below -N")
    out.append(CheckResult("Remark9", not notes, "; ".join(notes) or None))

    # --- SmashTable --------------------------------------------------------
    notes = []
    w = _unital_witness(T)
    if w:
        notes.append(w)
    w = _assoc_witness(T)
    if w:
        notes.append(w)
    dd = np.array(simples.dims, dtype=np.int64)
    if not np.array_equal(np.einsum("ijk,k->ij", T, dd), np.outer(dd, dd)):
        notes.append("dimension count fails")
    dual_lab = np.empty(mn, dtype=np.int64)
    for i in range(m):
        for j in range(n):
            dual_lab[i * n + j] = blocks.dualperm[i] * n + ((n - j) % n)
    frob = np.zeros((mn, mn), dtype=np.int64)
    frob[np.arange(mn), dual_lab] = 1
    if not np.array_equal(T[:, :, 0], frob):
        notes.append("trivial-label multiplicity is not the dual pairing")
    out.append(CheckResult("SmashTable", not notes, "; ".join(notes) or None))

    # --- Prop1.1: chi_ij = chi_i0 * chi_0j = chi_0j * chi_i0 ---------------
    ok11 = True
    note11 = None
    for i in range(m):
        for j in range(n):
            want = np.zeros(mn, dtype=np.int64)
            want[i * n + j] = 1
            if not (np.array_equal(T[i * n, j], want)
                    and np.array_equal(T[j, i * n], want)):
                ok11 = False
                note11 = f"label ({i},{j}) does not factor"
                break
        if not ok11:
            break
    out.append(CheckResult("Prop1.1", ok11, note11))

    # --- Prop1.2 / Prop1.3: graded support and exact coefficients ----------
    T6 = T.reshape(m, n, m, n, m, n)
    ok12, note12 = True, None
    ok13, note13 = True, None
    NpL = N + L
    NmL = N - L
    for s in range(n):
        for tt in range(n):
            blockT = T6[:, s, :, tt]
            wp, wm = (s + tt) % n, (s + tt + n2) % n
            if ok12:
                if not np.array_equal(blockT.sum(axis=3), N):
                    ok12 = False
                    note12 = f"grading marginal differs from N at (s,t)=({s},{tt})"
                else:
                    mask = np.ones(n, dtype=bool)
                    mask[[wp, wm]] = False
                    if blockT[:, :, :, mask].any():
                        ok12 = False
                        note12 = f"off-grade support at (s,t)=({s},{tt})"
            if ok13:
                if not (np.array_equal(2 * blockT[:, :, :, wp], NpL)
                        and np.array_equal(2 * blockT[:, :, :, wm], NmL)):
                    ok13 = False
                    note13 = f"graded coefficients differ at (s,t)=({s},{tt})"
    out.append(CheckResult("Prop1.2", ok12, note12))
    out.append(CheckResult("Prop1.3", ok13, note13))
    return out


def check_theorem_stage(H, blocks, simples, fusion):
    """Decomposition of the table algebra along the grading idempotents."""
    F, t = H.field, H.field.tables
    m, n = blocks.m, 2 * H.dim
    n2 = n // 2
    mn = m * n
    N, L, T, theta = fusion.N, fusion.L, fusion.T, fusion.theta
    Tf = gfops.embed_int_array(t, T)
    psi = simples.psi
    out = []

    # Right-multiplication matrices by theta_l: Mr[l][u] = x_u * theta_l
    # (and the left-handed versions), batched through one matrix product.
    Mr = gfops.matmul(
        t, theta, Tf.transpose(1, 0, 2).reshape(mn, mn * mn)
    ).reshape(n, mn, mn)
    Ml = gfops.matmul(t, theta, Tf.reshape(mn, mn * mn)).reshape(n, mn, mn)

    # --- Theta -------------------------------------------------------------
    notes = []
    unit_vec = np.zeros(mn, dtype=np.int64)
    unit_vec[0] = 1
    total = gfops.gf_sum(t, theta, axis=0)
    if not np.array_equal(total, unit_vec):
        notes.append("idempotents do not sum to the unit label")
    for l in range(n):
        if not np.array_equal(Mr[l], Ml[l]):
            notes.append(f"theta_{l} is not central")
            break
    for l in range(n):
        for l2 in range(n):
            prod = gfops.vecmat(t, theta[l], Mr[l2])
            want = theta[l] if l == l2 else np.zeros(mn, dtype=np.int64)
            if not np.array_equal(prod, want):
                notes.append(f"theta_{l} theta_{l2} is wrong")
                break
        else:
            continue
        break
    # the grading acts by roots of unity: chi_0j * theta_l = psi^{jl} theta_l
    # and chi_ij * theta_l = psi^{jl} (chi_i0 * theta_l)
    for l in range(n):
        for j in range(n):
            scal = F.pow(psi, (j * l) % n)
            if not np.array_equal(Ml[l][j], gfops.scale(t, scal, theta[l])):
                notes.append(f"chi_0{j} does not scale theta_{l}")
                break
            rows = Mr[l][np.arange(m) * n + j]
            want = gfops.scale(t, scal, Mr[l][np.arange(m) * n])
            if not np.array_equal(rows, want):
                notes.append(f"grading action fails on theta_{l} at j={j}")
                break
        else:
            continue
        break
    out.append(CheckResult("Theta", not notes, "; ".join(notes) or None))

    # --- Thm1.1 (even corners vs N) / Thm1.2 (odd corners vs L) -----------
    img = np.zeros((n, m, mn), dtype=np.int64)
    for l in range(n):
        img[l] = Mr[l][np.arange(m) * n]
    even_notes, odd_notes = [], []
    for l in range(n):
        notes_l = even_notes if l % 2 == 0 else odd_notes
        table = N if l % 2 == 0 else L
        Bl = img[l]
        if linalg.rank(F, Bl) != m:
            notes_l.append(f"corner {l}: rank below {m}")
            continue
        # products of images, routed through the corner projection
        rows = gfops.embed_int_array(t, table.reshape(m * m, m))
        want = gfops.matmul(t, rows, Bl).reshape(m, m, mn)
        got = np.zeros_like(want)
        for i in range(m):
            got[i] = gfops.matmul(
                t, gfops.embed_int_array(t, T[i * n, np.arange(m) * n]), Mr[l]
            )
        if not np.array_equal(got, want):
            notes_l.append(f"corner {l}: products disagree with the table")
        sign = F.pow(psi, (n2 * l) % n)  # +1 for even l, -1 for odd l
        half = Mr[l][np.arange(m) * n + n2]
        if not np.array_equal(half, gfops.scale(t, sign, Bl)):
            notes_l.append(f"corner {l}: half-twist sign is wrong")
    out.append(CheckResult("Thm1.1", not even_notes, "; ".join(even_notes) or None))
    out.append(CheckResult("Thm1.2", not odd_notes, "; ".join(odd_notes) or None))

    # --- Thm1.3: the corners assemble the whole algebra -------------------
    notes = []
    stacked = img.reshape(n * m, mn)
    if linalg.rank(F, stacked) != mn:
        notes.append("corner images do not span")
    for l in range(n):
        for l2 in range(n):
            if l == l2:
                continue
            cross = gfops.matmul(t, img[l2], Mr[l])
            if cross.any():
                notes.append(f"corners {l2} and {l} are not orthogonal")
                break
        else:
            continue
        break
    out.append(CheckResult("Thm1.3", not notes, "; ".join(notes) or None))

    # --- C.Closure ----------------------------------------------------------
    notes = []
    csel = (np.arange(m)[:, None] * n + np.array([0, n2])[None, :]).reshape(-1)
    sub = T[np.ix_(csel, csel)]
    mask = np.ones(mn, dtype=bool)
    mask[csel] = False
    if sub[:, :, mask].any():
        notes.append("products leave the even/half-twist subring")
    ctable = fusion.ctable
    NpL, NmL = N + L, N - L
    A00 = ctable[0::2, 0::2]
    A11 = ctable[1::2, 1::2]
    A01 = ctable[0::2, 1::2]
    A10 = ctable[1::2, 0::2]
    if not np.array_equal(A00, A11):
        notes.append("(i,0)(j,0) differs from (i,n/2)(j,n/2)")
    if not np.array_equal(A01, A10):
        notes.append("mixed products differ")
    if not (np.array_equal(2 * A00[:, :, 0::2], NpL)
            and np.array_equal(2 * A00[:, :, 1::2], NmL)):
        notes.append("even products have wrong coefficients")
    if not (np.array_equal(2 * A01[:, :, 1::2], NpL)
            and np.array_equal(2 * A01[:, :, 0::2], NmL)):
        notes.append("mixed products have wrong coefficients")
    out.append(CheckResult("C.Closure", not notes, "; ".join(notes) or None))

    # --- PropP1 -------------------------------------------------------------
    notes = []
    inv2 = F.inv(2 % F.p)
    th = np.zeros(mn, dtype=np.int64)
    th[0] = inv2
    th[n2] = inv2
    Mth = gfops.matmul(
        t, th[None, :], Tf.transpose(1, 0, 2).reshape(mn, mn * mn)
    ).reshape(mn, mn)
    Mth_l = gfops.matmul(t, th[None, :], Tf.reshape(mn, mn * mn)).reshape(mn, mn)
    if not np.array_equal(Mth, Mth_l):
        notes.append("theta is not central")
    if not np.array_equal(gfops.vecmat(t, th, Mth), th):
        notes.append("theta is not idempotent")
    comp = gfops.sub(t, unit_vec, th)
    Mcomp = gfops.sub(t, np.eye(mn, dtype=np.int64), Mth)
    P_img = Mth[np.arange(m) * n]
    Q_img = Mcomp[np.arange(m) * n]
    if linalg.rank(F, P_img) != m or linalg.rank(F, Q_img) != m:
        notes.append("projected images drop rank")
    for table, Bimg, Mproj, nm in ((N, P_img, Mth, "plain"), (L, Q_img, Mcomp, "twisted")):
        rows = gfops.embed_int_array(t, table.reshape(m * m, m))
        want = gfops.matmul(t, rows, Bimg).reshape(m, m, mn)
        got = np.zeros_like(want)
        for i in range(m):
            got[i] = gfops.matmul(
                t, gfops.embed_int_array(t, T[i * n, np.arange(m) * n]), Mproj
            )
        if not np.array_equal(got, want):
            notes.append(f"{nm} corner products disagree")
    half_p = Mth[np.arange(m) * n + n2]
    if not np.array_equal(half_p, P_img):
        notes.append("half-twist does not fix the plain corner")
    half_q = Mcomp[np.arange(m) * n + n2]
    if not np.array_equal(half_q, gfops.neg(t, Q_img)):
        notes.append("half-twist does not negate the twisted corner")
    out.append(CheckResult("PropP1", not notes, "; ".join(notes) or None))

    # --- Corollary: n/2 copies of the small subring ------------------------
    notes = []
    evens = gfops.gf_sum(t, theta[0::2], axis=0)
    odds = gfops.gf_sum(t, theta[1::2], axis=0)
    if not (np.array_equal(evens, th) and np.array_equal(odds, comp)):
        notes.append("even/odd idempotent sums are wrong")
    clab = csel
    all_imgs = []
    ct_rows = gfops.embed_int_array(t, fusion.ctable.reshape(4 * m * m, 2 * m))
    for r in range(n2):
        Meta = gfops.add(t, Mr[2 * r], Mr[2 * r + 1])
        Y = Meta[clab]  # (2m, mn)
        if linalg.rank(F, Y) != 2 * m:
            notes.append(f"copy {r}: rank below {2 * m}")
            continue
        want = gfops.matmul(t, ct_rows, Y).reshape(2 * m, 2 * m, mn)
        got = np.zeros_like(want)
        for a in range(2 * m):
            got[a] = gfops.matmul(
                t, gfops.embed_int_array(t, T[clab[a]][clab]), Meta
            )
        if not np.array_equal(got, want):
            notes.append(f"copy {r}: products disagree with the subring table")
        all_imgs.append(Y)
    if all_imgs and linalg.rank(F, np.vstack(all_imgs)) != mn:
        notes.append("copies do not span the whole algebra")
    out.append(CheckResult("Corollary", not notes, "; ".join(notes) or None))
    return out


def check_qdim_stage(H, blocks, vd, simples):
    """Quantum dimensions: the closed form and the sphericity boundary."""
    F, t = H.field, H.field.tables
    m, n = blocks.m, 2 * H.dim
    n2 = n // 2
    psi = simples.psi
    out = []

    qd = np.array(
        [int(gfops.dot(t, blocks.chars[i], vd.v)) for i in range(m)], dtype=np.int64
    )
    bad = [
        f"i={i}"
        for i in range(m)
        if int(qd[i]) != F.mul(vd.s_Lambda, vd.s[i])
    ]
    out.append(CheckResult(
        "QDim.ChiV", not bad,
        None if not bad else "chi(v) != s_Lambda s_i at " + ", ".join(bad)))

    eq_set = set()
    for i in range(m):
        for j in range(n):
            lhs = F.mul(int(qd[i]), F.pow(psi, j))
            rhs = F.mul(int(qd[blocks.dualperm[i]]), F.pow(psi, (n - j) % n))
            if lhs == rhs:
                eq_set.add((i, j))
    want = {(i, j) for i in range(m) for j in (0, n2)}
    ok = eq_set == want
    wit = None
    if not ok:
        diff = sorted(eq_set.symmetric_difference(want))
        wit = f"self-dual-dimension set differs at {diff[0]}"
    out.append(CheckResult("QDim.Spherical", ok, wit))
    return out
