"""Smash product H # kG for the cyclic group G of order n = 2 dim H.

G acts on H through the square of the antipode: the product twists as

    (a # g^i)(b # g^j) = a S^{2i}(b) # g^{i+j},

while the coalgebra structure is the plain tensor product and the
antipode is S(h # g^i) = S^{1-2i}(h) # g^{-i}.  Basis pairs (a, i) are
flattened as a*n + i everywhere in the package.

The closed-form integral of the smash is Lambda # (1/n) sum_i g^i and
the dual one evaluates to n*lam(h) on the g^0 slot; both are verified
against integrals solved directly from the smash tensors.
"""

from __future__ import annotations

import numpy as np

from . import gfops, linalg
from .errors import InternalInconsistency, SplittingFieldTooSmall
from .hopf import HopfAlgebra
from .report import CheckResult
from .semisimple import Integrals, UData, compute_integrals, compute_u


def root_of_unity(F, n: int) -> int:
    """Primitive n-th root of unity, or the extension signal to get one."""
    if (F.q - 1) % n == 0:
        return F.primitive_root_of_unity(n)
    extra = 1
    power = F.q % n
    while power != 1:
        power = (power * F.q) % n
        extra += 1
        if extra > n:
            raise InternalInconsistency(f"no power of {F.q} is 1 mod {n}")
    raise SplittingFieldTooSmall(extra, f"no primitive {n}-th root of unity")


def flat(a, i, n: int):
    return a * n + i


def build_smash(H: HopfAlgebra) -> HopfAlgebra:
    F, t, d = H.field, H.field.tables, H.dim
    n = 2 * d
    ds = d * n
    if not np.array_equal(H.antipode_power(2 * n), np.eye(d, dtype=np.int64)):
        raise InternalInconsistency(f"S^{2 * n} is not the identity")

    M, C = H.mult, H.comult
    a_ix = np.arange(d)[:, None, None]
    b_ix = np.arange(d)[None, :, None]
    c_ix = np.arange(d)[None, None, :]

    Ms = np.zeros((ds, ds, ds), dtype=np.int64)
    MT = np.ascontiguousarray(M.transpose(0, 2, 1)).reshape(d * d, d)  # (a,c),e
    for i in range(n):
        S2i = H.antipode_power(2 * i)
        twisted = gfops.matmul(t, MT, S2i).reshape(d, d, d).transpose(0, 2, 1)
        for j in range(n):
            Ms[a_ix * n + i, b_ix * n + j, c_ix * n + (i + j) % n] = twisted

    Cs = np.zeros((ds, ds, ds), dtype=np.int64)
    for i in range(n):
        Cs[a_ix * n + i, b_ix * n + i, c_ix * n + i] = C

    Ss = np.zeros((ds, ds), dtype=np.int64)
    r_ix = np.arange(d)[:, None]
    col_ix = np.arange(d)[None, :]
    for i in range(n):
        Ss[r_ix * n + (n - i) % n, col_ix * n + i] = H.antipode_power(1 - 2 * i)

    unit = np.zeros(ds, dtype=np.int64)
    unit[np.arange(d) * n] = H.unit
    counit = np.repeat(H.counit, n)
    return HopfAlgebra(F, Ms, Cs, unit, counit, Ss, name=f"{H.name}#kC{n}")


def smash_closed_integrals(H: HopfAlgebra, ints: Integrals, smash: HopfAlgebra) -> Integrals:
    """Closed-form integral pair of the smash product, built from H's:
    Lambda averaged over the group grades, lambda supported on grade 0."""
    F, t, d = H.field, H.field.tables, H.dim
    n = 2 * d
    inv_n = F.inv(n % F.p)
    Lam = gfops.scale(t, inv_n, np.repeat(ints.Lambda, n))
    lam = np.zeros(d * n, dtype=np.int64)
    lam[np.arange(d) * n] = gfops.scale(t, n % F.p, ints.lam)
    return Integrals(Lam, ints.eps_Lambda, lam, ints.convention)


def embed_element(x, n: int):
    """h -> h # g^0 on coordinates."""
    x = np.asarray(x, dtype=np.int64)
    out = np.zeros(len(x) * n, dtype=np.int64)
    out[np.arange(len(x)) * n] = x
    return out


def check_smash_stage(H: HopfAlgebra, ints: Integrals, u: UData, smash: HopfAlgebra):
    """All smash-stage checks; returns (results, smash u-data)."""
    F, t, d = H.field, H.field.tables, H.dim
    n = 2 * d
    ds = d * n
    out = []

    reports = smash.validate()
    bad = [r for r in reports if not r.ok]
    out.append(
        CheckResult(
            "Smash.Axioms",
            not bad,
            None if not bad else f"{bad[0].axiom} witness={bad[0].witness}",
        )
    )

    # h -> h#1 and g^i -> 1#g^i respect all structure maps
    emb_ok = []
    a_ix = np.arange(d)[:, None, None]
    b_ix = np.arange(d)[None, :, None]
    c_ix = np.arange(d)[None, None, :]
    emb_ok.append(np.array_equal(smash.mult[a_ix * n, b_ix * n, c_ix * n], H.mult))
    emb_ok.append(np.array_equal(smash.comult[a_ix * n, b_ix * n, c_ix * n], H.comult))
    emb_ok.append(
        np.array_equal(smash.antipode[np.arange(d)[:, None] * n, np.arange(d)[None, :] * n], H.antipode)
    )
    emb_ok.append(np.array_equal(smash.counit[np.arange(d) * n], H.counit))
    # the group part: (1#g^i)(1#g^j) = 1#g^{i+j}, via mult-tensor slices
    group_ok = True
    for i in range(n):
        for j in range(n):
            rows = smash.mult[a_ix.reshape(d, 1) * n + i, b_ix.reshape(1, d) * n + j, :]
            prod = gfops.gf_sum(
                t,
                gfops.mul(t, rows, gfops.mul(t, H.unit[:, None], H.unit[None, :])[:, :, None]),
                axis=(0, 1),
            )
            gij = np.zeros(ds, dtype=np.int64)
            gij[np.arange(d) * n + (i + j) % n] = H.unit
            if not np.array_equal(prod, gij):
                group_ok = False
    emb_ok.append(group_ok)
    one_g = np.zeros(ds, dtype=np.int64)
    one_g[np.arange(d) * n + 1] = H.unit
    # commutation: (1#g)(b#1) = S^2(b)#g, read off left multiplication by 1#g
    S2 = H.antipode_power(2)
    L_oneg = smash.left_mult_matrix(one_g)
    got = L_oneg[:, np.arange(d) * n]  # columns are (1#g)(e_b#1)
    want = np.zeros((ds, d), dtype=np.int64)
    want[np.arange(d)[:, None] * n + 1, np.arange(d)[None, :]] = S2
    emb_ok.append(np.array_equal(got, want))
    names = ["mult", "comult", "antipode", "counit", "group-law", "commutation"]
    first_bad = next((names[ix] for ix, ok in enumerate(emb_ok) if not ok), None)
    out.append(CheckResult("Smash.Embedding", first_bad is None, first_bad))

    # S^2 of the smash is conjugation by the group-like 1#g
    g_last = np.zeros(ds, dtype=np.int64)
    g_last[np.arange(d) * n + (n - 1)] = H.unit
    conj = gfops.matmul(t, L_oneg, smash.right_mult_matrix(g_last))
    s2_ok = np.array_equal(smash.antipode_power(2), conj)
    grouplike = np.array_equal(
        smash.comultiply(one_g), gfops.mul(t, one_g[:, None], one_g[None, :])
    ) and smash.counit_of(one_g) == 1
    out.append(
        CheckResult(
            "Smash.S2Conj",
            bool(s2_ok and grouplike),
            None if s2_ok and grouplike else ("conjugation mismatch" if not s2_ok else "1#g not group-like"),
        )
    )

    # closed-form integrals match integrals solved from the smash tensors
    closed = smash_closed_integrals(H, ints, smash)
    notes = []
    left = gfops.gf_sum(t, gfops.mul(t, smash.mult, closed.Lambda[None, :, None]), axis=1)
    if not np.array_equal(left, gfops.mul(t, smash.counit[:, None], closed.Lambda[None, :])):
        notes.append("closed Lambda is not a left integral")
    if smash.counit_of(closed.Lambda) != ints.eps_Lambda:
        notes.append("eps of closed integral differs from eps(Lambda)")
    lam_side = gfops.gf_sum(t, gfops.mul(t, smash.comult, closed.lam[None, :, None]), axis=1)
    if closed.convention != "first-slot":
        lam_side = gfops.gf_sum(t, gfops.mul(t, smash.comult, closed.lam[None, None, :]), axis=2)
    if not np.array_equal(lam_side, gfops.mul(t, closed.lam[:, None], smash.unit[None, :])):
        notes.append("closed lam fails the dual-integral law")
    if gfops.dot(t, closed.lam, closed.Lambda) != 1:
        notes.append("closed pair is not normalized")
    solved = compute_integrals(smash, slot=ints.convention)
    nz = int(np.flatnonzero(closed.Lambda)[0])
    ratio = F.mul(int(closed.Lambda[nz]), F.inv(int(solved.Lambda[nz])))
    if not np.array_equal(closed.Lambda, gfops.scale(t, ratio, solved.Lambda)):
        notes.append("solved integral is not proportional to the closed form")
    out.append(CheckResult("Smash.Integral", not notes, "; ".join(notes) or None))

    # u of the smash is u # 1
    u_sm = compute_u(smash, closed)
    want_u = embed_element(u.u, n)
    u_ok = np.array_equal(u_sm.u, want_u)
    s2u_ok = np.array_equal(gfops.matvec(t, S2, u.u), u.u)
    out.append(
        CheckResult(
            "Smash.U",
            bool(u_ok and s2u_ok),
            None if u_ok and s2u_ok else ("u of smash differs from u#1" if not u_ok else "S^2(u) != u"),
        )
    )
    return out, u_sm, closed
