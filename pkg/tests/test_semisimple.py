"""Integrals, block decomposition, characters, and the u/v elements on
small known algebras where every quantity can be written down by hand.
"""

import numpy as np
import pytest

from hopfusion.builtins import make_builtin
from hopfusion.errors import NonResidue, NotSemisimple, SplittingFieldTooSmall
from hopfusion.field import extend_field, gf_construct
from hopfusion.groups import cyclic
from hopfusion.hopf import change_field, group_algebra
from hopfusion.semisimple import (
    check_u_properties,
    check_v_properties,
    compute_blocks,
    compute_integrals,
    compute_u,
    compute_v,
    element_power,
    resolve_lambda_convention,
)


def build(name, p, ext=1):
    F = gf_construct(p)
    H = make_builtin(name, F)
    if ext > 1:
        F2, emb = extend_field(F, ext)
        H = change_field(H, emb)
    return H


def stage_chain(H, seed=0):
    rng = np.random.default_rng(seed)
    ints = compute_integrals(H)
    blocks = compute_blocks(H, rng)
    u = compute_u(H, ints)
    ints, how = resolve_lambda_convention(H, ints, blocks, u)
    return ints, blocks, u, how


def test_kc2_integrals():
    H = build("kC2", 5)
    ints = compute_integrals(H)
    assert ints.Lambda.tolist() == [1, 1]
    assert ints.eps_Lambda == 2
    assert ints.lam.tolist() == [1, 0]
    assert ints.convention == "first-slot"


def test_kc2_blocks():
    H = build("kC2", 5)
    blocks = compute_blocks(H, np.random.default_rng(0))
    assert blocks.dims == (1, 1)
    # e = (1 + g)/2 and (1 - g)/2; 1/2 = 3 mod 5
    assert blocks.idempotents.tolist() == [[3, 3], [3, 2]]
    assert blocks.chars.tolist() == [[1, 1], [1, 4]]
    assert blocks.dualperm == (0, 1)


def test_kc2_u_and_regular_character():
    H = build("kC2", 5)
    ints = compute_integrals(H)
    u = compute_u(H, ints)
    assert u.u.tolist() == [2, 0]
    assert u.u_inv.tolist() == [3, 0]
    assert u.chi_reg.tolist() == [2, 0]


def test_kc2_lambda_of_idempotents():
    H = build("kC2", 5)
    ints, blocks, u, how = stage_chain(H)
    assert how == "primary"
    t = H.field.tables
    for e in blocks.idempotents:
        # d^2 / |G| = 1/2 = 3 mod 5 for both one-dim blocks
        assert int(_pair(t, ints.lam, e)) == 3


def _pair(t, lam, e):
    from hopfusion import gfops

    return gfops.dot(t, lam, e)


def test_ks3_structure():
    H = build("kS3", 7)
    ints, blocks, u, how = stage_chain(H)
    assert how == "primary"
    assert ints.eps_Lambda == 6
    assert ints.lam.tolist() == [1, 0, 0, 0, 0, 0]
    assert blocks.dims == (1, 1, 2)
    assert blocks.chars[0].tolist() == [1, 1, 1, 1, 1, 1]
    assert blocks.chars[1].tolist() == [1, 1, 1, 6, 6, 6]
    assert blocks.chars[2].tolist() == [2, 6, 6, 0, 0, 0]
    assert blocks.dualperm == (0, 1, 2)
    assert u.u.tolist() == [6, 0, 0, 0, 0, 0]
    assert u.chi_reg.tolist() == [6, 0, 0, 0, 0, 0]
    t = H.field.tables
    lam_e = [int(_pair(t, ints.lam, e)) for e in blocks.idempotents]
    # d_i^2 / 6 mod 7: 6, 6, 24 = 3
    assert lam_e == [6, 6, 3]


def test_kc4_dual_permutation():
    H = build("kC4", 5)
    blocks = compute_blocks(H, np.random.default_rng(1))
    assert blocks.dims == (1, 1, 1, 1)
    # sorted rows: trivial, g -> 2, g -> 3, g -> 4; inversion swaps 2 <-> 3
    assert blocks.chars.tolist() == [
        [1, 1, 1, 1],
        [1, 2, 4, 3],
        [1, 3, 4, 2],
        [1, 4, 1, 4],
    ]
    assert blocks.dualperm == (0, 2, 1, 3)


def test_dual_ks3_structure():
    H = build("dual-kS3", 7)
    ints, blocks, u, how = stage_chain(H)
    assert how == "primary"
    assert ints.Lambda.tolist() == [1, 0, 0, 0, 0, 0]
    assert ints.eps_Lambda == 1
    assert ints.lam.tolist() == [1, 1, 1, 1, 1, 1]
    assert blocks.dims == (1,) * 6
    # blocks are the point evaluations; the character-tuple sort puts
    # them in reverse group order after the trivial one
    eye = np.eye(6, dtype=int)
    assert blocks.idempotents.tolist() == eye[[0, 5, 4, 3, 2, 1]].tolist()
    # inversion fixes the identity and the transpositions, swaps the
    # two rotations of order three (sorted positions 4 and 5)
    assert blocks.dualperm == (0, 1, 2, 3, 5, 4)
    assert u.u.tolist() == H.unit.tolist()


def test_blocks_need_splitting_field():
    H = build("kC3", 5)
    with pytest.raises(SplittingFieldTooSmall) as exc:
        compute_blocks(H, np.random.default_rng(0))
    assert exc.value.factor == 2


def test_v_needs_square_root():
    H = build("kC2", 5)
    ints, blocks, u, how = stage_chain(H)
    with pytest.raises(NonResidue):
        compute_v(H, ints, blocks, u)


def test_modular_group_order_rejected():
    F = gf_construct(5)
    H = group_algebra(F, cyclic(5), name="kC5")
    with pytest.raises(NotSemisimple):
        compute_integrals(H)


def test_element_power_matches_repeated_product():
    H = build("kS3", 7)
    rng = np.random.default_rng(42)
    for _ in range(10):
        x = rng.integers(0, 7, size=H.dim).astype(np.int64)
        acc = H.unit.copy()
        for e in range(6):
            assert element_power(H, x, e).tolist() == acc.tolist()
            acc = H.multiply(acc, x)


CASES = [
    ("kC2", 5, 2),
    ("kC3", 5, 2),
    ("kC4", 5, 1),
    ("kS3", 7, 2),
    ("kD4", 7, 1),
    ("dual-kC2", 5, 1),
    ("dual-kC3", 5, 1),
    ("dual-kC4", 5, 1),
    ("dual-kS3", 7, 1),
    ("dual-kD4", 7, 1),
]


@pytest.mark.parametrize("name,p,ext", CASES)
def test_full_check_suite_passes(name, p, ext):
    H = build(name, p, ext)
    ints, blocks, u, how = stage_chain(H)
    assert how == "primary"
    results = check_u_properties(H, ints, blocks, u)
    vd = compute_v(H, ints, blocks, u)
    results += check_v_properties(H, u, vd, 2 * H.dim)
    failed = [r for r in results if not r.ok]
    assert not failed, [(r.check_id, r.witness) for r in failed]
    ids = [r.check_id for r in results]
    assert ids == [
        "Prop3.20.1",
        "Prop3.20.2",
        "Prop3.20.3",
        "Prop3.20.4",
        "Prop3.20.5",
        "U.Conjugation",
        "Prop2.1",
        "Prop2.2",
        "Prop2.3",
        "Prop2.4",
        "Prop2.5",
        "Prop2.6",
    ]
    # every builtin here is involutory, so v collapses to the identity
    assert vd.v.tolist() == H.unit.tolist()
    assert set(vd.branch_rules) == {"u-matched"}


def test_second_slot_agrees_on_self_dual_conventions():
    # cocommutative (group algebra) and commutative (dual) inputs make
    # both slot conventions solvable with the same functional
    for name, p in [("kS3", 7), ("dual-kS3", 7)]:
        H = build(name, p)
        a = compute_integrals(H, "first-slot")
        b = compute_integrals(H, "second-slot")
        assert a.lam.tolist() == b.lam.tolist()
        assert a.Lambda.tolist() == b.Lambda.tolist()
