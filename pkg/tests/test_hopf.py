import numpy as np
import pytest

from hopfusion.builtins import builtin_names, make_builtin, parse_builtin_spec
from hopfusion.errors import InvalidHopfData, InvalidInputError, NotAGroup
from hopfusion.field import gf_construct
from hopfusion.groups import cyclic, dihedral4, symmetric3
from hopfusion.hopf import (
    change_field,
    dual_hopf,
    group_algebra,
    is_cocommutative,
    is_commutative,
)

F5 = gf_construct(5, 1)
F7 = gf_construct(7, 1)


def test_cayley_tables_are_groups():
    for table in (cyclic(2), cyclic(3), cyclic(6), symmetric3(), dihedral4()):
        H = group_algebra(F7, table)
        assert all(r.ok for r in H.validate())


def test_s3_and_d4_orders():
    s3 = symmetric3()
    assert s3.shape == (6, 6)
    # two elements of order 3, three of order 2
    orders = []
    for a in range(6):
        x, o = a, 1
        while x != 0:
            x = s3[x, a]
            o += 1
        orders.append(o)
    assert sorted(orders) == [1, 2, 2, 2, 3, 3]
    d4 = dihedral4()
    assert d4.shape == (8, 8)
    orders = []
    for a in range(8):
        x, o = a, 1
        while x != 0:
            x = d4[x, a]
            o += 1
        orders.append(o)
    assert sorted(orders) == [1, 2, 2, 2, 2, 2, 4, 4]
    # D4 is nonabelian
    assert not np.array_equal(d4, d4.T)


def test_group_algebra_rejects_bad_tables():
    with pytest.raises(NotAGroup):
        group_algebra(F5, np.zeros((3, 3), np.int64))  # no identity row
    t = cyclic(4).copy()
    t[2, 2] = 1  # break associativity/inverses
    with pytest.raises(NotAGroup):
        group_algebra(F5, t)


def test_validate_pinpoints_mutations():
    H = group_algebra(F5, cyclic(3))
    bad = H.mult.copy()
    bad[1, 1, 0] = 3
    from hopfusion.hopf import HopfAlgebra

    broken = HopfAlgebra(F5, bad, H.comult, H.unit, H.counit, H.antipode)
    failures = [r for r in broken.validate() if not r.ok]
    assert failures
    assert any(r.witness is not None for r in failures)
    with pytest.raises(InvalidHopfData):
        broken.require_valid()


def test_dual_swaps_commutativity():
    H = group_algebra(F7, symmetric3())
    assert not is_commutative(H)
    assert is_cocommutative(H)
    D = dual_hopf(H)
    assert all(r.ok for r in D.validate())
    assert is_commutative(D)
    assert not is_cocommutative(D)


def test_double_dual_is_identity():
    H = group_algebra(F7, dihedral4())
    DD = dual_hopf(dual_hopf(H))
    assert np.array_equal(DD.mult, H.mult)
    assert np.array_equal(DD.comult, H.comult)
    assert np.array_equal(DD.unit, H.unit)
    assert np.array_equal(DD.counit, H.counit)
    assert np.array_equal(DD.antipode, H.antipode)


def test_mult_matrices_and_antipode_powers():
    H = group_algebra(F5, cyclic(4))
    x = np.array([1, 2, 0, 0], np.int64)
    y = np.array([0, 0, 3, 1], np.int64)
    xy = H.multiply(x, y)
    from hopfusion import gfops

    assert np.array_equal(gfops.matvec(F5.tables, H.left_mult_matrix(x), y), xy)
    assert np.array_equal(gfops.matvec(F5.tables, H.right_mult_matrix(y), x), xy)
    assert H.is_involutory()
    assert np.array_equal(H.antipode_power(-1), H.antipode)
    assert np.array_equal(H.antipode_power(3), H.antipode)


def test_change_field_keeps_axioms():
    from hopfusion.field import extend_field

    H = group_algebra(F5, cyclic(3))
    big, emb = extend_field(F5, 2)
    H2 = change_field(H, emb)
    assert H2.field.q == 25
    assert all(r.ok for r in H2.validate())


def test_builtin_registry():
    assert "kS3" in builtin_names() and "dual-kD4" in builtin_names()
    H = make_builtin("dual-kS3", F7)
    assert H.dim == 6
    assert all(r.ok for r in H.validate())
    assert parse_builtin_spec("kC2") == ("kC2", 5)
    assert parse_builtin_spec("kS3@p=11") == ("kS3", 11)
    with pytest.raises(InvalidInputError):
        parse_builtin_spec("nope")
    with pytest.raises(InvalidInputError):
        parse_builtin_spec("kC2@q=5")
