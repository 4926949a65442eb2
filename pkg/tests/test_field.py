import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopfusion import gfops
from hopfusion.errors import InvalidInputError
from hopfusion.field import Field, embed_field, extend_field, gf_construct, poly_str

FIELDS = {}


def field(p, k):
    if (p, k) not in FIELDS:
        FIELDS[(p, k)] = gf_construct(p, k)
    return FIELDS[(p, k)]


def test_prime_field_construction():
    F = field(5, 1)
    assert F.q == 5
    assert F.modulus == (0, 1)  # the polynomial x


def test_rejects_composite_characteristic():
    with pytest.raises(InvalidInputError):
        gf_construct(6, 1)


def test_gf49_group_order():
    F = field(7, 2)
    assert F.q - 1 == 48
    g = F.generator()
    assert F.element_order(g) == 48


def test_gf49_modulus_is_least_irreducible():
    # oracle: scan monic quadratics x^2 + c1*x + c0 in code order of
    # (c0, c1) and test irreducibility by exhausting roots in GF(7)
    def has_root(c0, c1):
        return any((r * r + c1 * r + c0) % 7 == 0 for r in range(7))

    expected = None
    for code in range(49):
        c0, c1 = code % 7, code // 7
        if not has_root(c0, c1):
            expected = (c0, c1, 1)
            break
    assert field(7, 2).modulus == expected


def test_sqrt_examples():
    F = field(5, 1)
    assert F.sqrt(4) == 2  # branch rule: 2 < 3
    assert F.sqrt(0) == 0
    squares = {F.mul(x, x) for x in range(5)}
    assert 3 not in squares
    assert F.sqrt(3) is None


def test_sqrt_all_elements():
    for p, k in [(5, 1), (5, 2), (7, 2), (3, 3)]:
        F = field(p, k)
        for x in range(F.q):
            r = F.sqrt(x)
            if r is not None:
                assert F.mul(r, r) == x
                other = F.neg(r)
                assert F.coeffs(r) <= F.coeffs(other)


def test_sqrt_branch_reproducible():
    a = Field(7, 2)
    b = Field(7, 2)
    for x in range(49):
        ra, rb = a.sqrt(x), b.sqrt(x)
        assert ra == rb


def test_primitive_root_of_unity():
    F = field(5, 1)
    z = F.primitive_root_of_unity(4)
    assert z == 2  # least-code generator of GF(5)*
    assert F.element_order(z) == 4
    with pytest.raises(InvalidInputError):
        F.primitive_root_of_unity(3)

    F49 = field(7, 2)
    z12 = F49.primitive_root_of_unity(12)
    assert F49.element_order(z12) == 12


def test_extend_field_preserves_squares():
    F = field(5, 1)
    big, emb = extend_field(F, 2)
    assert big.q == 25
    # constants keep their codes
    assert list(emb.table[:5]) == [0, 1, 2, 3, 4]
    # a GF(5) square keeps its root
    assert big.mul(emb(2), emb(2)) == emb(4)
    # the GF(5) nonresidue 3 acquires a root in GF(25)
    assert big.sqrt(emb(3)) is not None


def test_embedding_is_homomorphism():
    F = field(3, 2)
    big, emb = extend_field(F, 2)
    rng = np.random.default_rng(7)
    xs = rng.integers(0, F.q, size=40)
    ys = rng.integers(0, F.q, size=40)
    for x, y in zip(xs, ys):
        assert emb(F.mul(x, y)) == big.mul(emb(x), emb(y))
        assert emb(F.add(x, y)) == big.add(emb(x), emb(y))
    assert emb(1) == 1


def test_embedding_compatible_with_tower():
    # GF(5) -> GF(25) -> GF(5^4) commutes with the direct embedding
    F1 = field(5, 1)
    F2 = field(5, 2)
    F4 = field(5, 4)
    e12 = embed_field(F1, F2)
    e24 = embed_field(F2, F4)
    e14 = embed_field(F1, F4)
    for x in range(5):
        assert e24(e12(x)) == e14(x)


@st.composite
def field_and_elements(draw, count):
    p = draw(st.sampled_from([3, 5, 7]))
    k = draw(st.sampled_from([1, 2]))
    F = field(p, k)
    codes = [draw(st.integers(0, F.q - 1)) for _ in range(count)]
    return F, codes


@settings(max_examples=200, deadline=None)
@given(field_and_elements(3))
def test_field_axioms(fc):
    F, (a, b, c) = fc
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, b) == F.mul(b, a)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.add(a, F.neg(a)) == 0
    if a != 0:
        assert F.mul(a, F.inv(a)) == 1


@settings(max_examples=100, deadline=None)
@given(field_and_elements(2))
def test_pow_and_order(fc):
    F, (a, _) = fc
    if a != 0:
        assert F.pow(a, F.element_order(a)) == 1
        assert F.mul(F.pow(a, -1), a) == 1
        assert F.pow(a, 3) == F.mul(a, F.mul(a, a))


def test_field_element_wrapper():
    F = field(5, 2)
    x = F.el(7)
    y = F.el(19)
    assert (x + y).code == F.add(7, 19)
    assert (x * y).code == F.mul(7, 19)
    assert (x - y) + y == x
    assert (x / y) * y == x
    assert x**3 == x * x * x
    assert (-x) + x == F.zero()
    assert x + 2 == F.el(F.add(7, 2))
    assert bool(F.zero()) is False
    sq = x * x
    assert sq.sqrt() in (x, -x)


def test_vectorized_ops_match_scalar():
    F = field(7, 2)
    t = F.tables
    rng = np.random.default_rng(0)
    a = rng.integers(0, F.q, size=(6, 5))
    b = rng.integers(0, F.q, size=(6, 5))
    add = gfops.add(t, a, b)
    mul = gfops.mul(t, a, b)
    for i in range(6):
        for j in range(5):
            assert add[i, j] == F.add(a[i, j], b[i, j])
            assert mul[i, j] == F.mul(a[i, j], b[i, j])
    s = gfops.gf_sum(t, a, axis=1)
    for i in range(6):
        acc = 0
        for j in range(5):
            acc = F.add(acc, a[i, j])
        assert s[i] == acc
    total = gfops.gf_sum(t, a)
    acc = 0
    for v in a.ravel():
        acc = F.add(acc, int(v))
    assert total == acc


def test_matvec_and_contract():
    F = field(5, 1)
    t = F.tables
    rng = np.random.default_rng(3)
    M = rng.integers(0, 5, size=(4, 3))
    x = rng.integers(0, 5, size=3)
    got = gfops.matvec(t, M, x)
    exp = (M @ x) % 5
    assert np.array_equal(got, exp)
    T = rng.integers(0, 5, size=(3, 4, 2))
    u = rng.integers(0, 5, size=3)
    v = rng.integers(0, 5, size=4)
    got = gfops.contract_bilinear(t, T, u, v)
    exp = np.einsum("abc,a,b->c", T, u, v) % 5
    assert np.array_equal(got, exp)


def test_int_lifts():
    F = field(7, 2)
    t = F.tables
    assert gfops.lift_int(t, 5, signed=False) == 5
    assert gfops.lift_int(t, 5, signed=True) == -2
    assert gfops.lift_int(t, 3, signed=True) == 3
    with pytest.raises(ValueError):
        gfops.lift_int(t, 7, signed=False)  # has an x-digit
    a = np.array([0, 1, 6])
    assert list(gfops.lift_int_array(t, a, signed=True)) == [0, 1, -1]
    assert list(gfops.embed_int_array(t, np.array([-1, 8]))) == [6, 1]


def test_poly_str():
    assert poly_str((1, 0, 1)) == "x^2+1"
    assert poly_str((0, 1)) == "x"
    assert poly_str((2, 3, 1)) == "x^2+3x+2"
    assert poly_str((0,)) == "0"
