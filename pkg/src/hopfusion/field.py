"""Fields GF(p^k) with exact, deterministic scalar arithmetic.

A `Field` owns the lookup tables from `gftables`; elements travel as
integer codes (see that module for the encoding).  `FieldElement` is a
thin operator-overloading wrapper used at API boundaries and in tests;
the bulk of the engine works on raw code arrays through `gfops`.

Determinism contracts relied on downstream:
  * the modulus is `canonical_modulus(p, k)` unless caller-supplied;
  * the exp table is built on the least-code generator;
  * `sqrt` returns the branch whose coefficient tuple
    (c_0, ..., c_{k-1}) is lexicographically least;
  * `primitive_root_of_unity` is the least-code generator raised to
    (q-1)/n.
"""

from __future__ import annotations

import functools

import numpy as np

from .errors import InvalidInputError
from .gftables import GFTables, build_tables, canonical_modulus, is_prime


class Field:
    __slots__ = ("p", "k", "q", "modulus", "tables")

    def __init__(self, p: int, k: int, modulus=None):
        self.tables, self.modulus = build_tables(p, k, modulus)
        self.p = p
        self.k = k
        self.q = p**k

    def __repr__(self):
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"

    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)
        )

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    # -- scalar arithmetic on codes ------------------------------------
    def add(self, a: int, b: int) -> int:
        if a == 0:
            return int(b)
        if b == 0:
            return int(a)
        t = self.tables
        la, lb = int(t.log[a]), int(t.log[b])
        d = (lb - la) % (self.q - 1)
        if d == t.zneg:
            return 0
        return int(t.exp[(la + int(t.zech[d])) % (self.q - 1)])

    def neg(self, a: int) -> int:
        return int(self.tables.neg[a])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        t = self.tables
        return int(t.exp[int(t.log[a]) + int(t.log[b])])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return int(self.tables.inv[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("0 to a negative power")
            return 0
        la = int(self.tables.log[a])
        return int(self.tables.exp[(la * e) % (self.q - 1)])

    def from_int(self, n: int) -> int:
        """Code of the prime-field constant n (image of the integer n)."""
        return n % self.p

    def coeffs(self, a: int) -> tuple[int, ...]:
        return tuple((a // self.p**i) % self.p for i in range(self.k))

    def from_coeffs(self, coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) > self.k:
            raise InvalidInputError("coefficient vector longer than extension degree")
        return sum((int(c) % self.p) * self.p**i for i, c in enumerate(coeffs))

    def element_order(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative order")
        la = int(self.tables.log[a])
        from math import gcd

        return (self.q - 1) // gcd(la, self.q - 1)

    # -- square roots ---------------------------------------------------
    def sqrt(self, a: int) -> int | None:
        """Deterministic square root, or None for a nonresidue.

        Of the two roots +/-y, returns the one whose coefficient tuple is
        lexicographically least (they differ unless y = 0 or p = 2).
        """
        if a == 0:
            return 0
        la = int(self.tables.log[a])
        q1 = self.q - 1
        if la % 2 == 1:
            if q1 % 2 == 1:
                la += q1  # odd group order: halving always possible
            else:
                return None
        y = int(self.tables.exp[la // 2])
        z = self.neg(y)
        return y if self.coeffs(y) <= self.coeffs(z) else z

    # -- roots of unity ---------------------------------------------------
    def generator(self) -> int:
        return int(self.tables.exp[1]) if self.q > 2 else 1

    def primitive_root_of_unity(self, n: int) -> int:
        if n < 1 or (self.q - 1) % n != 0:
            raise InvalidInputError(f"no primitive {n}-th root of unity in {self!r}")
        return int(self.tables.exp[(self.q - 1) // n]) if n > 1 else 1

    # -- wrappers ---------------------------------------------------------
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def el(self, code: int) -> "FieldElement":
        if not 0 <= code < self.q:
            raise InvalidInputError(f"code {code} out of range for {self!r}")
        return FieldElement(self, int(code))

    def modulus_str(self) -> str:
        return poly_str(self.modulus)


@functools.total_ordering
class FieldElement:
    """Element of a Field; immutable, exact, operator-overloaded."""

    __slots__ = ("field", "code")

    def __init__(self, field: Field, code: int):
        self.field = field
        self.code = int(code)

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.code)

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise InvalidInputError("elements of different fields")
            return other.code
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        c = self._coerce(other)
        return NotImplemented if c is NotImplemented else FieldElement(self.field, self.field.add(self.code, c))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.code))

    def __sub__(self, other):
        c = self._coerce(other)
        return NotImplemented if c is NotImplemented else FieldElement(self.field, self.field.sub(self.code, c))

    def __rsub__(self, other):
        c = self._coerce(other)
        return NotImplemented if c is NotImplemented else FieldElement(self.field, self.field.sub(c, self.code))

    def __mul__(self, other):
        c = self._coerce(other)
        return NotImplemented if c is NotImplemented else FieldElement(self.field, self.field.mul(self.code, c))

    __rmul__ = __mul__

    def __truediv__(self, other):
        c = self._coerce(other)
        return NotImplemented if c is NotImplemented else FieldElement(self.field, self.field.div(self.code, c))

    def __rtruediv__(self, other):
        c = self._coerce(other)
        return NotImplemented if c is NotImplemented else FieldElement(self.field, self.field.div(c, self.code))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.code, e))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.code))

    def sqrt(self):
        r = self.field.sqrt(self.code)
        return None if r is None else FieldElement(self.field, r)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.code == other.code
        if isinstance(other, int):
            return self.code == other % self.field.p
        return NotImplemented

    def __lt__(self, other):
        # code order; used only for deterministic tie-breaking
        c = self._coerce(other)
        return NotImplemented if c is NotImplemented else self.code < c

    def __hash__(self):
        return hash((self.field, self.code))

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        return f"{self.code}:{self.field!r}"


def gf_construct(p: int, k: int = 1) -> Field:
    """The canonical GF(p^k); rejects composite p."""
    if not is_prime(p):
        raise InvalidInputError(f"{p} is not prime")
    return Field(p, k)


class Embedding:
    """Arithmetic-preserving injection between fields, as a code table."""

    __slots__ = ("src", "dst", "table")

    def __init__(self, src: Field, dst: Field, table: np.ndarray):
        self.src = src
        self.dst = dst
        self.table = table

    def __call__(self, codes):
        if isinstance(codes, (int, np.integer)):
            return int(self.table[codes])
        return self.table[np.asarray(codes, dtype=np.int64)]


def embed_field(src: Field, dst: Field) -> Embedding:
    """Embedding src -> dst; requires src degree | dst degree, same p.

    The image of the source generator-polynomial variable is the least
    root of the source modulus in dst, which fixes the embedding
    deterministically.
    """
    if dst.p != src.p or dst.k % src.k != 0:
        raise InvalidInputError(f"no embedding {src!r} -> {dst!r}")
    p = src.p
    from . import gfops

    codes = np.arange(dst.q, dtype=np.int64)
    acc = np.zeros(dst.q, dtype=np.int64)
    for c in reversed(src.modulus):
        acc = gfops.add(dst.tables, gfops.mul(dst.tables, acc, codes), c % p)
    roots = np.flatnonzero(acc == 0)
    if roots.size == 0:
        raise InvalidInputError("source modulus has no root in destination field")
    x_img = int(roots.min())

    src_codes = np.arange(src.q, dtype=np.int64)
    table = np.zeros(src.q, dtype=np.int64)
    for i in reversed(range(src.k)):
        dig = (src_codes // p**i) % p
        table = gfops.add(dst.tables, gfops.mul(dst.tables, table, x_img), dig)
    return Embedding(src, dst, table)


def extend_field(F: Field, factor: int) -> tuple[Field, Embedding]:
    """GF(p^(k*factor)) together with the embedding of F into it."""
    if factor < 2:
        raise InvalidInputError("extension factor must be >= 2")
    big = Field(F.p, F.k * factor)
    return big, embed_field(F, big)


def poly_str(coeffs) -> str:
    """Human-readable 'x^2+3x+1' form of an integer coefficient vector."""
    terms = []
    for i in reversed(range(len(coeffs))):
        c = coeffs[i]
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
        else:
            xs = "x" if i == 1 else f"x^{i}"
            terms.append(xs if c == 1 else f"{c}{xs}")
    return "+".join(terms) if terms else "0"
