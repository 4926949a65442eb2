"""Hopf algebra data given by structure constants over GF(p^k).

A `HopfAlgebra` carries five int64 code arrays over a fixed field:

    mult[a, b, c]    coefficient of e_c in e_a e_b
    comult[a, r, s]  coefficient of e_r (x) e_s in the comultiplication
    unit[c]          coordinates of 1
    counit[a]        value of the counit on e_a
    antipode[r, c]   coefficient of e_r in S(e_c)

`validate` runs every defining axiom and returns per-axiom results with
a witness for the first failure, so a single wrong entry in any tensor
is pinpointed rather than silently corrupting later stages.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from . import backends, gfops, linalg
from .errors import InvalidHopfData, NotAGroup
from .field import Embedding, Field


@dataclass(frozen=True)
class AxiomReport:
    axiom: str
    ok: bool
    witness: tuple | None = None


@dataclass(frozen=True, eq=False)
class HopfAlgebra:
    field: Field
    mult: np.ndarray
    comult: np.ndarray
    unit: np.ndarray
    counit: np.ndarray
    antipode: np.ndarray
    name: str = "H"
    _spow_cache: dict = dc_field(default_factory=dict, compare=False, repr=False)

    @property
    def dim(self) -> int:
        return int(self.mult.shape[0])

    def multiply(self, x, y):
        return gfops.contract_bilinear(self.field.tables, self.mult, x, y)

    def comultiply(self, x):
        return gfops.apply_rank2(self.field.tables, self.comult, x)

    def left_mult_matrix(self, x):
        """Matrix L with L @ y = x * y."""
        t = self.field.tables
        block = gfops.mul(t, self.mult, np.asarray(x, dtype=np.int64)[:, None, None])
        return gfops.gf_sum(t, block, axis=0).T

    def right_mult_matrix(self, y):
        """Matrix R with R @ x = x * y."""
        t = self.field.tables
        block = gfops.mul(t, self.mult, np.asarray(y, dtype=np.int64)[None, :, None])
        return gfops.gf_sum(t, block, axis=1).T

    def counit_of(self, x) -> int:
        return int(gfops.dot(self.field.tables, self.counit, x))

    def antipode_power(self, e: int):
        """Matrix of S^e; negative e uses the inverse of S."""
        if e in self._spow_cache:
            return self._spow_cache[e]
        t = self.field.tables
        d = self.dim
        if e == 0:
            out = np.eye(d, dtype=np.int64)
        elif e > 0:
            out = gfops.matmul(t, self.antipode_power(e - 1), self.antipode)
        else:
            if -1 not in self._spow_cache:
                self._spow_cache[-1] = linalg.inv_matrix(self.field, self.antipode)
            out = gfops.matmul(t, self.antipode_power(e + 1), self._spow_cache[-1])
        self._spow_cache[e] = out
        return out

    def apply_antipode(self, x, e: int = 1):
        return gfops.matvec(self.field.tables, self.antipode_power(e), x)

    def is_involutory(self) -> bool:
        d = self.dim
        return bool(np.array_equal(self.antipode_power(2), np.eye(d, dtype=np.int64)))

    def validate(self) -> list[AxiomReport]:
        F = self.field
        t = F.tables
        d = self.dim
        M, C = self.mult, self.comult
        out = []

        def rep(axiom, ok, witness=None):
            out.append(AxiomReport(axiom, bool(ok), witness))

        shapes_ok = (
            M.shape == (d, d, d)
            and C.shape == (d, d, d)
            and self.unit.shape == (d,)
            and self.counit.shape == (d,)
            and self.antipode.shape == (d, d)
        )
        rep("shapes", shapes_ok)
        if not shapes_ok:
            return out
        in_range = all(
            int(arr.min(initial=0)) >= 0 and int(arr.max(initial=0)) < F.q
            for arr in (M, C, self.unit, self.counit, self.antipode)
        )
        rep("codes-in-range", in_range)
        if not in_range:
            return out

        rep("associativity", *(lambda w: (w is None, w))(backends.assoc_defect(t, M)))

        unit_left = gfops.gf_sum(t, gfops.mul(t, M, self.unit[:, None, None]), axis=0)
        unit_right = gfops.gf_sum(t, gfops.mul(t, M, self.unit[None, :, None]), axis=1)
        eye = np.eye(d, dtype=np.int64)
        rep("unit-left", np.array_equal(unit_left, eye), _first_bad(unit_left, eye))
        rep("unit-right", np.array_equal(unit_right, eye), _first_bad(unit_right, eye))

        rep("coassociativity", *(lambda w: (w is None, w))(backends.coassoc_defect(t, C)))

        cl = gfops.gf_sum(t, gfops.mul(t, C, self.counit[None, :, None]), axis=1)
        cr = gfops.gf_sum(t, gfops.mul(t, C, self.counit[None, None, :]), axis=2)
        rep("counit-left", np.array_equal(cl, eye), _first_bad(cl, eye))
        rep("counit-right", np.array_equal(cr, eye), _first_bad(cr, eye))

        rep(
            "comult-multiplicative",
            *(lambda w: (w is None, w))(backends.bialgebra_defect(t, M, C)),
        )
        cu = self.comultiply(self.unit)
        cu_ok = np.array_equal(cu, gfops.mul(t, self.unit[:, None], self.unit[None, :]))
        rep("comult-of-unit", cu_ok)
        eps_mult = gfops.gf_sum(t, gfops.mul(t, M, self.counit[None, None, :]), axis=2)
        eps_target = gfops.mul(t, self.counit[:, None], self.counit[None, :])
        rep("counit-multiplicative", np.array_equal(eps_mult, eps_target), _first_bad(eps_mult, eps_target))
        rep("counit-of-unit", gfops.dot(t, self.counit, self.unit) == 1)

        rep(
            "antipode-law",
            *(lambda w: (w is None, w))(
                backends.antipode_defect(t, M, C, self.antipode, self.unit, self.counit)
            ),
        )
        return out

    def require_valid(self):
        for r in self.validate():
            if not r.ok:
                raise InvalidHopfData(r.axiom, r.witness)
        return self


def _first_bad(got, want):
    bad = np.argwhere(got != want)
    return tuple(int(x) for x in bad[0]) if len(bad) else None


def group_algebra(F: Field, cayley, name: str = "kG") -> HopfAlgebra:
    """Hopf algebra of a finite group given by its Cayley table
    (cayley[a, b] = index of the product)."""
    cayley = np.asarray(cayley, dtype=np.int64)
    d = cayley.shape[0]
    if cayley.shape != (d, d) or cayley.min() < 0 or cayley.max() >= d:
        raise NotAGroup("table is not a square array of element indices", None)
    # two-sided identity
    ident = None
    for e in range(d):
        if np.array_equal(cayley[e], np.arange(d)) and np.array_equal(cayley[:, e], np.arange(d)):
            ident = e
            break
    if ident is None:
        raise NotAGroup("no two-sided identity", None)
    if ident != 0:
        raise NotAGroup("identity must be element 0", (ident,))
    inverse = np.full(d, -1, dtype=np.int64)
    for a in range(d):
        hits = np.flatnonzero(cayley[a] == 0)
        if len(hits) != 1 or cayley[hits[0], a] != 0:
            raise NotAGroup("no unique two-sided inverse", (a,))
        inverse[a] = hits[0]
    assoc = cayley[cayley, :] == cayley[:, cayley]
    if not assoc.all():
        a, b, c = (int(x) for x in np.argwhere(~assoc)[0])
        raise NotAGroup("associativity fails", (a, b, c))

    mult = np.zeros((d, d, d), dtype=np.int64)
    comult = np.zeros((d, d, d), dtype=np.int64)
    antipode = np.zeros((d, d), dtype=np.int64)
    mult[np.arange(d)[:, None], np.arange(d)[None, :], cayley] = 1
    rng_idx = np.arange(d)
    comult[rng_idx, rng_idx, rng_idx] = 1
    antipode[inverse, rng_idx] = 1
    unit = np.zeros(d, dtype=np.int64)
    unit[0] = 1
    counit = np.ones(d, dtype=np.int64)
    return HopfAlgebra(F, mult, comult, unit, counit, antipode, name=name)


def dual_hopf(H: HopfAlgebra, name: str | None = None) -> HopfAlgebra:
    """Dual Hopf algebra on the dual basis: multiplication from the
    comultiplication and vice versa, transposed antipode."""
    mult = np.ascontiguousarray(H.comult.transpose(1, 2, 0))
    comult = np.ascontiguousarray(H.mult.transpose(2, 0, 1))
    return HopfAlgebra(
        H.field,
        mult,
        comult,
        H.counit.copy(),
        H.unit.copy(),
        np.ascontiguousarray(H.antipode.T),
        name=name or f"dual-{H.name}",
    )


def change_field(H: HopfAlgebra, emb: Embedding) -> HopfAlgebra:
    """Re-encode the structure constants along a field embedding."""
    return HopfAlgebra(
        emb.dst,
        emb(H.mult),
        emb(H.comult),
        emb(H.unit),
        emb(H.counit),
        emb(H.antipode),
        name=H.name,
    )


def is_commutative(H: HopfAlgebra) -> bool:
    return bool(np.array_equal(H.mult, H.mult.transpose(1, 0, 2)))


def is_cocommutative(H: HopfAlgebra) -> bool:
    return bool(np.array_equal(H.comult, H.comult.transpose(0, 2, 1)))
