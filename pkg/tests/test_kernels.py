import numpy as np
import pytest

from hopfusion import backends
from hopfusion.backends import numpy_backend
from hopfusion.field import gf_construct

numba_backend = pytest.importorskip("hopfusion.backends.numba_backend")


def cyclic_group_tensors(d):
    """Multiplication, comultiplication, antipode, unit and counit of
    the algebra spanned by a cyclic group of order d."""
    M = np.zeros((d, d, d), np.int64)
    C = np.zeros((d, d, d), np.int64)
    S = np.zeros((d, d), np.int64)
    for a in range(d):
        for b in range(d):
            M[a, b, (a + b) % d] = 1
        C[a, a, a] = 1
        S[(-a) % d, a] = 1
    unit = np.zeros(d, np.int64)
    unit[0] = 1
    counit = np.ones(d, np.int64)
    return M, C, S, unit, counit


FIELD = gf_construct(5, 2)
T = FIELD.tables


def both(fn_name, *args):
    a = getattr(numba_backend, fn_name)(T.p, T.pows, T.exp, T.log, T.zech, T.zneg, T.neg, *args)
    b = getattr(numpy_backend, fn_name)(T.p, T.pows, T.exp, T.log, T.zech, T.zneg, T.neg, *args)
    return list(a), list(b)


def test_group_algebra_has_no_defects():
    M, C, S, unit, counit = cyclic_group_tensors(4)
    a, b = both("assoc_defect", M)
    assert a == b == [-1, -1, -1, -1]
    a, b = both("assoc_defect", np.ascontiguousarray(C.transpose(1, 2, 0)))
    assert a == b == [-1, -1, -1, -1]
    a, b = both("bialgebra_defect", M, C)
    assert a == b == [-1, -1]
    a, b = both("antipode_defect", M, C, S, unit, counit)
    assert a == b == [-1, -1]


def test_perturbed_tensors_agree_on_witness():
    rng = np.random.default_rng(11)
    for _ in range(25):
        M, C, S, unit, counit = cyclic_group_tensors(4)
        which = rng.integers(0, 3)
        tgt = (M, C, S)[which]
        idx = tuple(rng.integers(0, s) for s in tgt.shape)
        tgt[idx] = (tgt[idx] + 1 + rng.integers(0, FIELD.q - 1)) % FIELD.q
        wa, wb = both("assoc_defect", M)
        assert wa == wb
        wa, wb = both("bialgebra_defect", M, C)
        assert wa == wb
        wa, wb = both("antipode_defect", M, C, S, unit, counit)
        assert wa == wb


def test_random_tensors_agree():
    rng = np.random.default_rng(23)
    for _ in range(10):
        d = int(rng.integers(2, 6))
        M = rng.integers(0, FIELD.q, size=(d, d, d))
        M[rng.random(M.shape) < 0.6] = 0
        C = rng.integers(0, FIELD.q, size=(d, d, d))
        C[rng.random(C.shape) < 0.6] = 0
        wa, wb = both("assoc_defect", M)
        assert wa == wb
        wa, wb = both("bialgebra_defect", M, C)
        assert wa == wb


def test_dispatch_env_flag(monkeypatch):
    monkeypatch.setenv("HOPFUSION_BACKEND", "numpy")
    assert backends.backend_name() == "numpy"
    assert backends.get_backend() is numpy_backend
    monkeypatch.setenv("HOPFUSION_BACKEND", "numba")
    assert backends.backend_name() == "numba"
    monkeypatch.setenv("HOPFUSION_BACKEND", "bogus")
    with pytest.raises(ValueError):
        backends.backend_name()
    monkeypatch.delenv("HOPFUSION_BACKEND")
    assert backends.backend_name() in ("numba", "numpy")


def test_wrapper_reports_witness_tuples():
    M, C, S, unit, counit = cyclic_group_tensors(3)
    assert backends.assoc_defect(T, M) is None
    assert backends.coassoc_defect(T, C) is None
    assert backends.bialgebra_defect(T, M, C) is None
    assert backends.antipode_defect(T, M, C, S, unit, counit) is None
    M[1, 1, 0] = 3
    w = backends.assoc_defect(T, M)
    assert w is not None and len(w) == 4
