"""Kernel backend selection.

Two interchangeable implementations of the hot structure-tensor scans
live here: a numba one (zero-skip jitted loops) and a pure-numpy one
(sorted-join sparse contractions).  HOPFUSION_BACKEND picks one:

    numba  -- require numba, error if it cannot be imported
    numpy  -- force the fallback
    auto   -- numba when importable, else numpy (the default)

Both return identical witnesses, which the tests assert.
"""

import importlib
import os

import numpy as np

_MODULES = {}


def _load(name):
    if name not in _MODULES:
        _MODULES[name] = importlib.import_module(f"{__name__}.{name}_backend")
    return _MODULES[name]


def backend_name() -> str:
    """Resolve the active backend name from HOPFUSION_BACKEND."""
    choice = os.environ.get("HOPFUSION_BACKEND", "auto").strip().lower()
    if choice in ("numba", "numpy"):
        return choice
    if choice and choice != "auto":
        raise ValueError(f"HOPFUSION_BACKEND must be numba, numpy or auto, got {choice!r}")
    try:
        _load("numba")
        return "numba"
    except ImportError:
        return "numpy"


def get_backend():
    return _load(backend_name())


def _args(t):
    return t.p, t.pows, t.exp, t.log, t.zech, t.zneg, t.neg


def _tensor(a):
    return np.ascontiguousarray(a, dtype=np.int64)


def assoc_defect(t, M):
    """None if M is associative, else the first (a, b, c, x) witness."""
    w = get_backend().assoc_defect(*_args(t), _tensor(M))
    return None if w[0] < 0 else tuple(int(x) for x in w)


def coassoc_defect(t, C):
    """None if C is coassociative, else a witness whose last entry is
    the basis element where the two reassociations of the double
    comultiplication disagree."""
    w = get_backend().assoc_defect(*_args(t), _tensor(C.transpose(1, 2, 0)))
    return None if w[0] < 0 else tuple(int(x) for x in w)


def bialgebra_defect(t, M, C):
    """None if comultiplication is multiplicative, else the first (a, b)
    pair where it fails."""
    w = get_backend().bialgebra_defect(*_args(t), _tensor(M), _tensor(C))
    return None if w[0] < 0 else tuple(int(x) for x in w)


def antipode_defect(t, M, C, S, unit, counit):
    """None if S satisfies both convolution-inverse laws, else (a, side)
    with side 0 for the left law and 1 for the right."""
    w = get_backend().antipode_defect(
        *_args(t), _tensor(M), _tensor(C), _tensor(S), _tensor(unit), _tensor(counit)
    )
    return None if w[0] < 0 else tuple(int(x) for x in w)
