"""Built-in example inputs: group algebras and their duals.

Each entry maps a name to a default characteristic and a constructor
taking the base field.  Names accept an override suffix, e.g.
"kS3@p=11"; resolution and the hypothesis checks on p stay in the
pipeline.
"""

from __future__ import annotations

from .errors import InvalidInputError
from .field import Field
from .groups import cyclic, dihedral4, symmetric3
from .hopf import HopfAlgebra, dual_hopf, group_algebra

_TABLES = {
    "kC2": (cyclic(2), 5),
    "kC3": (cyclic(3), 5),
    "kC4": (cyclic(4), 5),
    "kS3": (symmetric3(), 7),
    "kD4": (dihedral4(), 7),
}


def builtin_names() -> list[str]:
    names = sorted(_TABLES)
    return names + [f"dual-{n}" for n in names]


def default_characteristic(name: str) -> int:
    base = name[5:] if name.startswith("dual-") else name
    if base not in _TABLES:
        raise InvalidInputError(f"unknown builtin {name!r}; known: {', '.join(builtin_names())}")
    return _TABLES[base][1]


def make_builtin(name: str, F: Field) -> HopfAlgebra:
    """Construct a named builtin over the given field."""
    dual = name.startswith("dual-")
    base = name[5:] if dual else name
    if base not in _TABLES:
        raise InvalidInputError(f"unknown builtin {name!r}; known: {', '.join(builtin_names())}")
    H = group_algebra(F, _TABLES[base][0], name=base)
    return dual_hopf(H, name=name) if dual else H


def parse_builtin_spec(spec: str) -> tuple[str, int]:
    """Split 'name' or 'name@p=P' into (name, characteristic)."""
    if "@" in spec:
        name, _, tail = spec.partition("@")
        if not tail.startswith("p="):
            raise InvalidInputError(f"builtin override must look like name@p=P, got {spec!r}")
        try:
            p = int(tail[2:])
        except ValueError as exc:
            raise InvalidInputError(f"bad characteristic in {spec!r}") from exc
        return name, p
    return spec, default_characteristic(spec)
