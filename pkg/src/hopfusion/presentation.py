"""Reading and writing structure-constant presentation files.

The format is line oriented UTF-8.  The first non-blank line is

    hopf-sc v1 p=<prime> k=<ext-degree> dim=<dimension>

after which either the five tensor sections appear, in any order,
each introduced by its bare keyword on its own line:

    MULT        lines `a b c coeffs`   e_a e_b has coefficient at e_c
    COMULT      lines `a r s coeffs`   coefficient of e_r (x) e_s
    UNIT        lines `i coeffs`
    COUNIT      lines `i coeffs`
    ANTIPODE    lines `r c coeffs`     coefficient of e_r in S(e_c)

or a generator stanza:

    GROUP kind=<group_algebra|dual_group_algebra>
    CAYLEY
    <dim rows of dim whitespace-separated element indices>

Coefficients are comma-separated residues, constant digit first, one
digit per extension-power ("3" or "3,1"); omitted entries are zero.
Blank lines are ignored and `#` starts a comment anywhere on a line.
"""

from dataclasses import dataclass

import numpy as np

from .errors import PresentationError
from .field import Field, gf_construct
from .gftables import is_prime
from .hopf import HopfAlgebra, dual_hopf, group_algebra

__all__ = ["Presentation", "parse_presentation", "read_presentation",
           "build_hopf", "render_presentation"]

TENSOR_SECTIONS = ("MULT", "COMULT", "UNIT", "COUNIT", "ANTIPODE")
GROUP_KINDS = ("group_algebra", "dual_group_algebra")


@dataclass(frozen=True)
class Presentation:
    """Parsed presentation: either five tensors or a Cayley stanza."""

    p: int
    k: int
    dim: int
    kind: str  # "tensors" | "group_algebra" | "dual_group_algebra"
    tensors: dict | None = None
    cayley: np.ndarray | None = None


def _clean_lines(text):
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield ln, line


def _parse_header(ln, line):
    parts = line.split()
    if len(parts) != 5 or parts[0] != "hopf-sc" or parts[1] != "v1":
        raise PresentationError(f"line {ln}: bad header {line!r}")
    vals = {}
    for part, key in zip(parts[2:], ("p", "k", "dim")):
        if not part.startswith(key + "="):
            raise PresentationError(f"line {ln}: expected {key}=..., got {part!r}")
        try:
            vals[key] = int(part[len(key) + 1:])
        except ValueError:
            raise PresentationError(f"line {ln}: {part!r} is not an integer") from None
    if not is_prime(vals["p"]):
        raise PresentationError(f"line {ln}: p={vals['p']} is not prime")
    if vals["k"] < 1 or vals["dim"] < 1:
        raise PresentationError(f"line {ln}: k and dim must be positive")
    return vals["p"], vals["k"], vals["dim"]


def _parse_coeffs(ln, token, p, k):
    parts = token.split(",")
    if len(parts) > k:
        raise PresentationError(f"line {ln}: {len(parts)} digits exceed k={k}")
    code = 0
    for i, part in enumerate(parts):
        try:
            digit = int(part)
        except ValueError:
            raise PresentationError(f"line {ln}: bad coefficient {part!r}") from None
        if not 0 <= digit < p:
            raise PresentationError(f"line {ln}: digit {digit} out of range [0,{p})")
        code += digit * p**i
    return code


def _parse_index(ln, token, dim):
    try:
        ix = int(token)
    except ValueError:
        raise PresentationError(f"line {ln}: bad index {token!r}") from None
    if not 0 <= ix < dim:
        raise PresentationError(f"line {ln}: index {ix} out of range [0,{dim})")
    return ix


def parse_presentation(text: str) -> Presentation:
    lines = list(_clean_lines(text))
    if not lines:
        raise PresentationError("empty presentation")
    p, k, dim = _parse_header(*lines[0])

    body = lines[1:]
    if not body:
        raise PresentationError("missing sections after the header")

    if body[0][1].startswith("GROUP"):
        return _parse_group(body, p, k, dim)
    return _parse_tensors(body, p, k, dim)


def _parse_group(body, p, k, dim):
    ln, line = body[0]
    parts = line.split()
    if len(parts) != 2 or not parts[1].startswith("kind="):
        raise PresentationError(f"line {ln}: GROUP wants kind=<...>")
    kind = parts[1][5:]
    if kind not in GROUP_KINDS:
        raise PresentationError(f"line {ln}: unknown kind {kind!r}")
    if len(body) < 2 or body[1][1] != "CAYLEY":
        raise PresentationError("GROUP stanza wants a CAYLEY block")
    rows = body[2:]
    if len(rows) != dim:
        raise PresentationError(f"CAYLEY wants {dim} rows, found {len(rows)}")
    cay = np.zeros((dim, dim), dtype=np.int64)
    for r, (ln, line) in enumerate(rows):
        toks = line.split()
        if len(toks) != dim:
            raise PresentationError(f"line {ln}: row wants {dim} entries")
        for c, tok in enumerate(toks):
            cay[r, c] = _parse_index(ln, tok, dim)
    return Presentation(p=p, k=k, dim=dim, kind=kind, cayley=cay)


def _parse_tensors(body, p, k, dim):
    sections = {}
    current = None
    for ln, line in body:
        if line in TENSOR_SECTIONS:
            if line in sections:
                raise PresentationError(f"line {ln}: duplicate section {line}")
            current = line
            sections[current] = []
            continue
        if current is None:
            raise PresentationError(f"line {ln}: data before any section")
        sections[current].append((ln, line))
    missing = [s for s in TENSOR_SECTIONS if s not in sections]
    if missing:
        raise PresentationError("missing sections: " + ", ".join(missing))

    arity = {"MULT": 3, "COMULT": 3, "UNIT": 1, "COUNIT": 1, "ANTIPODE": 2}
    shapes = {
        "MULT": (dim, dim, dim),
        "COMULT": (dim, dim, dim),
        "UNIT": (dim,),
        "COUNIT": (dim,),
        "ANTIPODE": (dim, dim),
    }
    tensors = {}
    for name in TENSOR_SECTIONS:
        arr = np.zeros(shapes[name], dtype=np.int64)
        for ln, line in sections[name]:
            toks = line.split()
            if len(toks) != arity[name] + 1:
                raise PresentationError(
                    f"line {ln}: {name} wants {arity[name]} indices and a value")
            ixs = tuple(_parse_index(ln, tok, dim) for tok in toks[:-1])
            arr[ixs] = _parse_coeffs(ln, toks[-1], p, k)
        tensors[name.lower()] = arr
    return Presentation(p=p, k=k, dim=dim, kind="tensors", tensors=tensors)


def read_presentation(path) -> Presentation:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise PresentationError(f"cannot read {path}: {exc}") from None
    return parse_presentation(text)


def build_hopf(pres: Presentation, name: str = "H") -> HopfAlgebra:
    """Instantiate the presented object over GF(p^k)."""
    F = gf_construct(pres.p, pres.k)
    if pres.kind == "tensors":
        tn = pres.tensors
        return HopfAlgebra(
            field=F,
            mult=tn["mult"],
            comult=tn["comult"],
            unit=tn["unit"],
            counit=tn["counit"],
            antipode=tn["antipode"],
            name=name,
        )
    H = group_algebra(F, pres.cayley, name=name)
    if pres.kind == "dual_group_algebra":
        H = dual_hopf(H, name=name)
    return H


def _coeff_token(code: int, p: int, k: int) -> str:
    digits = []
    c = code
    for _ in range(k):
        digits.append(str(c % p))
        c //= p
    while len(digits) > 1 and digits[-1] == "0":
        digits.pop()
    return ",".join(digits)


def render_presentation(H: HopfAlgebra) -> str:
    """Presentation text for an algebra (tensor form, sparse lines)."""
    F = H.field
    p, k, dim = F.p, F.k, H.dim
    out = [f"hopf-sc v1 p={p} k={k} dim={dim}"]
    tensors = [
        ("MULT", H.mult),
        ("COMULT", H.comult),
        ("UNIT", H.unit),
        ("COUNIT", H.counit),
        ("ANTIPODE", H.antipode),
    ]
    for name, arr in tensors:
        out.append(name)
        for ixs in np.argwhere(arr != 0):
            code = int(arr[tuple(ixs)])
            out.append(" ".join(str(int(i)) for i in ixs) + " " + _coeff_token(code, p, k))
    return "\n".join(out) + "\n"
