"""Cayley tables for the small groups shipped with the package.

Element 0 is always the identity.  Tables are plain int64 arrays with
cayley[a, b] = index of the product of elements a and b.
"""

import numpy as np


def cyclic(n: int) -> np.ndarray:
    a = np.arange(n)
    return (a[:, None] + a[None, :]) % n


def _from_perms(perms) -> np.ndarray:
    """Cayley table of a list of permutations closed under composition
    (entry [a, b] = index of perm_a after perm_b acting left-to-right:
    the group operation is a*b = compose(a, b))."""
    perms = [tuple(p) for p in perms]
    index = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    table = np.zeros((n, n), dtype=np.int64)
    for i, a in enumerate(perms):
        for j, b in enumerate(perms):
            prod = tuple(a[b[x]] for x in range(len(a)))
            table[i, j] = index[prod]
    return table


def symmetric3() -> np.ndarray:
    """S3 as permutations of {0,1,2}; identity first, then the two
    3-cycles, then the three transpositions."""
    perms = [
        (0, 1, 2),
        (1, 2, 0),
        (2, 0, 1),
        (1, 0, 2),
        (0, 2, 1),
        (2, 1, 0),
    ]
    return _from_perms(perms)


def dihedral4() -> np.ndarray:
    """D4, the symmetries of a square: rotations r^0..r^3 then
    reflections s, sr, sr^2, sr^3 acting on vertices (0,1,2,3)."""
    r = (1, 2, 3, 0)
    s = (0, 3, 2, 1)

    def compose(a, b):
        return tuple(a[b[x]] for x in range(4))

    def power(p, e):
        out = (0, 1, 2, 3)
        for _ in range(e):
            out = compose(out, p)
        return out

    perms = [power(r, i) for i in range(4)] + [compose(s, power(r, i)) for i in range(4)]
    return _from_perms(perms)
