"""Independent brute-force oracles used to freeze expected values.

They expand classes into explicit lists of basis vectors and count, so they do
not share code paths with the sparse-map implementation.
"""

from collections import Counter
from itertools import product


def convolve_hodge(h1: dict, h2: dict) -> dict:
    """Hodge numbers of a tensor product by enumerating basis vector pairs."""
    v1 = [k for k, m in h1.items() for _ in range(m)]
    v2 = [k for k, m in h2.items() for _ in range(m)]
    return dict(Counter((a1 + a2, b1 + b2) for (a1, b1), (a2, b2) in product(v1, v2)))


def basis_vectors(table):
    """One (degree, coniveau step) label per basis vector of the cohomology."""
    out = []
    for (i, p), h in table.cells.items():
        for atom, m in h.items():
            out += [(i, p)] * (m * sum(n for _, n in atom.hodge))
    return out


def dim_N(table, i: int, p: int) -> int:
    """dim N^p H^i: basis vectors of degree i whose step is >= p (N^p = H for p <= 0)."""
    return sum(1 for (j, q) in basis_vectors(table) if j == i and q >= p)


def dim_Gr(table, i: int, p: int) -> int:
    return sum(1 for v in basis_vectors(table) if v == (i, p))


def betti(table) -> dict:
    return dict(Counter(i for i, _ in basis_vectors(table)))
