"""Independent reference computations used only by the tests.

Nothing here calls into the package's numerical kernels.
"""
from itertools import combinations, product

import numpy as np
import sympy


def edges_of(g):
    return [(i, j) for i in range(g.n) for j in range(i + 1, g.n) if (g.rows[i] >> j) & 1]


def dense(g):
    a = np.zeros((g.n, g.n))
    for i, j in edges_of(g):
        a[i, j] = a[j, i] = 1.0
    return a


def exact_spectrum(g):
    """Eigenvalues with multiplicities from the exact characteristic polynomial."""
    m = sympy.Matrix(g.n, g.n, lambda i, j: int((g.rows[i] >> j) & 1))
    lam = sympy.Symbol("lam")
    poly = m.charpoly(lam)
    out = []
    for root, mult in sympy.roots(poly, lam).items():
        out.extend([float(sympy.re(sympy.N(root, 30)))] * mult)
    return sorted(out, reverse=True)


def naive_clique_number(g):
    adj = {(i, j) for i, j in edges_of(g)}
    for size in range(g.n, 0, -1):
        for sub in combinations(range(g.n), size):
            if all((a, b) in adj for a, b in combinations(sub, 2)):
                return size
    return 0


def naive_chromatic_number(g):
    edges = edges_of(g)
    for k in range(1, g.n + 1):
        for colours in product(range(k), repeat=g.n - 1):
            col = (0,) + colours
            if all(col[i] != col[j] for i, j in edges):
                return k
    return g.n


def naive_triangles(g):
    adj = set(edges_of(g))
    return sum(1 for a, b, c in combinations(range(g.n), 3) if {(a, b), (a, c), (b, c)} <= adj)


def graph6_by_hand(g):
    """String-based graph6 encoder for n <= 62."""
    bits = "".join("1" if (g.rows[i] >> j) & 1 else "0" for j in range(1, g.n) for i in range(j))
    bits += "0" * ((-len(bits)) % 6)
    body = "".join(chr(int(bits[k:k + 6], 2) + 63) for k in range(0, len(bits), 6))
    return chr(g.n + 63) + body
