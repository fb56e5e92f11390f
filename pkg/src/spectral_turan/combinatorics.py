"""Exact clique and chromatic numbers."""
from __future__ import annotations

from dataclasses import dataclass

from ._backend import backend
from .errors import GraphError, TooLarge
from .graph import Graph

CHROMATIC_MAX_N = 64


@dataclass(frozen=True)
class CliqueResult:
    omega: int
    witness: tuple[int, ...]


@dataclass(frozen=True)
class ChromaticResult:
    chi: int
    coloring: tuple[int, ...]  # coloring[v] in range(chi)


def _greedy_colour_count(rows, cand: int) -> int:
    colours = 0
    while cand:
        colours += 1
        q = cand
        while q:
            low = q & -q
            v = low.bit_length() - 1
            q &= ~rows[v] & ~low
            cand &= ~low
    return colours


def _lex_least_clique(g: Graph, size: int) -> tuple[int, ...] | None:
    """Lexicographically least clique of exactly ``size`` vertices, if any."""
    rows = g.rows

    def search(clique: list[int], cand: int):
        if len(clique) == size:
            return tuple(clique)
        need = size - len(clique)
        if cand.bit_count() < need or _greedy_colour_count(rows, cand) < need:
            return None
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            clique.append(v)
            found = search(clique, cand & rows[v])
            clique.pop()
            if found:
                return found
            if cand.bit_count() < need:
                return None
        return None

    return search([], (1 << g.n) - 1)


def max_clique(g: Graph, kernel=None) -> CliqueResult:
    """Clique number by branch and bound, with the lexicographically least maximum clique.

    The size comes from the colouring-bounded search in the kernel; the
    witness is then recomputed by an ascending-label search for a clique of
    that size so it does not depend on the search order.
    """
    if g.n < 1:
        raise GraphError("max_clique needs at least one vertex")
    omega, _ = (kernel or backend).max_clique(g.adjacency(dtype=bool))
    witness = _lex_least_clique(g, omega)
    assert witness is not None and len(witness) == omega
    return CliqueResult(omega, witness)


def is_clique(g: Graph, vertices) -> bool:
    vs = list(vertices)
    return all(g.has_edge(a, b) for k, a in enumerate(vs) for b in vs[k + 1:])


def is_proper_coloring(g: Graph, coloring) -> bool:
    return all(coloring[i] != coloring[j] for i, j in g.edges())


def _dsatur(g: Graph) -> list[int]:
    n = g.n
    colour = [-1] * n
    seen = [0] * n  # bitmask of colours among neighbours
    for _ in range(n):
        v = max(
            (u for u in range(n) if colour[u] < 0),
            key=lambda u: (seen[u].bit_count(), g.degree(u), -u),
        )
        c = 0
        while (seen[v] >> c) & 1:
            c += 1
        colour[v] = c
        for u in g.neighbors(v):
            seen[u] |= 1 << c
    return colour


def _k_colouring(g: Graph, k: int, clique: tuple[int, ...]) -> list[int] | None:
    n = g.n
    colour = [-1] * n
    seen = [0] * n
    nbrs = [g.neighbors(v) for v in range(n)]

    def assign(v: int, c: int) -> list[int]:
        colour[v] = c
        touched = []
        bit = 1 << c
        for u in nbrs[v]:
            if not seen[u] & bit:
                seen[u] |= bit
                touched.append(u)
        return touched

    def undo(v: int, c: int, touched: list[int]) -> None:
        colour[v] = -1
        bit = ~(1 << c)
        for u in touched:
            seen[u] &= bit

    # symmetry breaking: the clique takes colours 0..|clique|-1
    for c, v in enumerate(clique):
        assign(v, c)
    remaining = n - len(clique)

    def solve(left: int, used: int) -> bool:
        if left == 0:
            return True
        best, key = -1, None
        for u in range(n):
            if colour[u] < 0:
                kk = (seen[u].bit_count(), len(nbrs[u]))
                if key is None or kk > key:
                    best, key = u, kk
        v = best
        for c in range(min(used + 1, k)):
            if (seen[v] >> c) & 1:
                continue
            touched = assign(v, c)
            if solve(left - 1, max(used, c + 1)):
                return True
            undo(v, c, touched)
        return False

    return colour if solve(remaining, len(clique)) else None


def chromatic_number(g: Graph) -> ChromaticResult:
    """Exact chromatic number by iterative deepening from the clique number."""
    if g.n > CHROMATIC_MAX_N:
        raise TooLarge(f"exact colouring capped at n = {CHROMATIC_MAX_N}")
    if g.n < 1:
        raise GraphError("chromatic_number needs at least one vertex")
    greedy = _dsatur(g)
    upper = max(greedy) + 1
    clique = max_clique(g)
    for k in range(clique.omega, upper):
        found = _k_colouring(g, k, clique.witness)
        if found is not None:
            return ChromaticResult(k, tuple(found))
    return ChromaticResult(upper, tuple(greedy))
