"""Simple undirected graphs stored as packed adjacency bitrows, plus generators.

Row ``i`` of a :class:`Graph` is a Python ``int`` whose bit ``j`` is set iff
``{i, j}`` is an edge.  Python integers give arbitrary-width bitsets with
fast ``&``/``|``/``bit_count``, which is what the clique search, complement
and degree counting want.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator

import numpy as np

from ._backend import backend
from .errors import (
    CycleTooSmall,
    GraphError,
    InfeasibleDegree,
    InvalidPartCount,
    InvalidProbability,
    RetryBudgetExhausted,
    TooLarge,
)

MAX_VERTICES = 10_000
MAX_ENUMERATE = 7
RANDOM_REGULAR_RETRIES = 200_000


def _popcount(x: int) -> int:
    return x.bit_count()


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices ``0..n-1``."""

    n: int
    rows: tuple[int, ...]
    m: int = field(default=-1, compare=False)

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_VERTICES:
            raise GraphError(f"vertex count {self.n} outside [0, {MAX_VERTICES}]")
        if len(self.rows) != self.n:
            raise GraphError("need exactly one bitrow per vertex")
        full = (1 << self.n) - 1
        twice_m = 0
        for i, row in enumerate(self.rows):
            if row < 0 or row & ~full:
                raise GraphError(f"row {i} has bits outside the vertex range")
            if (row >> i) & 1:
                raise GraphError(f"self-loop at vertex {i}")
            twice_m += _popcount(row)
        a = self._matrix
        if not np.array_equal(a, a.T):
            i, j = (int(k[0]) for k in np.nonzero(a != a.T))
            raise GraphError(f"asymmetric adjacency at ({i}, {j})")
        if self.m == -1:
            object.__setattr__(self, "m", twice_m // 2)
        elif 2 * self.m != twice_m:
            raise GraphError("cached edge count disagrees with the bitrows")

    # construction -------------------------------------------------------
    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for i, j in edges:
            if i == j:
                raise GraphError(f"self-loop at vertex {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise GraphError(f"edge ({i}, {j}) outside vertex range")
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return cls(n, tuple(rows))

    @classmethod
    def from_matrix(cls, a) -> "Graph":
        a = np.asarray(a)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise GraphError("adjacency matrix must be square")
        bits = (a != 0).astype(np.uint8)
        n = bits.shape[0]
        if n == 0:
            return cls(0, ())
        packed = np.packbits(bits, axis=1, bitorder="little")
        rows = tuple(int.from_bytes(packed[i].tobytes(), "little") for i in range(n))
        return cls(n, rows)

    # views --------------------------------------------------------------
    @cached_property
    def _matrix(self) -> np.ndarray:
        n = self.n
        nbytes = (n + 7) // 8
        buf = b"".join(r.to_bytes(nbytes, "little") for r in self.rows)
        flat = np.frombuffer(buf, dtype=np.uint8).reshape(n, nbytes)
        a = np.unpackbits(flat, axis=1, bitorder="little")[:, :n]
        a = np.ascontiguousarray(a)
        a.flags.writeable = False
        return a

    def adjacency(self, dtype=np.float64) -> np.ndarray:
        """Dense adjacency matrix (a fresh array of ``dtype``)."""
        return self._matrix.astype(dtype)

    def has_edge(self, i: int, j: int) -> bool:
        return bool((self.rows[i] >> j) & 1)

    def degree(self, i: int) -> int:
        return _popcount(self.rows[i])

    def neighbors(self, i: int) -> list[int]:
        out = []
        r = self.rows[i]
        while r:
            low = r & -r
            out.append(low.bit_length() - 1)
            r ^= low
        return out

    def edges(self) -> Iterator[tuple[int, int]]:
        """Unordered edges ``(i, j)`` with ``i < j`` in row-major order."""
        for i, row in enumerate(self.rows):
            r = row >> (i + 1)
            j = i + 1
            while r:
                if r & 1:
                    yield i, j
                r >>= 1
                j += 1

    def relabel(self, perm) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph.from_edges(self.n, ((perm[i], perm[j]) for i, j in self.edges()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class GraphStats:
    degrees: tuple[int, ...]
    regular_degree: int | None
    components: tuple[tuple[int, ...], ...]
    is_complete: bool

    @property
    def connected(self) -> bool:
        return len(self.components) == 1


def graph_stats(g: Graph) -> GraphStats:
    degrees = tuple(g.degree(i) for i in range(g.n))
    regular = degrees[0] if degrees and all(d == degrees[0] for d in degrees) else None
    seen = [False] * g.n
    components = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in g.neighbors(u):
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    queue.append(v)
        components.append(tuple(sorted(comp)))
    return GraphStats(
        degrees=degrees,
        regular_degree=regular,
        components=tuple(components),
        is_complete=g.m == g.n * (g.n - 1) // 2,
    )


def induced_subgraph(g: Graph, vertices) -> Graph:
    vs = list(vertices)
    index = {v: k for k, v in enumerate(vs)}
    edges = [(index[i], index[j]) for i in vs for j in g.neighbors(i) if j in index and i < j]
    return Graph.from_edges(len(vs), edges)


# generators -------------------------------------------------------------
def gen_turan(n: int, w: int) -> Graph:
    """Balanced complete ``w``-partite graph on ``n`` vertices.

    Parts are consecutive label blocks, the larger parts first.
    """
    if w < 1 or w > n:
        raise InvalidPartCount(f"part count {w} must satisfy 1 <= w <= n = {n}")
    q, rem = divmod(n, w)
    part = []
    for k in range(w):
        part.extend([k] * (q + (1 if k < rem else 0)))
    full = (1 << n) - 1
    masks = [0] * w
    for v, k in enumerate(part):
        masks[k] |= 1 << v
    return Graph(n, tuple(full & ~masks[part[v]] for v in range(n)))


def gen_named(family: str, n: int = 0) -> Graph:
    if family == "petersen":
        outer = [(i, (i + 1) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        return Graph.from_edges(10, outer + spokes + inner)
    if n < 1:
        raise GraphError(f"{family} needs n >= 1")
    if family == "path":
        return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
    if family == "cycle":
        if n < 3:
            raise CycleTooSmall(f"cycle needs n >= 3, got {n}")
        return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])
    if family == "complete":
        full = (1 << n) - 1
        return Graph(n, tuple(full & ~(1 << i) for i in range(n)))
    if family == "empty":
        return Graph(n, (0,) * n)
    raise GraphError(f"unknown graph family {family!r}")


def _pairing_attempt(rng: np.random.Generator, stubs: np.ndarray, n: int):
    perm = rng.permutation(stubs).reshape(-1, 2)
    u, v = perm[:, 0], perm[:, 1]
    if np.any(u == v):
        return None
    lo = np.minimum(u, v)
    hi = np.maximum(u, v)
    keys = np.sort(lo * n + hi)
    if np.any(keys[1:] == keys[:-1]):
        return None
    return lo, hi


def gen_random_regular(n: int, d: int, seed: int, max_tries: int = RANDOM_REGULAR_RETRIES) -> Graph:
    """Uniform simple ``d``-regular graph via the pairing model with rejection.

    When ``d > (n - 1) / 2`` the complement degree ``n - 1 - d`` is sampled
    instead; complementation is a bijection between the two sets of simple
    regular graphs, so the output stays uniform.
    """
    if n < 1 or d < 0 or d >= n or (n * d) % 2:
        raise InfeasibleDegree(f"no simple {d}-regular graph on {n} vertices")
    flip = 2 * d > n - 1
    k = n - 1 - d if flip else d
    rng = np.random.default_rng(seed)
    if k == 0:
        g = Graph(n, (0,) * n)
        return complement(g) if flip else g
    stubs = np.repeat(np.arange(n, dtype=np.int64), k)
    for _ in range(max_tries):
        pairs = _pairing_attempt(rng, stubs, n)
        if pairs is None:
            continue
        rows = [0] * n
        for i, j in zip(pairs[0].tolist(), pairs[1].tolist()):
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        g = Graph(n, tuple(rows))
        return complement(g) if flip else g
    raise RetryBudgetExhausted(
        f"no simple pairing for (n={n}, d={k}) after {max_tries} attempts"
    )


def upper_pairs(n: int) -> list[tuple[int, int]]:
    """Upper-triangle pairs in column-major (graph6) order: (0,1),(0,2),(1,2),(0,3),..."""
    return [(i, j) for j in range(1, n) for i in range(j)]


def gen_gnp(n: int, p: float, seed: int) -> Graph:
    if not 0.0 <= p <= 1.0:
        raise InvalidProbability(f"p = {p} is not a probability")
    rng = np.random.default_rng(seed)
    jj, ii = np.tril_indices(n, -1)  # (i, j) with i < j, column-major like upper_pairs
    take = rng.random(ii.shape[0]) < p
    a = np.zeros((n, n), dtype=np.uint8)
    a[ii[take], jj[take]] = 1
    return Graph.from_matrix(a | a.T)


def disjoint_union(a: Graph, b: Graph) -> Graph:
    shift = a.n
    return Graph(a.n + b.n, a.rows + tuple(r << shift for r in b.rows), a.m + b.m)


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full & ~r & ~(1 << i) for i, r in enumerate(g.rows)))


def graph_from_code(n: int, code: int) -> Graph:
    """The ``code``-th labeled graph in :func:`enumerate_labeled` order."""
    pairs = upper_pairs(n)
    top = len(pairs) - 1
    rows = [0] * n
    for t, (i, j) in enumerate(pairs):
        if (code >> (top - t)) & 1:
            rows[i] |= 1 << j
            rows[j] |= 1 << i
    return Graph(n, tuple(rows))


def labeled_codes(n: int, regular_only: bool = False) -> np.ndarray:
    """Enumeration indices of all (or only the regular) labeled graphs on ``n`` vertices."""
    if n > MAX_ENUMERATE:
        raise TooLarge(f"labeled enumeration capped at n = {MAX_ENUMERATE}")
    if n < 1:
        raise GraphError("enumeration needs n >= 1")
    total = 1 << (n * (n - 1) // 2)
    if not regular_only:
        return np.arange(total, dtype=np.int64)
    return backend.regular_codes(n)


def enumerate_labeled(n: int) -> Iterator[Graph]:
    """Every labeled simple graph on ``n`` vertices, ordered by its upper-triangle bit string.

    The bit string lists pairs in graph6 order with the first pair most
    significant, so the ``k``-th graph yielded has code ``k``.
    """
    for code in labeled_codes(n).tolist():
        yield graph_from_code(n, code)

