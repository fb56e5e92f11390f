"""Pure-Python/numpy versions of the kernels in ``_core.pyx``.

Same signatures and return conventions.  The Jacobi solver here uses a
round-robin (tournament) ordering so that each round applies ``n/2``
disjoint rotations as one vectorised numpy update; a sweep still visits
every off-diagonal pair exactly once.
"""
from __future__ import annotations

import numpy as np


def _round_robin(m: int):
    players = list(range(m))
    for _ in range(m - 1):
        yield [(players[k], players[m - 1 - k]) for k in range(m // 2)]
        players = [players[0], players[-1]] + players[1:-1]


def jacobi_eigh(a_in, tol: float = 1e-12, max_sweeps: int = 100):
    a = np.array(a_in, dtype=np.float64, copy=True)
    n = a.shape[0]
    v = np.eye(n)
    thresh = tol * (1.0 + np.sqrt(np.sum(a * a)))
    m = n + (n % 2)
    rounds = []
    for pairs in _round_robin(m):
        pairs = [(min(p, q), max(p, q)) for p, q in pairs if p < n and q < n]
        if pairs:
            arr = np.array(pairs, dtype=np.intp)
            rounds.append((arr[:, 0], arr[:, 1]))
    sweep = 0
    converged = False
    while True:
        off = np.sqrt(2.0 * np.sum(np.triu(a, 1) ** 2))
        if off <= thresh:
            converged = True
            break
        if sweep >= max_sweeps:
            break
        sweep += 1
        for P, Q in rounds:
            apq = a[P, Q]
            live = np.abs(apq) >= 1e-300
            if not live.any():
                continue
            P, Q, apq = P[live], Q[live], apq[live]
            theta = (a[Q, Q] - a[P, P]) / (2.0 * apq)
            t = 1.0 / (np.abs(theta) + np.hypot(theta, 1.0))
            t = np.where(theta < 0.0, -t, t)
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            cc, ss = c[:, None], s[:, None]
            rp, rq = a[P, :], a[Q, :]
            a[P, :] = cc * rp - ss * rq
            a[Q, :] = ss * rp + cc * rq
            cp, cq = a[:, P], a[:, Q]
            a[:, P] = cp * c - cq * s
            a[:, Q] = cp * s + cq * c
            a[P, Q] = 0.0
            a[Q, P] = 0.0
            vp, vq = v[:, P], v[:, Q]
            v[:, P] = vp * c - vq * s
            v[:, Q] = vp * s + vq * c
    return np.diag(a).copy(), v, sweep, float(off), converged


def max_clique(adjacency):
    a = np.asarray(adjacency) != 0
    n = a.shape[0]
    if n == 0:
        return 0, []
    deg = a.sum(axis=1)
    perm = sorted(range(n), key=lambda v: (-int(deg[v]), v))
    adj = []
    for i in range(n):
        row = 0
        for j in range(n):
            if i != j and a[perm[i], perm[j]]:
                row |= 1 << j
        adj.append(row)

    best: list[int] = []
    cur: list[int] = []

    def expand(P: int) -> None:
        nonlocal best
        order, colors = [], []
        U, color = P, 0
        while U:
            color += 1
            Q = U
            while Q:
                low = Q & -Q
                v = low.bit_length() - 1
                Q &= ~adj[v] & ~low
                U &= ~low
                order.append(v)
                colors.append(color)
        for k in range(len(order) - 1, -1, -1):
            if len(cur) + colors[k] <= len(best):
                return
            v = order[k]
            cur.append(v)
            NP = P & adj[v]
            if not NP:
                if len(cur) > len(best):
                    best = cur.copy()
            else:
                expand(NP)
            cur.pop()
            P &= ~(1 << v)

    expand((1 << n) - 1)
    return len(best), sorted(perm[v] for v in best)


def regular_codes(n: int) -> np.ndarray:
    L = n * (n - 1) // 2
    codes = np.arange(1 << L, dtype=np.int64)
    deg = np.zeros((n, codes.size), dtype=np.int8)
    t = 0
    for j in range(1, n):
        for i in range(j):
            bit = ((codes >> (L - 1 - t)) & 1).astype(np.int8)
            deg[i] += bit
            deg[j] += bit
            t += 1
    return codes[np.all(deg == deg[0], axis=0)]
