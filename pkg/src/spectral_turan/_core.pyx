# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: cyclic Jacobi eigensolver, bitset clique search, regular-code filter."""
import numpy as np
cimport numpy as cnp
from libc.math cimport fabs, sqrt
from libc.stdlib cimport malloc, free
from libc.string cimport memcpy
from libc.stdint cimport uint64_t, int64_t

cnp.import_array()


cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil
    int __builtin_popcountll(unsigned long long) nogil


def jacobi_eigh(a_in, double tol=1e-12, int max_sweeps=100):
    """Cyclic row-by-row Jacobi on a dense symmetric matrix.

    Returns ``(eigenvalues, eigenvectors_as_columns, sweeps, off_norm, converged)``;
    eigenvalues come back unsorted, in diagonal order.
    """
    cdef cnp.ndarray[cnp.float64_t, ndim=2] A_arr = np.array(a_in, dtype=np.float64, order="C", copy=True)
    cdef Py_ssize_t n = A_arr.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] V_arr = np.eye(n, dtype=np.float64)
    cdef double[:, ::1] A = A_arr
    cdef double[:, ::1] V = V_arr
    cdef Py_ssize_t p, q, k
    cdef double fro = 0.0, off, thresh, apq, theta, t, c, s, x, y
    cdef int sweep = 0
    cdef bint converged = False

    with nogil:
        for p in range(n):
            for q in range(n):
                fro += A[p, q] * A[p, q]
        thresh = tol * (1.0 + sqrt(fro))
        while True:
            off = 0.0
            for p in range(n):
                for q in range(p + 1, n):
                    off += A[p, q] * A[p, q]
            off = sqrt(2.0 * off)
            if off <= thresh:
                converged = True
                break
            if sweep >= max_sweeps:
                break
            sweep += 1
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = A[p, q]
                    if fabs(apq) < 1e-300:
                        continue
                    theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                    t = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                    c = 1.0 / sqrt(t * t + 1.0)
                    s = t * c
                    for k in range(n):
                        x = A[k, p]
                        y = A[k, q]
                        A[k, p] = c * x - s * y
                        A[k, q] = s * x + c * y
                    for k in range(n):
                        x = A[p, k]
                        y = A[q, k]
                        A[p, k] = c * x - s * y
                        A[q, k] = s * x + c * y
                    A[p, q] = 0.0
                    A[q, p] = 0.0
                    for k in range(n):
                        x = V[k, p]
                        y = V[k, q]
                        V[k, p] = c * x - s * y
                        V[k, q] = s * x + c * y
    return np.diagonal(A_arr).copy(), V_arr, sweep, off, bool(converged)


cdef struct CliqueCtx:
    int n
    int W
    uint64_t* adj
    int best
    int* best_set
    int* cur


cdef bint _expand(CliqueCtx* ctx, uint64_t* P, int size) noexcept nogil:
    cdef int W = ctx.W
    cdef int n = ctx.n
    cdef int* order = <int*>malloc(n * sizeof(int))
    cdef int* colors = <int*>malloc(n * sizeof(int))
    cdef uint64_t* U = <uint64_t*>malloc(W * sizeof(uint64_t))
    cdef uint64_t* Q = <uint64_t*>malloc(W * sizeof(uint64_t))
    cdef uint64_t* NP = <uint64_t*>malloc(W * sizeof(uint64_t))
    cdef int cnt = 0, color = 0, w, v, k
    cdef bint nonempty, ok = True
    cdef uint64_t* row
    if order == NULL or colors == NULL or U == NULL or Q == NULL or NP == NULL:
        ok = False
    else:
        memcpy(U, P, W * sizeof(uint64_t))
        while True:
            nonempty = False
            for w in range(W):
                if U[w]:
                    nonempty = True
                    break
            if not nonempty:
                break
            color += 1
            memcpy(Q, U, W * sizeof(uint64_t))
            w = 0
            while w < W:
                if Q[w] == 0:
                    w += 1
                    continue
                v = w * 64 + __builtin_ctzll(Q[w])
                row = ctx.adj + v * W
                for k in range(w, W):
                    Q[k] &= ~row[k]
                Q[w] &= ~((<uint64_t>1) << (v & 63))
                U[w] &= ~((<uint64_t>1) << (v & 63))
                order[cnt] = v
                colors[cnt] = color
                cnt += 1
        k = cnt - 1
        while k >= 0:
            if size + colors[k] <= ctx.best:
                break
            v = order[k]
            ctx.cur[size] = v
            row = ctx.adj + v * W
            nonempty = False
            for w in range(W):
                NP[w] = P[w] & row[w]
                if NP[w]:
                    nonempty = True
            if not nonempty:
                if size + 1 > ctx.best:
                    ctx.best = size + 1
                    memcpy(ctx.best_set, ctx.cur, (size + 1) * sizeof(int))
            elif not _expand(ctx, NP, size + 1):
                ok = False
                break
            P[v >> 6] &= ~((<uint64_t>1) << (v & 63))
            k -= 1
    free(order)
    free(colors)
    free(U)
    free(Q)
    free(NP)
    return ok


def max_clique(adjacency):
    """Exact clique number by branch and bound with greedy-colouring bounds.

    ``adjacency`` is a square 0/1 array. Returns ``(omega, witness)`` with the
    witness as a sorted list of original vertex labels.
    """
    a_arr = np.ascontiguousarray(adjacency != 0, dtype=np.uint8)
    cdef int n = a_arr.shape[0]
    if n == 0:
        return 0, []
    # descending degree, ties by label
    perm_arr = np.lexsort((np.arange(n), -a_arr.sum(axis=1).astype(np.int64))).astype(np.int32)
    cdef int W = (n + 63) // 64
    adj_arr = np.zeros(n * W, dtype=np.uint64)
    P_arr = np.zeros(W, dtype=np.uint64)
    best_arr = np.zeros(n, dtype=np.int32)
    cur_arr = np.zeros(n, dtype=np.int32)
    cdef unsigned char[:, ::1] a = a_arr
    cdef int[::1] perm = perm_arr
    cdef uint64_t[::1] adj = adj_arr
    cdef uint64_t[::1] P = P_arr
    cdef int[::1] best_set = best_arr
    cdef int[::1] cur = cur_arr
    cdef int i, j, k
    for i in range(n):
        for j in range(n):
            if i != j and a[perm[i], perm[j]]:
                adj[i * W + (j >> 6)] |= (<uint64_t>1) << (j & 63)
        P[i >> 6] |= (<uint64_t>1) << (i & 63)
    cdef CliqueCtx ctx
    ctx.n = n
    ctx.W = W
    ctx.adj = &adj[0]
    ctx.best = 0
    ctx.best_set = &best_set[0]
    ctx.cur = &cur[0]
    cdef bint ok
    with nogil:
        ok = _expand(&ctx, &P[0], 0)
    if not ok:
        raise MemoryError("clique search could not allocate its work buffers")
    return ctx.best, sorted(int(perm[best_set[k]]) for k in range(ctx.best))


def regular_codes(int n):
    """Enumeration codes of every regular labeled graph on ``n`` vertices."""
    cdef int L = n * (n - 1) // 2
    cdef int64_t total = (<int64_t>1) << L
    cdef uint64_t incident[16]  # bits of the pairs touching each vertex
    cdef int t = 0, i, j, v, d0
    cdef int64_t code, count = 0
    cdef bint regular
    for v in range(n):
        incident[v] = 0
    for j in range(1, n):
        for i in range(j):
            # pair t is bit L-1-t of the code (first pair most significant)
            incident[i] |= (<uint64_t>1) << (L - 1 - t)
            incident[j] |= (<uint64_t>1) << (L - 1 - t)
            t += 1
    out = np.empty(total, dtype=np.int64)
    cdef int64_t[::1] buf = out
    with nogil:
        for code in range(total):
            d0 = __builtin_popcountll(<uint64_t>code & incident[0])
            regular = True
            for v in range(1, n):
                if __builtin_popcountll(<uint64_t>code & incident[v]) != d0:
                    regular = False
                    break
            if regular:
                buf[count] = code
                count += 1
    return out[:count].copy()
