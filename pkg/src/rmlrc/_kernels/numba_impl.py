"""Loop kernels compiled with numba.

Every function here has a twin with the same signature in ``numpy_impl``.
Elements of F_{q^m} are uint8 rows of length m over F_q; ``mt`` is the
q x q base-field multiplication table, ``inv`` the base-field inverse table,
``red[k]`` the coordinates of x^(m+k) modulo the extension polynomial and
``fr`` the m x m matrix of the Frobenius map x -> x^q.
"""
import numpy as np
from numba import njit

NAME = "numba"

_JIT = dict(cache=True, nogil=True)


@njit(**_JIT)
def _mul1(a, b, out, mt, red, prod):
    m = a.shape[0]
    for k in range(2 * m - 1):
        prod[k] = 0
    for i in range(m):
        ai = a[i]
        if ai == 0:
            continue
        row = mt[ai]
        for j in range(m):
            prod[i + j] ^= row[b[j]]
    for k in range(m - 1):
        c = prod[m + k]
        if c != 0:
            row = mt[c]
            for j in range(m):
                prod[j] ^= row[red[k, j]]
    for j in range(m):
        out[j] = prod[j]


@njit(**_JIT)
def _inv1(a, out, fr, mt, red, inv, t, u, prod):
    # a^-1 = a^(q + q^2 + ... + q^(m-1)) / norm(a), norm(a) in F_q
    m = a.shape[0]
    for j in range(m):
        t[j] = a[j]
        out[j] = 0
    out[0] = 1
    for _ in range(1, m):
        _frob1(t, u, fr, mt)
        for j in range(m):
            t[j] = u[j]
        _mul1(out, t, out, mt, red, prod)
    _mul1(out, a, u, mt, red, prod)
    ninv = inv[u[0]]
    for j in range(m):
        out[j] = mt[ninv, out[j]]


@njit(**_JIT)
def _frob1(a, out, fr, mt):
    m = a.shape[0]
    for r in range(m):
        acc = np.uint8(0)
        for j in range(m):
            aj = a[j]
            if aj != 0:
                acc ^= mt[fr[r, j], aj]
        out[r] = acc


@njit(**_JIT)
def ext_mul(A, B, mt, red):
    L, m = A.shape
    out = np.empty((L, m), np.uint8)
    prod = np.empty(2 * m - 1, np.uint8)
    for l in range(L):
        _mul1(A[l], B[l], out[l], mt, red, prod)
    return out


@njit(**_JIT)
def ext_inv(A, fr, mt, red, inv):
    L, m = A.shape
    out = np.empty((L, m), np.uint8)
    t = np.empty(m, np.uint8)
    u = np.empty(m, np.uint8)
    prod = np.empty(2 * m - 1, np.uint8)
    for l in range(L):
        _inv1(A[l], out[l], fr, mt, red, inv, t, u, prod)
    return out


@njit(**_JIT)
def frob(A, fr, mt):
    L, m = A.shape
    out = np.empty((L, m), np.uint8)
    for l in range(L):
        _frob1(A[l], out[l], fr, mt)
    return out


@njit(**_JIT)
def moore(P, T, fr, mt):
    L, m = P.shape
    out = np.empty((L, T, m), np.uint8)
    for l in range(L):
        if T > 0:
            for j in range(m):
                out[l, 0, j] = P[l, j]
        for i in range(1, T):
            _frob1(out[l, i - 1], out[l, i], fr, mt)
    return out


@njit(**_JIT)
def lin_eval(C, X, fr, mt, red):
    B, T, m = C.shape
    L = X.shape[0]
    pw = moore(X, T, fr, mt)
    out = np.zeros((B, L, m), np.uint8)
    tmp = np.empty(m, np.uint8)
    prod = np.empty(2 * m - 1, np.uint8)
    for b in range(B):
        for l in range(L):
            for i in range(T):
                _mul1(C[b, i], pw[l, i], tmp, mt, red, prod)
                for j in range(m):
                    out[b, l, j] ^= tmp[j]
    return out


@njit(**_JIT)
def rank_fq(V, mt, inv):
    B, L, m = V.shape
    out = np.zeros(B, np.int64)
    W = np.empty((L, m), np.uint8)
    for b in range(B):
        for i in range(L):
            for j in range(m):
                W[i, j] = V[b, i, j]
        rank = 0
        for col in range(m):
            if rank == L:
                break
            piv = -1
            for i in range(rank, L):
                if W[i, col] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != rank:
                for j in range(col, m):
                    tmp = W[piv, j]
                    W[piv, j] = W[rank, j]
                    W[rank, j] = tmp
            iv = inv[W[rank, col]]
            for j in range(col, m):
                W[rank, j] = mt[iv, W[rank, j]]
            for i in range(rank + 1, L):
                c = W[i, col]
                if c != 0:
                    for j in range(col, m):
                        W[i, j] ^= mt[c, W[rank, j]]
            rank += 1
        out[b] = rank
    return out


@njit(**_JIT)
def independent_rows(V, K, mt, inv):
    L, m = V.shape
    basis = np.zeros((m, m), np.uint8)
    pivots = np.empty(m, np.int64)
    chosen = np.empty(min(K, m), np.int64)
    v = np.empty(m, np.uint8)
    nb = 0
    for l in range(L):
        if nb == K or nb == m:
            break
        for j in range(m):
            v[j] = V[l, j]
        for b in range(nb):
            c = v[pivots[b]]
            if c != 0:
                for j in range(m):
                    v[j] ^= mt[c, basis[b, j]]
        p = -1
        for j in range(m):
            if v[j] != 0:
                p = j
                break
        if p < 0:
            continue
        iv = inv[v[p]]
        for j in range(m):
            basis[nb, j] = mt[iv, v[j]]
        pivots[nb] = p
        chosen[nb] = l
        nb += 1
    return chosen[:nb].copy()


@njit(**_JIT)
def solve_ext(A, y, fr, mt, red, inv):
    K = A.shape[0]
    m = y.shape[1]
    W = A.copy()
    z = y.copy()
    x = np.zeros((K, m), np.uint8)
    pinv = np.empty((K, m), np.uint8)
    f = np.empty(m, np.uint8)
    tmp = np.empty(m, np.uint8)
    t = np.empty(m, np.uint8)
    u = np.empty(m, np.uint8)
    prod = np.empty(2 * m - 1, np.uint8)
    for c in range(K):
        p = -1
        for i in range(c, K):
            for j in range(m):
                if W[i, c, j] != 0:
                    p = i
                    break
            if p >= 0:
                break
        if p < 0:
            return x, False
        if p != c:
            for k in range(K):
                for j in range(m):
                    s_ = W[p, k, j]
                    W[p, k, j] = W[c, k, j]
                    W[c, k, j] = s_
            for j in range(m):
                s_ = z[p, j]
                z[p, j] = z[c, j]
                z[c, j] = s_
        _inv1(W[c, c], pinv[c], fr, mt, red, inv, t, u, prod)
        for i in range(c + 1, K):
            nz = False
            for j in range(m):
                if W[i, c, j] != 0:
                    nz = True
                    break
            if not nz:
                continue
            _mul1(W[i, c], pinv[c], f, mt, red, prod)
            for k in range(c, K):
                _mul1(f, W[c, k], tmp, mt, red, prod)
                for j in range(m):
                    W[i, k, j] ^= tmp[j]
            _mul1(f, z[c], tmp, mt, red, prod)
            for j in range(m):
                z[i, j] ^= tmp[j]
    for c in range(K - 1, -1, -1):
        for j in range(m):
            f[j] = z[c, j]
        for k in range(c + 1, K):
            _mul1(W[c, k], x[k], tmp, mt, red, prod)
            for j in range(m):
                f[j] ^= tmp[j]
        _mul1(f, pinv[c], x[c], mt, red, prod)
    return x, True


@njit(**_JIT)
def fq_combine(C, X, mt):
    P, k = C.shape
    R = X.shape[1]
    out = np.zeros((P, R), np.uint8)
    for p in range(P):
        for j in range(k):
            c = C[p, j]
            if c == 0:
                continue
            for r in range(R):
                out[p, r] ^= mt[c, X[j, r]]
    return out
