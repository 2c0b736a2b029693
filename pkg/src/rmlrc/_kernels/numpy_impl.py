"""Vectorised numpy versions of the numba kernels (same signatures)."""
import numpy as np

NAME = "numpy"

_xor = np.bitwise_xor.reduce


def _mul(A, B, mt, red):
    A, B = np.broadcast_arrays(A, B)
    m = A.shape[-1]
    prod = np.zeros(A.shape[:-1] + (2 * m - 1,), np.uint8)
    for i in range(m):
        prod[..., i:i + m] ^= mt[A[..., i:i + 1], B]
    low = prod[..., :m]
    for k in range(m - 1):
        low ^= mt[prod[..., m + k:m + k + 1], red[k]]
    return np.ascontiguousarray(low)


def _inv(A, fr, mt, red, inv):
    # a^-1 = a^(q + ... + q^(m-1)) / norm(a)
    m = A.shape[-1]
    out = np.zeros_like(A)
    out[..., 0] = 1
    t = A.copy()
    for _ in range(1, m):
        t = _frob(t, fr, mt)
        out = _mul(out, t, mt, red)
    norm = _mul(out, A, mt, red)[..., :1]
    return mt[inv[norm], out]


def _frob(A, fr, mt):
    return _xor(mt[fr, A[..., None, :]], axis=-1)


def ext_mul(A, B, mt, red):
    return _mul(A, B, mt, red)


def ext_inv(A, fr, mt, red, inv):
    return _inv(A, fr, mt, red, inv)


def frob(A, fr, mt):
    if A.shape[0] == 0:
        return A.copy()
    return _frob(A, fr, mt)


def moore(P, T, fr, mt):
    L, m = P.shape
    out = np.empty((L, T, m), np.uint8)
    if T == 0 or L == 0:
        return out
    out[:, 0] = P
    for i in range(1, T):
        out[:, i] = _frob(out[:, i - 1], fr, mt)
    return out


def lin_eval(C, X, fr, mt, red):
    B, T, m = C.shape
    L = X.shape[0]
    if B == 0 or L == 0 or T == 0:
        return np.zeros((B, L, m), np.uint8)
    pw = moore(X, T, fr, mt)
    terms = _mul(C[:, None, :, :], pw[None, :, :, :], mt, red)
    return _xor(terms, axis=2)


def _echelon_rank(W, mt, inv):
    L, m = W.shape
    rank = 0
    for col in range(m):
        if rank == L:
            break
        nz = np.nonzero(W[rank:, col])[0]
        if nz.size == 0:
            continue
        p = rank + nz[0]
        if p != rank:
            W[[rank, p]] = W[[p, rank]]
        W[rank] = mt[inv[W[rank, col]], W[rank]]
        below = W[rank + 1:]
        below ^= mt[below[:, col:col + 1], W[rank]]
        rank += 1
    return rank


def rank_fq(V, mt, inv):
    return np.array([_echelon_rank(v.copy(), mt, inv) for v in V], np.int64)


def independent_rows(V, K, mt, inv):
    L, m = V.shape
    basis = np.zeros((0, m), np.uint8)
    pivots = []
    chosen = []
    for l in range(L):
        if len(chosen) == min(K, m):
            break
        v = V[l].copy()
        for b, p in enumerate(pivots):
            v ^= mt[v[p], basis[b]]
        nz = np.nonzero(v)[0]
        if nz.size == 0:
            continue
        p = nz[0]
        basis = np.vstack([basis, mt[inv[v[p]], v][None]])
        pivots.append(p)
        chosen.append(l)
    return np.array(chosen, np.int64)


def solve_ext(A, y, fr, mt, red, inv):
    K = A.shape[0]
    W = A.copy()
    z = y.copy()
    x = np.zeros_like(y)
    pinv = np.zeros_like(y)
    for c in range(K):
        nz = np.nonzero(W[c:, c].any(axis=-1))[0]
        if nz.size == 0:
            return x, False
        p = c + nz[0]
        if p != c:
            W[[c, p]] = W[[p, c]]
            z[[c, p]] = z[[p, c]]
        pinv[c] = _inv(W[c, c], fr, mt, red, inv)
        f = _mul(W[c + 1:, c], pinv[c], mt, red)
        W[c + 1:, c:] ^= _mul(f[:, None, :], W[c, c:][None], mt, red)
        z[c + 1:] ^= _mul(f, z[c], mt, red)
    for c in range(K - 1, -1, -1):
        acc = z[c].copy()
        if c + 1 < K:
            acc ^= _xor(_mul(W[c, c + 1:], x[c + 1:], mt, red), axis=0)
        x[c] = _mul(acc, pinv[c], mt, red)
    return x, True


def fq_combine(C, X, mt):
    P, k = C.shape
    if k == 0:
        return np.zeros((P, X.shape[1]), np.uint8)
    return _xor(mt[C[:, :, None], X[None, :, :]], axis=1)
