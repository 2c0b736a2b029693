"""Slow pure-Python reference arithmetic, independent of the package kernels.

Elements of GF(2^s) are ints; elements of GF(q^m) are tuples of m ints,
lowest coordinate first, reduced modulo x^m + sum(low[i] x^i).
"""
from __future__ import annotations

import itertools


def gf2m_mul(a: int, b: int, s: int, poly: int) -> int:
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a >> s & 1:
            a ^= poly
    return out


def gf2m_inv(a: int, s: int, poly: int) -> int:
    for b in range(1, 1 << s):
        if gf2m_mul(a, b, s, poly) == 1:
            return b
    raise ZeroDivisionError


def gf2_poly_divides(d: int, p: int) -> bool:
    while p.bit_length() >= d.bit_length():
        p ^= d << (p.bit_length() - d.bit_length())
    return p == 0


def gf2_irreducible_bruteforce(p: int) -> bool:
    deg = p.bit_length() - 1
    return deg >= 1 and not any(gf2_poly_divides(d, p) for d in range(2, 1 << (deg // 2 + 1))
                                if d.bit_length() - 1 >= 1)


class RefExt:
    def __init__(self, s: int, base_poly: int, low):
        self.s, self.bp = s, base_poly
        self.low = [int(c) for c in low]
        self.m = len(self.low)

    def bmul(self, a, b):
        return gf2m_mul(a, b, self.s, self.bp)

    def add(self, a, b):
        return tuple(x ^ y for x, y in zip(a, b))

    def mul(self, a, b):
        m = self.m
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] ^= self.bmul(x, y)
        for k in range(2 * m - 2, m - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for i, l in enumerate(self.low):
                    prod[k - m + i] ^= self.bmul(c, l)
        return tuple(prod[:m])

    def one(self):
        return (1,) + (0,) * (self.m - 1)

    def pow(self, a, e):
        out, base = self.one(), a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def frob(self, a, i=1):
        return self.pow(a, (1 << self.s) ** i)


def rank_fq(rows, s: int, poly: int) -> int:
    """Rank over GF(2^s) of a list of equal-length int lists."""
    M = [list(r) for r in rows]
    if not M:
        return 0
    rank, ncol = 0, len(M[0])
    for c in range(ncol):
        piv = next((i for i in range(rank, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = gf2m_inv(M[rank][c], s, poly)
        M[rank] = [gf2m_mul(inv, x, s, poly) for x in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][c]:
                f = M[i][c]
                M[i] = [x ^ gf2m_mul(f, y, s, poly) for x, y in zip(M[i], M[rank])]
        rank += 1
    return rank


def ext_monic_divides(d, p, F: RefExt) -> bool:
    """Does monic d divide monic p (coefficient lists, lowest first)?"""
    p = list(p)
    while len(p) >= len(d):
        lead = p[-1]
        if lead:
            shift = len(p) - len(d)
            for i, c in enumerate(d):
                p[shift + i] ^= F.bmul(lead, c)
        p.pop()
    return not any(p)


def irreducible_over_bruteforce(low, s: int, poly: int) -> bool:
    """Trial division by every monic polynomial of degree 1..m//2 over GF(2^s)."""
    F = RefExt(s, poly, [1])
    q, m = 1 << s, len(low)
    p = list(low) + [1]
    for deg in range(1, m // 2 + 1):
        for coeffs in itertools.product(range(q), repeat=deg):
            if ext_monic_divides(list(coeffs) + [1], p, F):
                return False
    return True
