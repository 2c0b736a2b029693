"""Two-level field tower F_q = GF(2^s) and F_{q^m} = F_q[x]/(P).

Elements of F_{q^m} are uint8 numpy arrays whose last axis holds the m
coordinates over F_q in the polynomial basis 1, x, ..., x^(m-1), lowest
coordinate first. A vector of L elements is an (L, m) array, which is also
the transpose of the m x L matrix used for rank computations over F_q.

Both moduli are the smallest irreducible polynomials of the required degree,
where monic candidates are ordered by the integer sum(c_i * q^i) of their
lower coefficients. That makes every field (and so every codeword) fully
reproducible.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from .errors import FieldMismatch, InvalidParams, ZeroInverse

MAX_BASE_DEGREE = 8


def _clmul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def _gf2_mod(a: int, b: int) -> int:
    db = b.bit_length()
    while a.bit_length() >= db:
        a ^= b << (a.bit_length() - db)
    return a


def gf2_is_irreducible(poly: int) -> bool:
    """Trial division over GF(2); fine for the degrees used as base fields."""
    deg = poly.bit_length() - 1
    if deg < 1:
        return False
    for d in range(1 << 1, 1 << (deg // 2 + 1)):
        if _gf2_mod(poly, d) == 0:
            return False
    return True


def smallest_gf2_irreducible(s: int) -> int:
    for low in range(1 << s):
        poly = (1 << s) | low
        if gf2_is_irreducible(poly):
            return poly
    raise AssertionError("unreachable: irreducibles exist in every degree")


@dataclass(frozen=True, eq=False)
class BaseField:
    """GF(2^s) with full multiplication and inverse tables."""

    s: int
    poly: int
    mul_table: np.ndarray = field(repr=False)
    inv_table: np.ndarray = field(repr=False)

    @property
    def q(self) -> int:
        return 1 << self.s

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroInverse("0 has no inverse in GF(%d)" % self.q)
        return int(self.inv_table[a])

    def elements(self) -> range:
        return range(self.q)

    def mat_mul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        A = np.asarray(A, np.uint8)
        B = np.asarray(B, np.uint8)
        return K.fq_combine(A, np.ascontiguousarray(B), self.mul_table)

    def mat_rank(self, A: np.ndarray) -> int:
        A = np.ascontiguousarray(A, np.uint8)
        return int(K.rank_fq(A[None], self.mul_table, self.inv_table)[0])

    def mat_inv(self, A: np.ndarray) -> np.ndarray:
        """Gauss-Jordan inverse over F_q; raises ZeroInverse if singular."""
        mt, it = self.mul_table, self.inv_table
        A = np.array(A, np.uint8)
        n = A.shape[0]
        W = np.concatenate([A, np.eye(n, dtype=np.uint8)], axis=1)
        for c in range(n):
            nz = np.nonzero(W[c:, c])[0]
            if nz.size == 0:
                raise ZeroInverse("singular matrix over GF(%d)" % self.q)
            p = c + nz[0]
            if p != c:
                W[[c, p]] = W[[p, c]]
            W[c] = mt[it[W[c, c]], W[c]]
            for i in range(n):
                if i != c and W[i, c]:
                    W[i] ^= mt[W[i, c], W[c]]
        return W[:, n:].copy()


@functools.lru_cache(maxsize=None)
def base_field(s: int) -> BaseField:
    if not 1 <= s <= MAX_BASE_DEGREE:
        raise InvalidParams(f"base field GF(2^s) needs 1 <= s <= {MAX_BASE_DEGREE}, got s={s}")
    poly = smallest_gf2_irreducible(s)
    q = 1 << s
    mt = np.zeros((q, q), np.uint8)
    for a in range(q):
        for b in range(q):
            mt[a, b] = _gf2_mod(_clmul(a, b), poly)
    it = np.zeros(q, np.uint8)
    for a in range(1, q):
        it[a] = int(np.nonzero(mt[a] == 1)[0][0])
    mt.flags.writeable = False
    it.flags.writeable = False
    return BaseField(s, poly, mt, it)


# ---------------------------------------------------------------------------
# polynomials over F_q (coefficient lists, lowest degree first)

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], b: list[int], F: BaseField) -> list[int]:
    a = _trim(list(a))
    b = _trim(list(b))
    lead_inv = F.inv(b[-1])
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        c = F.mul(a[-1], lead_inv)
        shift = len(a) - 1 - db
        for i, bi in enumerate(b):
            a[shift + i] ^= F.mul(c, bi)
        _trim(a)
    return a


def _poly_gcd(a: list[int], b: list[int], F: BaseField) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, F)
    return a


def _reduction_table(low: np.ndarray, F: BaseField) -> np.ndarray:
    """Row k holds x^(m+k) mod (x^m + low) for k = 0..m-2."""
    m = low.shape[0]
    red = np.zeros((max(m - 1, 1), m), np.uint8)
    cur = low.copy()  # x^m = -low = low in characteristic 2
    for k in range(m - 1):
        red[k] = cur
        top = cur[-1]
        cur = np.concatenate([[0], cur[:-1]]).astype(np.uint8)
        if top:
            cur ^= F.mul_table[top][low]
    return red


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible_over(low: np.ndarray, F: BaseField) -> bool:
    """Rabin's test for the monic polynomial x^m + sum low[i] x^i over F_q."""
    m = low.shape[0]
    if m == 1:
        return True
    if low[0] == 0:
        return False
    poly = [int(c) for c in low] + [1]
    for c in range(1, F.q):  # cheap root screen
        acc = 0
        for coef in reversed(poly):
            acc = F.mul(acc, c) ^ coef
        if acc == 0:
            return False
    red = _reduction_table(low, F)
    mt = F.mul_table
    x = np.zeros((1, m), np.uint8)
    x[0, 1] = 1
    h = x.copy()
    powers = {}
    for k in range(1, m + 1):
        for _ in range(F.s):
            h = K.ext_mul(h, h, mt, red)
        powers[k] = h[0].copy()
    if not np.array_equal(powers[m], x[0]):
        return False
    for p in _prime_factors(m):
        diff = powers[m // p] ^ x[0]
        g = _poly_gcd(poly, [int(c) for c in diff], F)
        if len(g) != 1:
            return False
    return True


def smallest_irreducible_over(m: int, F: BaseField) -> np.ndarray:
    """Lower coefficients of the smallest monic irreducible of degree m over F."""
    q = F.q
    for k in range(q ** m):
        low = np.array([(k // q ** i) % q for i in range(m)], np.uint8)
        if is_irreducible_over(low, F):
            return low
    raise AssertionError("unreachable: irreducibles exist in every degree")


class ExtField:
    """F_{q^m} as a degree-m extension of GF(2^s)."""

    def __init__(self, s: int, m: int, ext_poly: np.ndarray | None = None):
        if m < 1:
            raise InvalidParams(f"extension degree must be positive, got m={m}")
        self.base = base_field(s)
        self.s = s
        self.q = self.base.q
        self.m = m
        if ext_poly is None:
            ext_poly = smallest_irreducible_over(m, self.base)
        else:
            ext_poly = np.asarray(ext_poly, np.uint8)
            if ext_poly.shape != (m,) or not is_irreducible_over(ext_poly, self.base):
                raise InvalidParams("ext_poly is not an irreducible of degree m")
        self.ext_poly = ext_poly
        self.ext_poly.flags.writeable = False
        self._mt = self.base.mul_table
        self._inv = self.base.inv_table
        self._red = _reduction_table(ext_poly, self.base)
        self._sm = s * m
        self._fr = self._frobenius_powers()
        for arr in (self._red, self._fr):
            arr.flags.writeable = False

    def __repr__(self) -> str:
        return f"ExtField(q={self.q}, m={self.m})"

    # -- construction helpers -------------------------------------------------

    def _frobenius_powers(self) -> np.ndarray:
        m, mt, red = self.m, self._mt, self._red
        x = np.zeros((1, m), np.uint8)
        if m > 1:
            x[0, 1] = 1
        else:
            x[0, 0] = self.ext_poly[0]
        xq = x.copy()
        for _ in range(self.s):
            xq = K.ext_mul(xq, xq, mt, red)
        fr1 = np.zeros((m, m), np.uint8)
        col = np.zeros((1, m), np.uint8)
        col[0, 0] = 1
        for j in range(m):
            fr1[:, j] = col[0]
            col = K.ext_mul(col, xq, mt, red)
        pows = np.zeros((m, m, m), np.uint8)
        pows[0] = np.eye(m, dtype=np.uint8)
        for i in range(1, m):
            # columns of pows[i] are images of the basis under x -> x^(q^i)
            pows[i] = K.frob(np.ascontiguousarray(pows[i - 1].T), fr1, mt).T
        return pows

    @property
    def frobenius_matrix(self) -> np.ndarray:
        return self._fr[1 % self.m]

    @property
    def nbytes(self) -> int:
        """Serialized size of one element."""
        return (self._sm + 7) // 8

    # -- element constructors ---------------------------------------------------

    def zeros(self, *shape: int) -> np.ndarray:
        return np.zeros(shape + (self.m,), np.uint8)

    def one(self) -> np.ndarray:
        a = self.zeros()
        a[0] = 1
        return a

    def basis(self, i: int) -> np.ndarray:
        a = self.zeros()
        a[i] = 1
        return a

    def embed(self, c: int) -> np.ndarray:
        self._check_scalar(c)
        a = self.zeros()
        a[0] = c
        return a

    def random(self, rng: np.random.Generator, *shape: int) -> np.ndarray:
        return rng.integers(0, self.q, size=shape + (self.m,), dtype=np.uint8)

    def from_int(self, v: int) -> np.ndarray:
        if not 0 <= v < 1 << self._sm:
            raise FieldMismatch(f"{v} does not encode an element of GF({self.q}^{self.m})")
        mask = self.q - 1
        return np.array([(v >> (self.s * i)) & mask for i in range(self.m)], np.uint8)

    def to_int(self, a) -> int:
        a = self.check(a)
        return sum(int(c) << (self.s * i) for i, c in enumerate(a))

    def to_bytes(self, a) -> bytes:
        return self.to_int(a).to_bytes(self.nbytes, "little")

    def from_bytes(self, b: bytes) -> np.ndarray:
        if len(b) != self.nbytes:
            raise FieldMismatch(f"expected {self.nbytes} bytes, got {len(b)}")
        return self.from_int(int.from_bytes(b, "little"))

    def elements(self):
        """Every element, in integer-encoding order (only sensible for tiny fields)."""
        for v in range(1 << self._sm):
            yield self.from_int(v)

    # -- validation -----------------------------------------------------------------

    def check(self, a) -> np.ndarray:
        a = np.asarray(a)
        if a.ndim == 0 or a.shape[-1] != self.m:
            raise FieldMismatch(f"expected trailing axis of length {self.m}, got shape {a.shape}")
        if a.dtype != np.uint8:
            if a.size and (a.min() < 0 or a.max() >= self.q):
                raise FieldMismatch(f"coordinates must lie in [0, {self.q})")
            a = a.astype(np.uint8)
        elif a.size and a.max() >= self.q:
            raise FieldMismatch(f"coordinates must lie in [0, {self.q})")
        return a

    def _check_scalar(self, c: int) -> None:
        if not 0 <= int(c) < self.q:
            raise FieldMismatch(f"{c} is not an element of GF({self.q})")

    def _as_rows(self, a) -> tuple[np.ndarray, tuple]:
        a = self.check(a)
        return np.ascontiguousarray(a.reshape(-1, self.m)), a.shape

    # -- arithmetic -------------------------------------------------------------------

    def add(self, a, b) -> np.ndarray:
        return self.check(a) ^ self.check(b)

    def mul(self, a, b) -> np.ndarray:
        a, b = np.broadcast_arrays(self.check(a), self.check(b))
        A, shape = self._as_rows(a)
        B, _ = self._as_rows(b)
        return K.ext_mul(A, B, self._mt, self._red).reshape(shape)

    def inv(self, a) -> np.ndarray:
        A, shape = self._as_rows(a)
        if not A.any(axis=1).all():
            raise ZeroInverse("0 has no multiplicative inverse")
        return K.ext_inv(A, self._fr[1 % self.m], self._mt, self._red, self._inv).reshape(shape)

    def scalar_mul(self, c: int, a) -> np.ndarray:
        """Action of c in F_q on elements of F_{q^m} (coordinate-wise)."""
        self._check_scalar(c)
        return self._mt[int(c)][self.check(a)]

    def frobenius(self, a, i: int = 1) -> np.ndarray:
        if i < 0:
            raise ValueError("Frobenius power must be non-negative")
        A, shape = self._as_rows(a)
        return K.frob(A, self._fr[i % self.m], self._mt).reshape(shape)

    def rank_over_base(self, v) -> int:
        """Rank over F_q of the m x N matrix whose columns are the entries of v."""
        A, _ = self._as_rows(v)
        if A.shape[0] == 0:
            return 0
        return int(K.rank_fq(A[None], self._mt, self._inv)[0])

    span_dim_over_base = rank_over_base

    def rank_batch(self, V: np.ndarray) -> np.ndarray:
        """Ranks of a stack of (L, m) vectors, shape (B, L, m) -> (B,)."""
        V = np.ascontiguousarray(self.check(V))
        if V.shape[1] == 0:
            return np.zeros(V.shape[0], np.int64)
        return K.rank_fq(V, self._mt, self._inv)


@functools.lru_cache(maxsize=None)
def get_field(s: int, m: int) -> ExtField:
    """Shared, immutable field instance for (s, m)."""
    return ExtField(s, m)


def log2_exact(q: int) -> int:
    if q < 2 or q & (q - 1):
        raise InvalidParams(f"q must be a power of two >= 2, got {q}")
    return q.bit_length() - 1
