import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rmlrc.errors import FieldMismatch, InvalidParams, ZeroInverse
from rmlrc.gf import (ExtField, base_field, get_field, gf2_is_irreducible,
                      is_irreducible_over, smallest_gf2_irreducible,
                      smallest_irreducible_over)

import reference as ref


def as_tuple(a):
    return tuple(int(x) for x in a)


@pytest.mark.parametrize("s", range(1, 9))
def test_base_polynomial_is_smallest_irreducible(s):
    poly = smallest_gf2_irreducible(s)
    assert ref.gf2_irreducible_bruteforce(poly)
    for smaller in range(1 << s, poly):
        assert not ref.gf2_irreducible_bruteforce(smaller)


def test_gf2_irreducibility_matches_bruteforce():
    for p in range(2, 1 << 10):
        assert gf2_is_irreducible(p) == ref.gf2_irreducible_bruteforce(p), p


@pytest.mark.parametrize("s", [1, 2, 3, 4, 8])
def test_base_tables_match_reference(s):
    F = base_field(s)
    for a in range(F.q):
        for b in range(F.q):
            assert F.mul(a, b) == ref.gf2m_mul(a, b, s, F.poly)
    for a in range(1, F.q):
        assert F.mul(a, F.inv(a)) == 1
    with pytest.raises(ZeroInverse):
        F.inv(0)


def test_base_degree_out_of_range():
    with pytest.raises(InvalidParams):
        base_field(9)


@pytest.mark.parametrize("s,m", [(1, 2), (1, 3), (1, 4), (2, 2), (2, 3), (3, 2)])
def test_extension_polynomial_smallest_irreducible(s, m):
    F = base_field(s)
    low = smallest_irreducible_over(m, F)
    assert ref.irreducible_over_bruteforce(low, s, F.poly)
    q = F.q
    for k in range(sum(int(c) * q ** i for i, c in enumerate(low))):
        cand = [(k // q ** i) % q for i in range(m)]
        assert not ref.irreducible_over_bruteforce(cand, s, F.poly)


@pytest.mark.parametrize("s,m", [(1, 4), (1, 6), (2, 3), (3, 2), (2, 4)])
def test_rabin_matches_trial_division(s, m):
    F = base_field(s)
    rng = np.random.default_rng(s * 100 + m)
    for _ in range(60):
        low = rng.integers(0, F.q, m).astype(np.uint8)
        assert is_irreducible_over(low, F) == ref.irreducible_over_bruteforce(low, s, F.poly)


def test_named_field_polynomials():
    assert get_field(1, 11).ext_poly.tolist() == [1, 0, 1] + [0] * 8  # x^11 + x^2 + 1
    F = get_field(3, 36)
    assert is_irreducible_over(F.ext_poly, F.base)


@pytest.mark.parametrize("s,m", [(1, 2), (1, 4), (2, 2)])
def test_field_axioms_exhaustive(s, m):
    F = get_field(s, m)
    R = ref.RefExt(s, F.base.poly, F.ext_poly)
    elems = np.array(list(F.elements()))
    size = len(elems)
    assert size == (1 << s) ** m
    A = np.repeat(elems, size, axis=0)
    B = np.tile(elems, (size, 1))
    prod = F.mul(A, B)
    for a, b, c in zip(A, B, prod):
        assert as_tuple(c) == R.mul(as_tuple(a), as_tuple(b))
    assert np.array_equal(prod, F.mul(B, A))
    assert np.array_equal(F.add(F.add(A, B), B), A)
    assert not F.add(A, A).any()
    for a, b, c in itertools.islice(itertools.product(elems, repeat=3), 0, None, 7):
        assert np.array_equal(F.mul(a, F.mul(b, c)), F.mul(F.mul(a, b), c))
        assert np.array_equal(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)))


def test_random_triples_gf2_11(rng):
    F = get_field(1, 11)
    R = ref.RefExt(1, F.base.poly, F.ext_poly)
    a, b, c = (F.random(rng, 10_000) for _ in range(3))
    assert np.array_equal(F.mul(a, F.mul(b, c)), F.mul(F.mul(a, b), c))
    assert np.array_equal(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)))
    assert np.array_equal(F.mul(a, b), F.mul(b, a))
    for x, y, z in zip(a[:200], b[:200], F.mul(a[:200], b[:200])):
        assert as_tuple(z) == R.mul(as_tuple(x), as_tuple(y))


@pytest.mark.parametrize("s,m", [(8, 1), (1, 8), (2, 4), (4, 2)])
def test_inverse_exhaustive_256(s, m):
    F = get_field(s, m)
    nz = np.array(list(F.elements()))[1:]
    prod = F.mul(nz, F.inv(nz))
    assert np.array_equal(prod, np.broadcast_to(F.one(), prod.shape))
    assert np.array_equal(F.inv(F.one()), F.one())


def test_inverse_of_zero():
    F = get_field(1, 4)
    with pytest.raises(ZeroInverse):
        F.inv(F.zeros())
    with pytest.raises(ZeroInverse):
        F.inv(np.stack([F.one(), F.zeros()]))


def test_identities():
    F = get_field(3, 5)
    a = F.random(np.random.default_rng(1), 50)
    assert np.array_equal(F.mul(a, F.one()), a)
    assert not F.mul(a, F.zeros()).any()
    assert np.array_equal(F.add(a, F.zeros()), a)
    assert np.array_equal(F.scalar_mul(1, a), a)
    assert not F.scalar_mul(0, a).any()


def test_scalar_mul_is_embedding_product(rng):
    F = get_field(3, 4)
    a, b = F.random(rng, 200), F.random(rng, 200)
    for c in range(8):
        assert np.array_equal(F.scalar_mul(c, a), F.mul(F.embed(c), a))
        assert np.array_equal(F.scalar_mul(c, F.add(a, b)),
                              F.add(F.scalar_mul(c, a), F.scalar_mul(c, b)))


@pytest.mark.parametrize("s,m", [(1, 5), (2, 3), (3, 4)])
def test_frobenius(s, m, rng):
    F = get_field(s, m)
    R = ref.RefExt(s, F.base.poly, F.ext_poly)
    a, b = F.random(rng, 40), F.random(rng, 40)
    assert np.array_equal(F.frobenius(a, 0), a)
    assert np.array_equal(F.frobenius(a, m), a)
    for i in range(1, m):
        fa = F.frobenius(a, i)
        assert np.array_equal(F.frobenius(F.add(a, b), i), F.add(fa, F.frobenius(b, i)))
        assert np.array_equal(F.frobenius(F.mul(a, b), i), F.mul(fa, F.frobenius(b, i)))
        assert as_tuple(fa[0]) == R.frob(as_tuple(a[0]), i)
    for c in range(F.q):
        assert np.array_equal(F.frobenius(F.embed(c)), F.embed(c))


def test_rank_over_base(rng):
    F = get_field(3, 6)
    g = F.random(rng)
    while not g.any():
        g = F.random(rng)
    assert F.rank_over_base(np.stack([g, g, g])) == 1
    assert F.rank_over_base(F.zeros(3)) == 0
    assert F.rank_over_base(F.zeros(0)) == 0
    assert F.rank_over_base(np.eye(6, dtype=np.uint8)) == 6
    for _ in range(30):
        V = F.random(rng, int(rng.integers(1, 9)))
        expect = ref.rank_fq(V.T.tolist(), 3, F.base.poly)
        assert F.rank_over_base(V) == expect
        assert F.rank_over_base(F.scalar_mul(5, V)) == expect


def test_rank_batch_matches_single(rng):
    F = get_field(1, 9)
    V = F.random(rng, 25, 6)
    V[3, 5] = V[3, 0] ^ V[3, 1]
    assert F.rank_batch(V).tolist() == [F.rank_over_base(v) for v in V]


def test_serialization_round_trip(rng):
    F = get_field(3, 36)
    a = F.random(rng, 20)
    assert F.nbytes == 14
    for x in a:
        assert np.array_equal(F.from_bytes(F.to_bytes(x)), x)
        assert np.array_equal(F.from_int(F.to_int(x)), x)


def test_field_mismatch():
    F = get_field(1, 4)
    with pytest.raises(FieldMismatch):
        F.mul(np.zeros(3, np.uint8), F.one())
    with pytest.raises(FieldMismatch):
        F.add(np.full(4, 2, np.uint8), F.one())
    with pytest.raises(FieldMismatch):
        F.scalar_mul(2, F.one())
    with pytest.raises(InvalidParams):
        ExtField(1, 3, np.array([1, 1, 1], np.uint8))  # x^3+x^2+x+1 = (x+1)^3


elem8 = st.lists(st.integers(0, 7), min_size=5, max_size=5)


@settings(max_examples=200, deadline=None)
@given(elem8, elem8, elem8)
def test_distributive_property(a, b, c):
    F = get_field(3, 5)
    a, b, c = (np.array(v, np.uint8) for v in (a, b, c))
    assert np.array_equal(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)))


@settings(max_examples=200, deadline=None)
@given(elem8)
def test_inverse_property(a):
    F = get_field(3, 5)
    a = np.array(a, np.uint8)
    if a.any():
        assert np.array_equal(F.mul(a, F.inv(a)), F.one())
        assert np.array_equal(F.inv(F.inv(a)), a)
