import itertools

import numpy as np
import pytest

from rmlrc import (CodeParams, LocallyRepairableCode, derive_params, dmin_bound,
                   dmin_scalar_bound, dmin_single_parity_bound)
from rmlrc.errors import (GroupOverwhelmed, InvalidParams, NotOptimalConfiguration,
                          RankDeficient)

from conftest import EX1, EX2


def test_example1_params():
    p = derive_params(**EX1)
    assert (p.N, p.m, p.g, p.beta0, p.dmin) == (11, 11, 3, 3, 4)
    assert [k + r for k, r in p.group_layout] == [5, 5, 4]
    assert p.optimality_case == "clause2" and p.certified


def test_example2_params():
    p = derive_params(**EX2)
    assert (p.N, p.m, p.g, p.beta0, p.dmin, p.D) == (36, 36, 3, 0, 5, 9)
    assert p.group_layout == ((3, 2),) * 3
    assert p.optimality_case == "clause1"


def test_not_optimal_configuration():
    with pytest.raises(NotOptimalConfiguration, match="ceil"):
        derive_params(14, 12, 4, 2, 1, 2)


def test_forced_build_is_uncertified():
    with pytest.raises(NotOptimalConfiguration):
        derive_params(14, 8, 4, 2, 1, 2)
    p = derive_params(14, 8, 4, 2, 1, 2, force=True)
    assert not p.certified and p.optimality_case == "forced"
    assert sum(k + r for k, r in p.group_layout) == 14


@pytest.mark.parametrize("args", [
    (0, 1, 1, 2, 1, 2), (5, 4, 2, 1, 1, 2), (14, 9, 4, 2, 1, 3),
    (15, 2, 3, 3, 1, 8), (15, 28, 3, 3, 4, 4)])
def test_invalid_params(args):
    with pytest.raises(InvalidParams):
        derive_params(*args)


def test_extension_degree_override():
    p = derive_params(**EX1, m=13)
    assert p.m == 13 and p.N == 11
    with pytest.raises(InvalidParams):
        derive_params(**EX1, m=10)


def test_params_dict_round_trip():
    p = derive_params(**EX2)
    assert CodeParams.from_dict(p.to_dict()) == p
    d = p.to_dict()
    d["N"] = 35
    with pytest.raises(InvalidParams):
        CodeParams.from_dict(d)


def test_bounds():
    assert dmin_bound(14, 9, 4, 2, 1) == 4
    assert dmin_bound(15, 28, 3, 3, 4) == 5
    assert dmin_bound(10, 3, 2, 3, 3) == 10
    assert dmin_scalar_bound(14, 9, 4, 2) == 4
    assert dmin_scalar_bound(11, 4, 4, 3) == 8
    assert dmin_single_parity_bound(14, 9, 4, 1) == 4


def test_layouts(ex1, ex2):
    assert [(g.start, g.k_local, g.size) for g in ex1.groups] == [(0, 4, 5), (5, 4, 5), (10, 3, 4)]
    assert [list(g.parity_nodes) for g in ex1.groups] == [[4], [9], [13]]
    assert [list(g.parity_nodes) for g in ex2.groups] == [[3, 4], [8, 9], [13, 14]]
    assert ex2.is_parity(4) and not ex2.is_parity(5)


def test_evaluation_points(ex1, ex2):
    F = ex1.field
    assert np.array_equal(ex1.eval_point_of(1, 0), F.basis(1))
    assert np.array_equal(ex1.eval_point_of(4, 0), F.basis(0) ^ F.basis(1) ^ F.basis(2) ^ F.basis(3))
    assert np.array_equal(ex1.eval_point_of(13, 0), F.basis(8) ^ F.basis(9) ^ F.basis(10))
    for code in (ex1, ex2):
        a = code.params.alpha
        for g in code.groups:
            pts = code.points[list(g.nodes)].reshape(-1, code.field.m)
            assert code.field.rank_over_base(pts) == g.k_local * a
        assert code.surviving_span(()) == code.params.N
    with pytest.raises(IndexError):
        ex1.eval_point_of(14, 0)


def test_codeword_matches_evaluation(ex2, rng):
    F = ex2.field
    f = F.random(rng, 28)
    cw = ex2.encode(f)
    coeffs = f
    for b in cw.shares:
        for t in range(4):
            pt = ex2.eval_point_of(b.node_id, t)
            val = np.bitwise_xor.reduce(
                F.mul(coeffs, np.stack([F.frobenius(pt, i) for i in range(28)])), axis=0)
            assert np.array_equal(b.symbols[t], val)


def test_zero_file_zero_shares(ex1):
    cw = ex1.encode(ex1.field.zeros(9))
    assert all(not b.symbols.any() for b in cw.shares)
    assert len(cw.shares) == 14


def test_short_file_is_padded(ex1, rng):
    f = ex1.field.random(rng, 5)
    out = ex1.reconstruct(ex1.encode(f).available())
    assert np.array_equal(out[:5], f) and not out[5:].any()
    with pytest.raises(ValueError):
        ex1.encode(ex1.field.random(rng, 10))


def test_example1_repairs(ex1, rng):
    cw = ex1.encode(ex1.field.random(rng, 9))
    res = ex1.local_repair(cw.available([1]), 1)
    assert np.array_equal(res.block.symbols, cw.shares[1].symbols)
    assert res.contacted == (0, 2, 3, 4) and res.symbols_downloaded == 4
    res = ex1.local_repair(cw.available([9]), 9)
    assert res.block.is_parity and np.array_equal(res.block.symbols, cw.shares[9].symbols)
    res = ex1.local_repair(cw.available([11]), 11)
    assert len(res.contacted) == 3  # remainder group holds 3 data nodes
    with pytest.raises(GroupOverwhelmed):
        ex1.local_repair(cw.available([0, 1]), 0)


def test_example2_pair_repairs(ex2, rng):
    cw = ex2.encode(ex2.field.random(rng, 28))
    for g in ex2.groups:
        for a, b in itertools.combinations(g.nodes, 2):
            avail = cw.available([a, b])
            for t in (a, b):
                res = ex2.local_repair(avail, t)
                assert np.array_equal(res.block.symbols, cw.shares[t].symbols)
                assert len(res.contacted) == 3 and res.symbols_downloaded == 12
                assert all(ex2.group_of(c) is g for c in res.contacted)


def test_example1_reconstruct_every_triple(ex1, rng):
    f = ex1.field.random(rng, 9)
    cw = ex1.encode(f)
    count = 0
    for pat in itertools.combinations(range(14), 3):
        assert np.array_equal(ex1.reconstruct(cw.available(pat)), f)
        count += 1
    assert count == 364


def test_reconstruct_failure(ex1, rng):
    cw = ex1.encode(ex1.field.random(rng, 9))
    with pytest.raises(RankDeficient):
        ex1.reconstruct(cw.available([0, 1, 2, 3]))


def test_example2_four_failures_decode(ex2, rng):
    f = ex2.field.random(rng, 28)
    cw = ex2.encode(f)
    for pat in [(0, 1, 2, 3), (0, 1, 5, 6), (3, 4, 13, 14), (0, 5, 10, 14), (0, 1, 2, 5)]:
        assert np.array_equal(ex2.reconstruct(cw.available(pat)), f)


def test_pattern_counts(ex2):
    p = ex2.pattern([0, 1, 7, 14])
    assert p.per_group_counts == (2, 1, 1) and len(p) == 4
    with pytest.raises(ValueError):
        ex2.pattern([15])
