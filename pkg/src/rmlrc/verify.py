"""Brute-force oracles for the minimum distance of constructed codes.

Two independent routes measure d_min:

* ``algebraic_dmin`` enumerates erasure patterns and asks whether the
  surviving evaluation points still span M dimensions over F_q;
* ``operational_dmin`` actually runs the decoder on a real codeword.

Both enumerate patterns concentrated in the fewest local groups first, since
those are the ones that fail first.
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterator

import numpy as np

from .errors import ConditionsNotMet, Inconsistent, RankDeficient, TooLarge
from .lrc import (CodeParams, Codeword, ErasurePattern, LocallyRepairableCode,
                  dmin_bound, dmin_scalar_bound, dmin_single_parity_bound)

BUDGET = 10 ** 7
CHUNK = 2048


# ---------------------------------------------------------------------------
# pattern enumeration

def _compositions(total: int, caps: list[int]) -> Iterator[tuple[int, ...]]:
    """Positive parts bounded by caps, largest first part first."""
    if len(caps) == 1:
        if 1 <= total <= caps[0]:
            yield (total,)
        return
    rest_cap = sum(caps[1:])
    for first in range(min(caps[0], total - (len(caps) - 1)), 0, -1):
        if total - first > rest_cap:
            break
        for tail in _compositions(total - first, caps[1:]):
            yield (first,) + tail


def concentrated_patterns(code: LocallyRepairableCode, e: int) -> Iterator[tuple[int, ...]]:
    """Every e-subset of nodes exactly once, fewest touched groups first."""
    if e == 0:
        yield ()
        return
    groups = code.groups
    for k in range(1, min(e, len(groups)) + 1):
        for sel in itertools.combinations(groups, k):
            for comp in _compositions(e, [g.size for g in sel]):
                choices = [itertools.combinations(g.nodes, c) for g, c in zip(sel, comp)]
                for parts in itertools.product(*choices):
                    yield tuple(sorted(itertools.chain.from_iterable(parts)))


def _chunks(it, size):
    it = iter(it)
    while True:
        block = list(itertools.islice(it, size))
        if not block:
            return
        yield block


def _guard(n: int, e: int, budget: int) -> None:
    count = math.comb(n, e)
    if count > budget:
        raise TooLarge(f"C({n}, {e}) = {count} patterns exceed the budget of {budget}")


# ---------------------------------------------------------------------------
# rank-erasure accounting

def node_to_rank_erasures(code: LocallyRepairableCode, pattern) -> int:
    """N minus the F_q-span of the evaluation points left after ``pattern``."""
    erased = pattern.erased if isinstance(pattern, ErasurePattern) else pattern
    return code.params.N - code.surviving_span(erased)


def local_rank_erasures(code: LocallyRepairableCode, pattern) -> int:
    """Closed form: a group with e >= delta-1 erasures loses (e - delta + 1) * alpha dims."""
    if not isinstance(pattern, ErasurePattern):
        pattern = code.pattern(pattern)
    p = code.params
    return sum(max(0, c - (p.delta - 1)) * p.alpha for c in pattern.per_group_counts)


# ---------------------------------------------------------------------------
# oracles

def _survivor_mask(code, patterns):
    mask = np.ones((len(patterns), code.n), bool)
    for i, pat in enumerate(patterns):
        mask[i, list(pat)] = False
    return mask


def _first_algebraic_failure(code: LocallyRepairableCode, e: int) -> tuple[int, ...] | None:
    p = code.params
    pts = code.points.reshape(code.n, -1)
    for block in _chunks(concentrated_patterns(code, e), CHUNK):
        keep = np.nonzero(_survivor_mask(code, block))[1].reshape(len(block), code.n - e)
        V = pts[keep].reshape(len(block), (code.n - e) * p.alpha, code.field.m)
        ranks = code.field.rank_batch(V)
        bad = np.nonzero(ranks < p.M)[0]
        if bad.size:
            return block[bad[0]]
    return None


def algebraic_dmin(code: LocallyRepairableCode, budget: int = BUDGET,
                   return_witness: bool = False):
    """n minus the largest node set whose points span fewer than M dimensions."""
    for e in range(0, code.n + 1):
        _guard(code.n, e, budget)
        w = _first_algebraic_failure(code, e)
        if w is not None:
            return (e, w) if return_witness else e
    raise AssertionError("erasing every node must fail")


@dataclass
class DecodeOutcome:
    ok: bool
    pattern: tuple[int, ...]
    reason: str = ""


def decode_check(code: LocallyRepairableCode, cw: Codeword, file: np.ndarray,
                 pattern: tuple[int, ...]) -> DecodeOutcome:
    try:
        out = code.reconstruct(cw.available(pattern))
    except RankDeficient:
        return DecodeOutcome(False, pattern, "rank-deficient")
    except Inconsistent:
        return DecodeOutcome(False, pattern, "inconsistent")
    if not np.array_equal(out, file):
        return DecodeOutcome(False, pattern, "miscorrection")
    return DecodeOutcome(True, pattern)


def _first_operational_failure(code, cw, file, e, workers) -> DecodeOutcome | None:
    def run(block):
        for pat in block:
            res = decode_check(code, cw, file, pat)
            if not res.ok:
                return res
        return None

    blocks = _chunks(concentrated_patterns(code, e), 64)
    if workers <= 1:
        for block in blocks:
            res = run(block)
            if res is not None:
                return res
        return None
    with ThreadPoolExecutor(workers) as pool:
        # map yields in submission order, so the reported witness is scheduling-independent
        for res in pool.map(run, blocks):
            if res is not None:
                return res
    return None


def operational_dmin(code: LocallyRepairableCode, codeword: Codeword | None = None,
                     file: np.ndarray | None = None, *, budget: int = BUDGET,
                     workers: int = 1, seed: int = 0, return_witness: bool = False):
    """Largest d such that every (d-1)-erasure pattern decodes to the file.

    Starts at the distance bound, walks down while some pattern fails and up
    while all patterns succeed.
    """
    p = code.params
    if codeword is None:
        rng = np.random.default_rng(seed)
        file = code.field.random(rng, p.M)
        codeword = code.encode(file)
    elif file is None:
        raise ValueError("file is required when a codeword is given")

    def fails(e):
        _guard(code.n, e, budget)
        return _first_operational_failure(code, codeword, file, e, workers)

    e = min(max(p.dmin, 0), code.n)
    witness = fails(e)
    if witness is None:
        while e < code.n:
            witness = fails(e + 1)
            e += 1
            if witness is not None:
                break
        d = e
    else:
        while e > 0:
            w = fails(e - 1)
            if w is None:
                break
            witness = w
            e -= 1
        d = e
    return (d, witness) if return_witness else d


@dataclass
class DminReport:
    bound: int
    algebraic_dmin: int | None
    operational_dmin: int | None
    agree: bool
    achieved: bool
    exhaustive: bool = True
    mode: str = "exhaustive"
    algebraic_witness: list[int] | None = None
    operational_witness: list[int] | None = None
    failure_reason: str | None = None
    params: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return asdict(self)


def verify_code(code: LocallyRepairableCode, *, budget: int = BUDGET, workers: int = 1,
                seed: int = 0) -> DminReport:
    """Run both exhaustive oracles and compare them with the bound."""
    alg, alg_w = algebraic_dmin(code, budget, return_witness=True)
    op, op_w = operational_dmin(code, budget=budget, workers=workers, seed=seed, return_witness=True)
    bound = code.params.dmin
    return DminReport(
        bound=bound, algebraic_dmin=alg, operational_dmin=op, agree=alg == op,
        achieved=alg == op == bound, algebraic_witness=list(alg_w),
        operational_witness=list(op_w.pattern) if op_w else None,
        failure_reason=op_w.reason if op_w else None, params=code.params.to_dict())


def probe(code: LocallyRepairableCode, samples: int = 200, seed: int = 0) -> DminReport:
    """Sampled, non-exhaustive check: random (bound-1)-patterns must decode and
    the worst-case extensions must fail. Not an oracle."""
    p = code.params
    rng = np.random.default_rng(seed)
    file = code.field.random(rng, p.M)
    cw = code.encode(file)
    notes = [f"non-exhaustive probe: {samples} random patterns of size {p.dmin - 1}"]
    bad = None
    e = max(p.dmin - 1, 0)
    for _ in range(samples):
        pat = tuple(sorted(rng.choice(p.n, size=e, replace=False).tolist()))
        res = decode_check(code, cw, file, pat)
        if not res.ok:
            bad = res
            break
    fail_seen = None
    if p.certified:
        for wc in worst_case_patterns(code):
            if decode_check(code, cw, file, tuple(sorted(wc.pattern.erased))).ok is False:
                bad = bad or DecodeOutcome(False, tuple(sorted(wc.pattern.erased)), "worst-case pattern failed")
            ext = tuple(sorted(wc.extension.erased))
            if not decode_check(code, cw, file, ext).ok:
                fail_seen = ext
        notes.append("worst-case patterns from the optimality proof checked")
    ok = bad is None and fail_seen is not None
    return DminReport(
        bound=p.dmin, algebraic_dmin=None, operational_dmin=None, agree=bad is None,
        achieved=ok, exhaustive=False, mode="probe",
        operational_witness=list(bad.pattern) if bad else (list(fail_seen) if fail_seen else None),
        failure_reason=bad.reason if bad else None, params=p.to_dict(), notes=notes)


# ---------------------------------------------------------------------------
# worst-case patterns from the optimality argument

@dataclass(frozen=True)
class ParamDecomposition:
    """N = alpha*(alpha0*r + beta0), M = alpha*(alpha1*r + beta1) + gamma1."""

    alpha0: int
    beta0: int
    alpha1: int
    beta1: int
    gamma1: int

    def rank_erasure_budget(self, r: int, alpha: int) -> int:
        return (r * alpha * (self.alpha0 - self.alpha1) + alpha * (self.beta0 - self.beta1)
                - self.gamma1)


def decompose(params: CodeParams) -> ParamDecomposition:
    a, r = params.alpha, params.r
    alpha0, beta0 = divmod(params.N // a, r)
    alpha1, beta1 = divmod(params.M // a, r)
    dec = ParamDecomposition(alpha0, beta0, alpha1, beta1, params.M % a)
    assert params.N == a * (alpha0 * r + beta0)
    assert params.M == a * (alpha1 * r + beta1) + dec.gamma1
    assert alpha0 >= alpha1
    return dec


@dataclass(frozen=True)
class WorstCase:
    case: str
    pattern: ErasurePattern
    extension: ErasurePattern
    rank_erasures: int  # the proof's accounting for ``pattern``


def _erase(group, count: int, tail: bool) -> list[int]:
    nodes = list(group.nodes)
    return nodes[-count:] if tail else nodes[:count]


def worst_case_patterns(code: LocallyRepairableCode) -> list[WorstCase]:
    """Patterns of size d_min - 1 that pack erasures into as few groups as possible.

    For each applicable case two node choices are emitted per arrangement
    (data nodes first and parity nodes first). The extension adds one node to
    the partially erased group, which pushes the loss past D - 1.
    """
    p = code.params
    if not p.certified:
        raise ConditionsNotMet("worst-case analysis only covers the optimal parameter clauses")
    dec = decompose(p)
    r, a, dm1 = p.r, p.alpha, p.delta - 1
    a0, b0, a1, b1, g1 = dec.alpha0, dec.beta0, dec.alpha1, dec.beta1, dec.gamma1
    full = [g for g in code.groups if g.k_local == r]
    small = [g for g in code.groups if g.k_local != r]
    extra = 1 if g1 > 0 else 0
    arrangements = []  # (case, [(group, count)], partial group)

    if b0 == 0:
        if g1 == 0 and b1 == 0:
            case, nfull, partial = "1a", a0 - a1, dm1
        elif g1 == 0:
            case, nfull, partial = "1b", a0 - a1 - 1, r - b1 + dm1
        else:
            case, nfull, partial = "1c", a0 - a1 - 1, r - b1 - 1 + dm1
        plan = [(g, g.size) for g in full[:nfull]] + [(full[nfull], partial)]
        arrangements.append((case, plan, full[nfull]))
    else:
        if not (b0 >= (-(-p.M // a)) % r > 0):
            raise ConditionsNotMet("remainder-group clause does not hold")
        case = "2b" if g1 else "2a"
        partial = b0 - b1 - extra + dm1
        lead = [(g, g.size) for g in full[: a0 - a1]]
        arrangements.append((case, lead + [(small[0], partial)], small[0]))
        if a0 - a1 < len(full):
            nxt = full[a0 - a1]
            arrangements.append((case, lead + [(nxt, partial)], nxt))
        if a0 - a1 >= 1:
            alt = [(small[0], small[0].size)] + [(g, g.size) for g in full[: a0 - a1 - 1]]
            nxt = full[a0 - a1 - 1]
            arrangements.append((case + "-alt", alt + [(nxt, r - b1 - extra + dm1)], nxt))

    out = []
    for case, plan, partial_group in arrangements:
        for tail in (False, True):
            erased = [n for g, c in plan for n in _erase(g, c, tail)]
            pat = code.pattern(erased)
            room = [n for n in partial_group.nodes if n not in pat.erased]
            ext = code.pattern(list(pat.erased) + room[:1])
            acct = sum(max(0, c - dm1) * a for _, c in plan)
            assert len(pat) == p.dmin - 1, (case, len(pat), p.dmin)
            out.append(WorstCase(case, pat, ext, acct))
    return out


# ---------------------------------------------------------------------------
# bound identities

def verify_bound_sweep(n_max: int = 30, delta_max: int = 5, alpha_max: int = 4) -> dict:
    """Check the general bound against the delta=2 and alpha=1 special forms."""
    checked = mism_d2 = mism_a1 = 0
    examples = []
    for n in range(1, n_max + 1):
        for alpha in range(1, alpha_max + 1):
            for M in range(1, n * alpha + 1):
                for r in range(1, n + 1):
                    for delta in range(2, delta_max + 1):
                        checked += 1
                        b = dmin_bound(n, M, r, delta, alpha)
                        if delta == 2 and b != dmin_single_parity_bound(n, M, r, alpha):
                            mism_d2 += 1
                            examples.append(("delta=2", n, M, r, delta, alpha))
                        if alpha == 1 and b != dmin_scalar_bound(n, M, r, delta):
                            mism_a1 += 1
                            examples.append(("alpha=1", n, M, r, delta, alpha))
    return {"checked": checked, "delta2_mismatches": mism_d2, "alpha1_mismatches": mism_a1,
            "examples": examples[:10], "ok": mism_d2 == mism_a1 == 0}
