"""Gabidulin-precoded locally repairable codes.

A file of M symbols over F_{q^m} is encoded with an [N, M] Gabidulin code,
the N codeword symbols are folded into N/alpha data nodes of alpha symbols,
the data nodes are split into local groups of r (plus one smaller group of
beta0 nodes when r does not divide N/alpha), and each group receives
delta - 1 parity nodes from an MDS array code over F_q.

Node numbering is group-contiguous: group 0's data nodes, group 0's parity
nodes, group 1's data nodes, and so on. Data node d stores the Gabidulin
symbols d*alpha .. d*alpha + alpha - 1.
"""
from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import asdict, dataclass, field
from typing import Iterator

import numpy as np

from .errors import GroupOverwhelmed, InvalidParams, NotOptimalConfiguration
from .gabidulin import GabidulinCode
from .gf import ExtField, get_field, log2_exact
from .mds import MdsLayer, NodeBlock, mds_build, mds_encode, mds_repair


def _cdiv(a: int, b: int) -> int:
    return -(-a // b)


def dmin_bound(n: int, M: int, r: int, delta: int, alpha: int) -> int:
    """Upper bound on the minimum distance of an (r, delta, alpha) LRC."""
    return n - _cdiv(M, alpha) + 1 - (_cdiv(M, r * alpha) - 1) * (delta - 1)


def dmin_scalar_bound(n: int, M: int, r: int, delta: int) -> int:
    """Scalar (alpha = 1) bound."""
    return n - M + 1 - (_cdiv(M, r) - 1) * (delta - 1)


def dmin_single_parity_bound(n: int, M: int, r: int, alpha: int) -> int:
    """Bound for delta = 2 vector codes."""
    return n - _cdiv(M, alpha) - _cdiv(M, r * alpha) + 2


@dataclass(frozen=True)
class CodeParams:
    n: int
    M: int
    r: int
    delta: int
    alpha: int
    q: int
    m: int
    N: int
    group_layout: tuple[tuple[int, int], ...]  # (data_nodes, parity_nodes) per group
    dmin: int
    optimality_case: str
    certified: bool = True

    @property
    def s(self) -> int:
        return log2_exact(self.q)

    @property
    def D(self) -> int:
        return self.N - self.M + 1

    @property
    def g(self) -> int:
        return len(self.group_layout)

    @property
    def beta0(self) -> int:
        return (self.N // self.alpha) % self.r

    def to_dict(self) -> dict:
        d = asdict(self)
        d["group_layout"] = [list(x) for x in self.group_layout]
        d.update(s=self.s, D=self.D, g=self.g, beta0=self.beta0)
        return d

    @classmethod
    def from_dict(cls, d: Mapping) -> "CodeParams":
        """Re-derive from the stored inputs and check the stored values match."""
        p = derive_params(d["n"], d["M"], d["r"], d["delta"], d["alpha"], d["q"],
                          m=d.get("m"), force=not d.get("certified", True))
        for key in ("N", "dmin", "optimality_case"):
            if key in d and d[key] != getattr(p, key):
                raise InvalidParams(f"stored {key}={d[key]!r} disagrees with derived {getattr(p, key)!r}")
        return p


def _nodes_for(k: int, r: int, delta: int) -> int:
    return k + _cdiv(k, r) * (delta - 1)


def derive_params(n: int, M: int, r: int, delta: int, alpha: int, q: int, *,
                  m: int | None = None, force: bool = False) -> CodeParams:
    """Choose the Gabidulin length N for (n, M, r, delta, alpha) over F_q.

    Only parameter sets covered by one of the two optimality clauses are
    accepted unless ``force`` is set, in which case the code is built but
    its distance is reported as uncertified.
    """
    for name, v in (("n", n), ("M", M), ("r", r), ("delta", delta), ("alpha", alpha)):
        if not isinstance(v, (int, np.integer)) or v < 1:
            raise InvalidParams(f"{name} must be a positive integer, got {v!r}")
    log2_exact(q)
    if delta < 2:
        raise InvalidParams(f"delta must be >= 2, got {delta}")
    if M < r * alpha:
        raise InvalidParams(f"need M >= r*alpha, got M={M} < {r * alpha}")
    if delta > 2 and q < r + delta - 1:
        raise InvalidParams(f"delta > 2 needs q >= r + delta - 1 = {r + delta - 1}, got q={q}")

    w = r + delta - 1
    rem_nodes = n % w - (delta - 1)
    rem_data = _cdiv(M, alpha) % r
    if n % w == 0:
        N = n * r * alpha // w
        case = "clause1"
    elif rem_nodes >= rem_data > 0:
        N = alpha * (n - delta + 1 - (delta - 1) * (n // w))
        case = "clause2"
    elif force:
        ks = [k for k in range(1, n + 1) if _nodes_for(k, r, delta) == n]
        if not ks:
            raise InvalidParams(f"no layout of data and parity nodes gives exactly n={n}")
        N = alpha * ks[-1]
        case = "forced"
    else:
        raise NotOptimalConfiguration(
            f"(r+delta-1)={w} does not divide n={n}, and "
            f"n mod (r+delta-1) - (delta-1) = {rem_nodes} >= ceil(M/alpha) mod r = {rem_data} > 0 fails")

    if N < M:
        raise InvalidParams(f"Gabidulin length N={N} is smaller than the file size M={M}")
    k_total = N // alpha
    beta0 = k_total % r
    if case == "clause1":
        assert N % (r * alpha) == 0
    elif case == "clause2":
        assert beta0 >= rem_data > 0
    layout = [(r, delta - 1)] * (k_total // r)
    if beta0:
        layout.append((beta0, delta - 1))
    if sum(d + p for d, p in layout) != n:
        raise InvalidParams(f"group layout {layout} does not add up to n={n}")
    if m is None:
        m = N
    elif m < N:
        raise InvalidParams(f"extension degree m={m} must be >= N={N}")
    return CodeParams(n=n, M=M, r=r, delta=delta, alpha=alpha, q=q, m=m, N=N,
                      group_layout=tuple(layout), dmin=dmin_bound(n, M, r, delta, alpha),
                      optimality_case=case, certified=case != "forced")


@dataclass(frozen=True)
class LocalGroup:
    index: int
    start: int  # first node id
    k_local: int
    size: int
    symbol_offset: int  # Gabidulin index of the group's first data symbol
    layer: MdsLayer = field(repr=False)

    @property
    def nodes(self) -> range:
        return range(self.start, self.start + self.size)

    @property
    def data_nodes(self) -> range:
        return range(self.start, self.start + self.k_local)

    @property
    def parity_nodes(self) -> range:
        return range(self.start + self.k_local, self.start + self.size)


@dataclass(frozen=True, eq=False)
class Codeword:
    params: CodeParams
    shares: tuple[NodeBlock, ...]

    def available(self, erased: Iterable[int] = ()) -> dict[int, NodeBlock]:
        erased = set(erased)
        return {b.node_id: b for b in self.shares if b.node_id not in erased}


@dataclass(frozen=True)
class RepairResult:
    block: NodeBlock
    contacted: tuple[int, ...]
    symbols_downloaded: int


@dataclass(frozen=True)
class ErasurePattern:
    erased: frozenset[int]
    per_group_counts: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.erased)


class _CountingReader(Mapping):
    """Position-indexed view of a group's surviving blocks that logs reads."""

    def __init__(self, group: LocalGroup, available: Mapping[int, NodeBlock], skip: int):
        self._group = group
        self._available = available
        self._positions = [nid - group.start for nid in group.nodes
                           if nid in available and nid != skip]
        self.reads: list[int] = []

    def __getitem__(self, pos: int) -> np.ndarray:
        if pos not in self._positions:
            raise KeyError(pos)
        nid = self._group.start + pos
        self.reads.append(nid)
        return self._available[nid].symbols

    def __iter__(self) -> Iterator[int]:
        return iter(self._positions)

    def __len__(self) -> int:
        return len(self._positions)


class LocallyRepairableCode:
    """Encoder, local repairer and global decoder for one parameter set."""

    def __init__(self, params: CodeParams):
        self.params = params
        self.field: ExtField = get_field(params.s, params.m)
        self.gabidulin = GabidulinCode(self.field, params.N, params.M)
        layers: dict[int, MdsLayer] = {}
        groups = []
        start = offset = 0
        for gi, (k, p) in enumerate(params.group_layout):
            if k not in layers:
                layers[k] = mds_build(params.q, k, params.delta)
            groups.append(LocalGroup(gi, start, k, k + p, offset, layers[k]))
            start += k + p
            offset += k * params.alpha
        self.groups: tuple[LocalGroup, ...] = tuple(groups)
        self.node_group = np.array([g.index for g in groups for _ in g.nodes], np.int64)
        self.points = self._build_points()
        self.points.flags.writeable = False

    def __repr__(self) -> str:
        p = self.params
        return f"LocallyRepairableCode(n={p.n}, M={p.M}, r={p.r}, delta={p.delta}, alpha={p.alpha}, q={p.q})"

    @property
    def n(self) -> int:
        return self.params.n

    def group_of(self, node_id: int) -> LocalGroup:
        return self.groups[int(self.node_group[node_id])]

    def is_parity(self, node_id: int) -> bool:
        g = self.group_of(node_id)
        return node_id >= g.start + g.k_local

    def _build_points(self) -> np.ndarray:
        p, F = self.params, self.field
        pts = np.zeros((p.n, p.alpha, F.m), np.uint8)
        for g in self.groups:
            for j in range(g.k_local):
                for t in range(p.alpha):
                    pts[g.start + j, t, g.symbol_offset + j * p.alpha + t] = 1
            for row, nid in zip(g.layer.coeff_matrix, g.parity_nodes):
                for j, c in enumerate(row):
                    for t in range(p.alpha):
                        pts[nid, t] ^= F.scalar_mul(int(c), pts[g.start + j, t])
        return pts

    def eval_point_of(self, node_id: int, symbol_index: int) -> np.ndarray:
        """The point at which the stored symbol evaluates the message polynomial."""
        if not 0 <= node_id < self.n or not 0 <= symbol_index < self.params.alpha:
            raise IndexError(f"no symbol {symbol_index} on node {node_id}")
        return self.points[node_id, symbol_index].copy()

    def pattern(self, erased: Iterable[int]) -> ErasurePattern:
        erased = frozenset(int(e) for e in erased)
        if any(not 0 <= e < self.n for e in erased):
            raise ValueError(f"erasure pattern {sorted(erased)} not within [0, {self.n})")
        counts = np.bincount(self.node_group[sorted(erased)], minlength=len(self.groups))
        return ErasurePattern(erased, tuple(int(c) for c in counts))

    # -- encoding ---------------------------------------------------------------

    def encode(self, file) -> Codeword:
        """Encode up to M symbols (shorter files are zero-padded)."""
        p, F = self.params, self.field
        file = F.check(file).reshape(-1, F.m)
        if file.shape[0] > p.M:
            raise ValueError(f"file has {file.shape[0]} symbols, code carries M={p.M}")
        msg = F.zeros(p.M)
        msg[: file.shape[0]] = file
        c = self.gabidulin.encode(msg)
        shares = []
        for g in self.groups:
            data = c[g.symbol_offset: g.symbol_offset + g.k_local * p.alpha]
            blocks = mds_encode(g.layer, data.reshape(g.k_local, p.alpha, F.m))
            for pos, nid in enumerate(g.nodes):
                blocks[pos].flags.writeable = False
                shares.append(NodeBlock(nid, g.index, pos >= g.k_local, blocks[pos]))
        return Codeword(p, tuple(shares))

    # -- repair and reconstruction ------------------------------------------------------

    def local_repair(self, available: Mapping[int, NodeBlock], target: int) -> RepairResult:
        """Rebuild ``target`` from at most r other nodes of its local group."""
        g = self.group_of(target)
        missing = [nid for nid in g.nodes if nid not in available or nid == target]
        if len(missing) > self.params.delta - 1:
            raise GroupOverwhelmed(
                f"group {g.index} is missing {len(missing)} nodes, local repair handles "
                f"{self.params.delta - 1}; run a global reconstruct instead")
        reader = _CountingReader(g, available, target)
        block = mds_repair(g.layer, reader, [target - g.start])[target - g.start]
        block.flags.writeable = False
        contacted = tuple(reader.reads)
        return RepairResult(NodeBlock(target, g.index, self.is_parity(target), block),
                            contacted, len(contacted) * self.params.alpha)

    def observations(self, available: Mapping[int, NodeBlock]) -> tuple[np.ndarray, np.ndarray]:
        nodes = sorted(available)
        m = self.field.m
        if not nodes:
            return self.field.zeros(0), self.field.zeros(0)
        pts = self.points[nodes].reshape(-1, m)
        vals = np.concatenate([np.asarray(available[n].symbols, np.uint8) for n in nodes])
        return pts, vals

    def reconstruct(self, available: Mapping[int, NodeBlock]) -> np.ndarray:
        """Recover the M file symbols from any surviving shares (data or parity)."""
        pts, vals = self.observations(available)
        return self.gabidulin.erasure_decode(pts, vals)

    def surviving_span(self, erased: Iterable[int]) -> int:
        erased = set(erased)
        keep = [i for i in range(self.n) if i not in erased]
        return self.field.rank_over_base(self.points[keep].reshape(-1, self.field.m))
