"""Systematic MDS array codes over F_q acting on blocks of F_{q^m} symbols.

A block is an (alpha, m) array: alpha symbols of F_{q^m}. The array code is
alpha stacked copies of one scalar [k + delta - 1, k, delta] code, so every
parity symbol is an F_q-combination of the data symbols at the same offset.
"""
from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from .errors import FieldTooSmall, InvalidParams, TooManyErasures
from .gf import BaseField, base_field, log2_exact


@dataclass(frozen=True, eq=False)
class NodeBlock:
    """Content of one storage node: alpha symbols of F_{q^m}."""

    node_id: int
    group_id: int
    is_parity: bool
    symbols: np.ndarray = field(repr=False)  # (alpha, m)

    @property
    def alpha(self) -> int:
        return self.symbols.shape[0]


@dataclass(frozen=True, eq=False)
class MdsLayer:
    base: BaseField = field(repr=False)
    k_local: int
    delta: int
    coeff_matrix: np.ndarray  # (delta - 1, k_local) parity rows

    @property
    def q(self) -> int:
        return self.base.q

    @property
    def n_local(self) -> int:
        return self.k_local + self.delta - 1

    @property
    def generator(self) -> np.ndarray:
        """(n_local, k_local) matrix mapping data blocks to all blocks."""
        return np.vstack([np.eye(self.k_local, dtype=np.uint8), self.coeff_matrix])


def mds_build(q: int, k_local: int, delta: int) -> MdsLayer:
    """XOR parity for delta == 2, a Cauchy parity matrix otherwise.

    Cauchy labels are x_j = j for the data columns and y_p = k_local + p for
    the parity rows, read as elements of GF(q) in integer encoding.
    """
    base = base_field(log2_exact(q))
    if k_local < 1 or delta < 2:
        raise InvalidParams(f"need k_local >= 1 and delta >= 2, got {k_local}, {delta}")
    if delta == 2:
        C = np.ones((1, k_local), np.uint8)
    else:
        if q < k_local + delta - 1:
            raise FieldTooSmall(
                f"Cauchy matrix needs q >= k_local + delta - 1 = {k_local + delta - 1}, got q={q}")
        C = np.empty((delta - 1, k_local), np.uint8)
        for p in range(delta - 1):
            for j in range(k_local):
                C[p, j] = base.inv((k_local + p) ^ j)
    C.flags.writeable = False
    return MdsLayer(base, k_local, delta, C)


def mds_encode(layer: MdsLayer, data) -> np.ndarray:
    """(k_local, alpha, m) data blocks -> (n_local, alpha, m), data first."""
    data = np.asarray(data, np.uint8)
    if data.ndim != 3 or data.shape[0] != layer.k_local:
        raise ValueError(f"expected ({layer.k_local}, alpha, m) data blocks, got {data.shape}")
    k, a, m = data.shape
    parity = K.fq_combine(layer.coeff_matrix, np.ascontiguousarray(data.reshape(k, a * m)),
                          layer.base.mul_table)
    return np.concatenate([data, parity.reshape(-1, a, m)])


def mds_repair(layer: MdsLayer, surviving: Mapping[int, np.ndarray],
               erased: Iterable[int]) -> dict[int, np.ndarray]:
    """Rebuild the erased positions from the first k_local surviving ones.

    Exactly k_local entries of ``surviving`` are read.
    """
    erased = sorted(set(erased))
    if len(erased) > layer.delta - 1:
        raise TooManyErasures(f"{len(erased)} erasures exceed delta - 1 = {layer.delta - 1}")
    if any(not 0 <= e < layer.n_local for e in erased):
        raise ValueError("erased position out of range")
    if not erased:
        return {}
    helpers = [p for p in sorted(surviving) if p not in erased][: layer.k_local]
    if len(helpers) < layer.k_local:
        raise TooManyErasures(f"only {len(helpers)} blocks survive, need {layer.k_local}")
    blocks = np.stack([np.asarray(surviving[p], np.uint8) for p in helpers])
    k, a, m = blocks.shape
    G = layer.generator
    # data = G_S^-1 * blocks_S; erased = G_E * data
    recover = layer.base.mat_mul(G[erased], layer.base.mat_inv(G[helpers]))
    out = K.fq_combine(recover, np.ascontiguousarray(blocks.reshape(k, a * m)), layer.base.mul_table)
    return {e: out[i].reshape(a, m) for i, e in enumerate(erased)}
