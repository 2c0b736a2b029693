"""[N, K, N-K+1] Gabidulin codes and erasure decoding."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import FieldMismatch, InvalidParams
from .gf import ExtField
from .linpoly import LinearizedPoly, lp_eval_batch, lp_interpolate


@dataclass(frozen=True, eq=False)
class GabidulinCode:
    """Evaluation code at the first N polynomial-basis elements 1, x, ..., x^(N-1)."""

    field: ExtField
    N: int
    K: int
    eval_points: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if not self.field.m >= self.N >= self.K >= 1:
            raise InvalidParams(f"need m >= N >= K >= 1, got m={self.field.m}, N={self.N}, K={self.K}")
        pts = np.zeros((self.N, self.field.m), np.uint8)
        pts[np.arange(self.N), np.arange(self.N)] = 1
        pts.flags.writeable = False
        object.__setattr__(self, "eval_points", pts)

    @property
    def D(self) -> int:
        return self.N - self.K + 1

    def encode(self, message) -> np.ndarray:
        msg = self.field.check(message)
        if msg.shape != (self.K, self.field.m):
            raise FieldMismatch(f"message must have shape ({self.K}, {self.field.m}), got {msg.shape}")
        return self.encode_batch(msg[None])[0]

    def encode_batch(self, messages) -> np.ndarray:
        """Encode B messages at once: (B, K, m) -> (B, N, m)."""
        return lp_eval_batch(self.field, messages, self.eval_points)

    def erasure_decode(self, obs_points, obs_values) -> np.ndarray:
        """Recover the message from any (point, f(point)) pairs spanning >= K dims.

        The points need not be evaluation points of the code; any F_q-linear
        combination of them carries the matching combination of codeword
        symbols.
        """
        f = lp_interpolate(self.field, obs_points, obs_values, self.K)
        return f.coeffs

    def message_poly(self, message) -> LinearizedPoly:
        return LinearizedPoly(self.field, message)


def rank_distance(F: ExtField, u, v) -> int:
    u, v = F.check(u), F.check(v)
    if u.shape != v.shape:
        raise FieldMismatch(f"length mismatch: {u.shape} vs {v.shape}")
    return F.rank_over_base(u ^ v)
