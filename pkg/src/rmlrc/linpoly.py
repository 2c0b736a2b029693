"""Linearized polynomials f(x) = sum_i a_i x^(q^i) over F_{q^m}."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .errors import Inconsistent, RankDeficient
from .gf import ExtField


@dataclass(frozen=True, eq=False)
class LinearizedPoly:
    field: ExtField
    coeffs: np.ndarray  # (T, m); row i is the coefficient of x^(q^i)

    def __post_init__(self):
        c = self.field.check(self.coeffs)
        if c.ndim != 2 or c.shape[0] < 1:
            raise ValueError("coeffs must be a non-empty (T, m) array")
        object.__setattr__(self, "coeffs", np.ascontiguousarray(c))

    @property
    def q_degree(self) -> int:
        nz = np.nonzero(self.coeffs.any(axis=1))[0]
        return int(nz[-1]) if nz.size else -1

    def __call__(self, x) -> np.ndarray:
        return lp_eval(self, x)

    def __add__(self, other: "LinearizedPoly") -> "LinearizedPoly":
        t = max(len(self.coeffs), len(other.coeffs))
        a = self.field.zeros(t)
        a[: len(self.coeffs)] ^= self.coeffs
        a[: len(other.coeffs)] ^= other.coeffs
        return LinearizedPoly(self.field, a)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearizedPoly) or other.field is not self.field:
            return NotImplemented
        t = max(self.q_degree, other.q_degree) + 1
        a = self.field.zeros(t)
        b = self.field.zeros(t)
        a[: min(t, len(self.coeffs))] = self.coeffs[:t]
        b[: min(t, len(other.coeffs))] = other.coeffs[:t]
        return bool(np.array_equal(a, b))

    __hash__ = None


def lp_eval(f: LinearizedPoly, x) -> np.ndarray:
    """Evaluate f at one element (m,) or at a vector of elements (L, m)."""
    F = f.field
    x = F.check(x)
    X = np.ascontiguousarray(x.reshape(-1, F.m))
    out = K.lin_eval(f.coeffs[None], X, F._fr[1 % F.m], F._mt, F._red)[0]
    return out.reshape(x.shape)


def lp_eval_batch(F: ExtField, coeffs: np.ndarray, X: np.ndarray) -> np.ndarray:
    """Evaluate B coefficient sets (B, T, m) at L points (L, m) -> (B, L, m)."""
    C = np.ascontiguousarray(F.check(coeffs))
    X = np.ascontiguousarray(F.check(X))
    return K.lin_eval(C, X, F._fr[1 % F.m], F._mt, F._red)


def select_independent(F: ExtField, points: np.ndarray, k: int) -> np.ndarray:
    """Greedy scan in input order keeping points that enlarge the F_q-span.

    Returns at most k indices.
    """
    P = np.ascontiguousarray(F.check(points))
    return K.independent_rows(P, k, F._mt, F._inv)


def lp_interpolate(F: ExtField, points, values, k: int) -> LinearizedPoly:
    """The unique f of q-degree < k through (points[j], values[j]).

    Solves the k x k Moore system on the first k independent points and then
    checks every given constraint.
    """
    points = np.ascontiguousarray(F.check(points).reshape(-1, F.m))
    values = np.ascontiguousarray(F.check(values).reshape(-1, F.m))
    if points.shape != values.shape:
        raise ValueError("points and values must have equal length")
    if k < 1:
        raise ValueError("k must be positive")
    idx = select_independent(F, points, k)
    if idx.size < k:
        raise RankDeficient(f"points span {idx.size} dimensions over F_q, need {k}")
    sel = np.ascontiguousarray(points[idx])
    moore = K.moore(sel, k, F._fr[1 % F.m], F._mt)
    coeffs, ok = K.solve_ext(moore, np.ascontiguousarray(values[idx]), F._fr[1 % F.m], F._mt, F._red, F._inv)
    if not ok:
        raise AssertionError("Moore matrix of independent points is singular")
    f = LinearizedPoly(F, coeffs)
    if points.shape[0] > k:
        check = K.lin_eval(coeffs[None], points, F._fr[1 % F.m], F._mt, F._red)[0]
        if not np.array_equal(check, values):
            bad = np.nonzero((check != values).any(axis=1))[0]
            raise Inconsistent(f"{bad.size} observation(s) disagree with the interpolant, first at index {bad[0]}")
    return f
