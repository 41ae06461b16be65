"""Riemann-Roch spaces ``L(k * sum_{P in S} P)`` as subspaces of one ambient space.

Every function of ``W = L(k * sum_{all P} P)`` is written ``g / t_den^k`` with
``t_den = x^Q - x``.  Since ``t_den`` vanishes simply at each affine rational
point and has its only pole at infinity, ``g`` ranges over ``L(k n P_inf)``,
which has the monomial basis ``x^a y^b`` of pole order ``<= k n``.  A function
lies in ``L(k * sum_S P)`` iff ``g`` vanishes to order ``k`` at every excluded
affine point and, when infinity is excluded, has pole order ``<= k deg t_den``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .curve import CurveModel, RationalPoint, local_expand, series_mul, series_x
from .fqlinalg import MatrixFq, Subspace, kernel, subspace_intersect

MAX_AMBIENT_DIM = int(os.environ.get("RRNETCODE_MAX_N", "512"))


class SpaceTooLarge(ValueError):
    pass


@dataclass(frozen=True, order=True)
class SubsetS:
    """Strictly increasing indices into ``curve.points``."""

    indices: tuple[int, ...]

    @classmethod
    def of(cls, indices: Iterable[int], n: int | None = None) -> SubsetS:
        idx = tuple(sorted(int(i) for i in indices))
        if len(set(idx)) != len(idx):
            raise ValueError(f"repeated point index in {idx}")
        if n is not None and idx and not (0 <= idx[0] and idx[-1] < n):
            raise ValueError(f"point index out of range [0, {n}) in {idx}")
        return cls(idx)

    @property
    def s(self) -> int:
        return len(self.indices)

    def __and__(self, other: SubsetS) -> SubsetS:
        return SubsetS(tuple(sorted(set(self.indices) & set(other.indices))))

    def __iter__(self):
        return iter(self.indices)

    def __len__(self) -> int:
        return len(self.indices)


@dataclass(frozen=True, eq=False)
class AmbientSpace:
    curve: CurveModel
    k: int
    monomials: tuple[tuple[int, int], ...]
    conditions: dict[int, np.ndarray] = field(repr=False)

    @property
    def N(self) -> int:
        return len(self.monomials)

    @property
    def field(self):
        return self.curve.field

    def pole_order(self, mono: tuple[int, int]) -> int:
        a, b = mono
        return a * self.curve.x_pole + b * (self.curve.y_pole or 0)

    @property
    def riemann_roch_dim(self) -> int:
        return self.k * self.curve.n + 1 - self.curve.genus

    def to_json(self) -> dict:
        return {
            "curve": {"family": self.curve.family, "q": self.curve.base_q},
            "k": self.k,
            "N": self.N,
            "monomials": [list(m) for m in self.monomials],
        }


def _monomials(curve: CurveModel, k: int) -> list[tuple[int, int]]:
    bound = k * curve.n
    if curve.family == "p1":
        monos = [(a, 0) for a in range(bound + 1)]
    else:
        q = curve.base_q
        monos = [(a, b) for b in range(q) for a in range((bound - b * (q + 1)) // q + 1) if b * (q + 1) <= bound]
    return sorted(monos, key=lambda m: (m[0] * curve.x_pole + m[1] * (curve.y_pole or 0), m))


def _affine_rows(curve: CurveModel, monos: Sequence[tuple[int, int]], point: RationalPoint, k: int) -> np.ndarray:
    """Row j holds the t^j coefficient of each monomial expanded at ``point``."""
    f = curve.field
    order = k - 1
    xs = series_x(point.x, order)
    max_a = max(a for a, _ in monos)
    max_b = max(b for _, b in monos)
    xpow = [np.eye(1, order + 1, dtype=np.int64)[0]]
    for _ in range(max_a):
        xpow.append(series_mul(xpow[-1], xs, f))
    ypow = [xpow[0]]
    if max_b:
        ys = np.array(local_expand(curve, point, order, cap=max(8 * k, order)).y_coeffs, dtype=np.int64)
        for _ in range(max_b):
            ypow.append(series_mul(ypow[-1], ys, f))
    cols = [series_mul(xpow[a], ypow[b], f) if b else xpow[a] for a, b in monos]
    return np.stack(cols, axis=1)


def ambient_build(curve: CurveModel, k: int, max_dim: int | None = None) -> AmbientSpace:
    """Ordered monomial basis of W plus all vanishing conditions, built eagerly."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    limit = MAX_AMBIENT_DIM if max_dim is None else max_dim
    if k * curve.n + 1 > limit:
        raise SpaceTooLarge(f"ambient dimension ~{k * curve.n + 1 - curve.genus} exceeds limit {limit}")
    monos = _monomials(curve, k)
    conditions: dict[int, np.ndarray] = {}
    for pt in curve.affine_points:
        conditions[pt.index] = _affine_rows(curve, monos, pt, k)
    inf_cut = k * curve.denominator_pole_order
    orders = [m[0] * curve.x_pole + m[1] * (curve.y_pole or 0) for m in monos]
    sel = [i for i, o in enumerate(orders) if o > inf_cut]
    inf_rows = np.zeros((len(sel), len(monos)), dtype=np.int64)
    inf_rows[np.arange(len(sel)), sel] = 1
    conditions[curve.infinity.index] = inf_rows
    for rows in conditions.values():
        rows.setflags(write=False)
    return AmbientSpace(curve, k, tuple(monos), conditions)


def vanishing_rows(space: AmbientSpace, point: RationalPoint | int) -> MatrixFq:
    idx = point if isinstance(point, int) else point.index
    if idx not in space.conditions:
        raise ValueError(f"point {point} is not on {space.curve}")
    return MatrixFq(space.conditions[idx], space.field)


def subspace_for(space: AmbientSpace, subset: SubsetS | Iterable[int]) -> Subspace:
    """``V_S = L(k * sum_{P in S} P)`` in the coordinates of ``space``."""
    if not isinstance(subset, SubsetS):
        subset = SubsetS.of(subset, space.curve.n)
    keep = set(subset.indices)
    blocks = [rows for idx, rows in space.conditions.items() if idx not in keep]
    if blocks:
        m = np.vstack(blocks)
    else:
        m = np.zeros((0, space.N), dtype=np.int64)
    return kernel(MatrixFq(m, space.field))


def rr_prediction(space: AmbientSpace, size: int) -> int | None:
    """``k s + 1 - g`` when ``k s >= 2g - 1``, else ``None``."""
    g = space.curve.genus
    if space.k * size >= 2 * g - 1:
        return space.k * size + 1 - g
    return None


def intersect_matches_subset(space: AmbientSpace, s1: SubsetS | Iterable[int], s2: SubsetS | Iterable[int]) -> dict:
    n = space.curve.n
    s1 = s1 if isinstance(s1, SubsetS) else SubsetS.of(s1, n)
    s2 = s2 if isinstance(s2, SubsetS) else SubsetS.of(s2, n)
    meet = s1 & s2
    inter = subspace_intersect(subspace_for(space, s1), subspace_for(space, s2))
    direct = subspace_for(space, meet)
    return {
        "s1": list(s1.indices),
        "s2": list(s2.indices),
        "overlap": len(meet),
        "dim_intersection": inter.rank,
        "dim_overlap_space": direct.rank,
        "predicted": rr_prediction(space, len(meet)) if len(meet) else None,
        "equal": inter == direct,
    }


def codeword_json(subset: SubsetS, v: Subspace) -> dict:
    return {"subset": list(subset.indices), "dim": v.rank, "basis": v.basis.tolist()}
