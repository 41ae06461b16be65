"""Dense linear algebra over F_q and the subspace calculus.

Matrices hold integer element codes (see :mod:`rrnetcode.gf`) in a numpy
array; every elimination step is a table lookup over whole rows.  Subspaces
are row spaces kept in reduced row-echelon form, so two subspaces are equal
exactly when their basis arrays are identical.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .gf import FieldElement, FieldError, FieldSpec


@dataclass(frozen=True, eq=False)
class MatrixFq:
    """Row-major matrix of element codes over one field."""

    entries: np.ndarray
    field: FieldSpec

    def __post_init__(self) -> None:
        a = np.array(self.entries, dtype=np.int64, copy=True)
        if a.ndim != 2:
            raise ValueError("matrix entries must be two-dimensional")
        if a.size and (a.min() < 0 or a.max() >= self.field.q):
            raise FieldError(f"entries outside [0, {self.field.q})")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int | FieldElement]], field: FieldSpec, cols: int | None = None) -> MatrixFq:
        rows = [[int(x) for x in r] for r in rows]
        if not rows:
            return cls(np.zeros((0, cols or 0), dtype=np.int64), field)
        return cls(np.array(rows, dtype=np.int64), field)

    @classmethod
    def zeros(cls, rows: int, cols: int, field: FieldSpec) -> MatrixFq:
        return cls(np.zeros((rows, cols), dtype=np.int64), field)

    @classmethod
    def identity(cls, n: int, field: FieldSpec) -> MatrixFq:
        return cls(np.eye(n, dtype=np.int64), field)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def __getitem__(self, idx: tuple[int, int]) -> FieldElement:
        return FieldElement(int(self.entries[idx]), self.field)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatrixFq):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.entries, other.entries)

    def __matmul__(self, other: MatrixFq) -> MatrixFq:
        _same_field(self.field, other.field)
        return MatrixFq(matmul(self.entries, other.entries, self.field), self.field)

    def tolist(self) -> list[list[int]]:
        return self.entries.tolist()


def _same_field(a: FieldSpec, b: FieldSpec) -> None:
    if a != b:
        raise FieldError(f"cannot mix {a} and {b}")


def matmul(a: np.ndarray, b: np.ndarray, field: FieldSpec) -> np.ndarray:
    """Product of code arrays ``a (r x n)`` and ``b (n x c)``."""
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for j in range(a.shape[1]):
        out = field.add_t[out, field.mul_t[a[:, j][:, None], b[j][None, :]]]
    return out


def _rref_array(a: np.ndarray, field: FieldSpec) -> tuple[np.ndarray, list[int]]:
    a = np.array(a, dtype=np.int64, copy=True)
    nrows, ncols = a.shape
    mul, sub, inv = field.mul_t, field.sub_t, field.inv_t
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r] = mul[inv[a[r, c]], a[r]]
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = sub[a[hit], mul[col[hit][:, None], a[r][None, :]]]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rref(m: MatrixFq) -> tuple[MatrixFq, int, list[int]]:
    """Gauss-Jordan elimination; returns the nonzero RREF rows, rank and pivot columns."""
    red, piv = _rref_array(m.entries, m.field)
    return MatrixFq(red, m.field), len(piv), piv


def rank(m: MatrixFq) -> int:
    return len(_rref_array(m.entries, m.field)[1])


def _null_space(a: np.ndarray, field: FieldSpec) -> np.ndarray:
    """Basis (as rows) of ``{v : a v = 0}``, not yet canonical."""
    ncols = a.shape[1]
    red, piv = _rref_array(a, field)
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, pc in enumerate(piv):
            basis[i, pc] = field.neg_t[red[r, f]]
    return basis


@dataclass(frozen=True, eq=False)
class Subspace:
    """Row space of ``basis``, stored in canonical RREF with no zero rows."""

    basis: MatrixFq
    ambient_dim: int

    @property
    def field(self) -> FieldSpec:
        return self.basis.field

    @property
    def rank(self) -> int:
        return self.basis.rows

    dim = rank

    def key(self) -> bytes:
        """Byte string identifying the subspace (canonical form)."""
        return self.basis.entries.astype(np.uint8 if self.field.q <= 256 else np.int64).tobytes() + self.rank.to_bytes(4, "little")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.key()))

    def contains(self, v: Sequence[int] | np.ndarray) -> bool:
        v = np.asarray(v, dtype=np.int64).reshape(1, -1)
        return rank_of(np.vstack([self.basis.entries, v]), self.field) == self.rank

    def contains_subspace(self, other: Subspace) -> bool:
        _check_compatible(self, other)
        return subspace_sum(self, other).rank == self.rank

    def vectors(self) -> list[tuple[int, ...]]:
        """Every vector of the subspace (exponential; tests only)."""
        q = self.field.q
        out = []
        for idx in range(q**self.rank):
            coeffs = np.array([(idx // q**i) % q for i in range(self.rank)], dtype=np.int64)
            vec = matmul(coeffs[None, :], self.basis.entries, self.field)[0]
            out.append(tuple(int(x) for x in vec))
        return out

    def to_json(self) -> dict:
        return {"ambient_dim": self.ambient_dim, "field": self.field.to_json(), "rows": self.basis.tolist()}

    @classmethod
    def from_json(cls, obj: dict, field: FieldSpec | None = None) -> Subspace:
        if field is None:
            field = FieldSpec.from_json(obj["field"])
        return subspace_from_rows(MatrixFq.from_rows(obj["rows"], field, obj["ambient_dim"]))


def rank_of(a: np.ndarray, field: FieldSpec) -> int:
    return len(_rref_array(a, field)[1])


def _from_array(a: np.ndarray, field: FieldSpec, ambient_dim: int) -> Subspace:
    red, _ = _rref_array(a.reshape(-1, ambient_dim), field)
    return Subspace(MatrixFq(red, field), ambient_dim)


def subspace_from_rows(m: MatrixFq) -> Subspace:
    return _from_array(m.entries, m.field, m.cols)


def zero_subspace(ambient_dim: int, field: FieldSpec) -> Subspace:
    return Subspace(MatrixFq.zeros(0, ambient_dim, field), ambient_dim)


def full_space(ambient_dim: int, field: FieldSpec) -> Subspace:
    return Subspace(MatrixFq.identity(ambient_dim, field), ambient_dim)


def _check_compatible(u: Subspace, v: Subspace) -> None:
    _same_field(u.field, v.field)
    if u.ambient_dim != v.ambient_dim:
        raise ValueError(f"ambient dimension mismatch: {u.ambient_dim} vs {v.ambient_dim}")


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    _check_compatible(u, v)
    return _from_array(np.vstack([u.basis.entries, v.basis.entries]), u.field, u.ambient_dim)


def subspace_intersect(u: Subspace, v: Subspace) -> Subspace:
    """Exact intersection by the stacked-kernel method.

    Solves ``a . basis(U) = b . basis(V)``: the left kernel of the stacked
    bases gives pairs ``(a, -b)`` and ``a . basis(U)`` spans ``U & V``.
    """
    _check_compatible(u, v)
    f = u.field
    if u.rank == 0 or v.rank == 0:
        return zero_subspace(u.ambient_dim, f)
    stacked = np.vstack([u.basis.entries, v.basis.entries])
    coeffs = _null_space(stacked.T, f)
    if coeffs.shape[0] == 0:
        return zero_subspace(u.ambient_dim, f)
    vecs = matmul(coeffs[:, : u.rank], u.basis.entries, f)
    return _from_array(vecs, f, u.ambient_dim)


def kk_dist(u: Subspace, v: Subspace) -> int:
    """Subspace distance ``dim U + dim V - 2 dim(U & V)``."""
    return u.rank + v.rank - 2 * subspace_intersect(u, v).rank


def kk_dist_via_sum(u: Subspace, v: Subspace) -> int:
    """Same distance as ``2 dim(U + V) - dim U - dim V``; needs one elimination only."""
    _check_compatible(u, v)
    s = rank_of(np.vstack([u.basis.entries, v.basis.entries]), u.field)
    return 2 * s - u.rank - v.rank


def kernel(m: MatrixFq) -> Subspace:
    """Right null space ``{v : M v = 0}`` as a canonical subspace of F_q^cols."""
    basis = _null_space(m.entries, m.field)
    return _from_array(basis, m.field, m.cols)


def random_matrix(rows: int, cols: int, field: FieldSpec, rng: np.random.Generator) -> np.ndarray:
    return rng.integers(0, field.q, size=(rows, cols), dtype=np.int64)


def random_invertible(n: int, field: FieldSpec, rng: np.random.Generator) -> np.ndarray:
    """Uniform invertible ``n x n`` code array by rejection sampling."""
    while True:
        a = random_matrix(n, n, field, rng)
        if rank_of(a, field) == n:
            return a
