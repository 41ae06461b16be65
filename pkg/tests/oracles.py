"""Independent reference computations used to freeze expected values.

Nothing here imports the package's arithmetic tables or elimination code;
fields are rebuilt from plain polynomial arithmetic and ranks from minors.
"""

from __future__ import annotations

import itertools
from functools import reduce


class NaiveField:
    """F_p[x]/(modulus) with list-of-coefficients arithmetic and the same integer codes."""

    def __init__(self, p: int, modulus: tuple[int, ...]):
        self.p = p
        self.m = len(modulus) - 1
        self.modulus = list(modulus)
        self.q = p**self.m

    def digits(self, a: int) -> list[int]:
        return [(a // self.p**i) % self.p for i in range(self.m)]

    def code(self, d: list[int]) -> int:
        return sum((c % self.p) * self.p**i for i, c in enumerate(d))

    def add(self, a: int, b: int) -> int:
        return self.code([x + y for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a: int) -> int:
        return self.code([-x for x in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.m)
        for i, x in enumerate(da):
            for j, y in enumerate(db):
                prod[i + j] += x * y
        # long division by the monic modulus
        for deg in range(len(prod) - 1, self.m - 1, -1):
            c = prod[deg] % self.p
            if c:
                for i, mc in enumerate(self.modulus):
                    prod[deg - self.m + i] -= c * mc
        return self.code(prod[: self.m])

    def pow(self, a: int, e: int) -> int:
        r = 1
        for _ in range(e):
            r = self.mul(r, a)
        return r

    def inv(self, a: int) -> int:
        return next(b for b in range(1, self.q) if self.mul(a, b) == 1)


def poly_mul_mod_p(a: list[int], b: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def irreducible_by_products(poly: tuple[int, ...], p: int) -> bool:
    """A monic polynomial is reducible iff it is a product of two monic factors of lower degree."""
    m = len(poly) - 1
    target = [c % p for c in poly]
    for d in range(1, m):
        for lo in itertools.product(range(p), repeat=d):
            for hi in itertools.product(range(p), repeat=m - d):
                if poly_mul_mod_p(list(lo) + [1], list(hi) + [1], p) == target:
                    return False
    return True


def least_irreducible_by_enumeration(p: int, m: int) -> tuple[int, ...]:
    """Scan monic degree-m polynomials with coefficient tuples (c_{m-1}, ..., c_0) in lexicographic order."""
    for high_to_low in itertools.product(range(p), repeat=m):
        poly = tuple(reversed(high_to_low)) + (1,)
        if irreducible_by_products(poly, p):
            return poly
    raise AssertionError("none found")


def det(rows: list[list[int]], F: NaiveField) -> int:
    """Leibniz expansion."""
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = reduce(F.mul, (rows[i][perm[i]] for i in range(n)), 1)
        total = F.sub(total, term) if inversions % 2 else F.add(total, term)
    return total


def rank_by_minors(rows: list[list[int]], F: NaiveField) -> int:
    """Largest r with a nonzero r x r minor."""
    nr, nc = len(rows), len(rows[0]) if rows else 0
    for r in range(min(nr, nc), 0, -1):
        for ri in itertools.combinations(range(nr), r):
            for ci in itertools.combinations(range(nc), r):
                if det([[rows[i][j] for j in ci] for i in ri], F):
                    return r
    return 0


def span(rows: list[list[int]], F: NaiveField) -> set[tuple[int, ...]]:
    """All F-linear combinations of ``rows`` (exponential)."""
    n = len(rows[0]) if rows else 0
    out = set()
    for coeffs in itertools.product(range(F.q), repeat=len(rows)):
        v = [0] * n
        for c, r in zip(coeffs, rows):
            v = [F.add(x, F.mul(c, y)) for x, y in zip(v, r)]
        out.add(tuple(v))
    return out or {()}


def hermitian_points(q: int, F: NaiveField) -> list[tuple[int, int]]:
    return [(x, y) for x in range(F.q) for y in range(F.q) if F.add(F.pow(y, q), y) == F.pow(x, q + 1)]


def series_brute_force(q: int, F: NaiveField, x0: int, y0: int, order: int) -> list[int]:
    """Coefficients of y(t) on y^q + y = (x0 + t)^{q+1}, one at a time by exhaustive search."""

    def smul(a, b):
        out = [0] * (order + 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                if i + j <= order:
                    out[i + j] = F.add(out[i + j], F.mul(x, y))
        return out

    def spow(a, e):
        r = [1] + [0] * order
        for _ in range(e):
            r = smul(r, a)
        return r

    xs = [x0, 1] + [0] * (order - 1) if order >= 1 else [x0]
    rhs = spow(xs, q + 1)
    coeffs = [y0]
    for j in range(1, order + 1):
        hits = []
        for c in range(F.q):
            ys = coeffs + [c] + [0] * (order - j)
            lhs = [F.add(a, b) for a, b in zip(spow(ys, q), ys)]
            if all(lhs[i] == rhs[i] for i in range(j + 1)):
                hits.append(c)
        assert len(hits) == 1, hits
        coeffs.append(hits[0])
    return coeffs
