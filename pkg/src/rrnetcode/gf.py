"""Finite fields F_p and F_{p^m} in a polynomial basis.

Elements are identified with integers in ``[0, q)`` through the base-p digits
of their coordinates: the element ``c_0 + c_1 x + ... + c_{m-1} x^{m-1}`` is
encoded as ``c_0 + c_1 p + ... + c_{m-1} p^{m-1}``.  All arithmetic is done
through precomputed ``q x q`` tables, which also back the vectorised matrix
code in :mod:`rrnetcode.fqlinalg`.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

DEFAULT_MAX_Q = int(os.environ.get("RRNETCODE_MAX_Q", "81"))


class FieldError(ValueError):
    """Invalid field parameters or mixed-field arithmetic."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, m)`` with ``q == p**m``; raise FieldError otherwise."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    m, r = 0, q
    while r % p == 0:
        r //= p
        m += 1
    if r != 1:
        raise FieldError(f"{q} is not a prime power")
    return p, m


# Polynomials over F_p are tuples of coefficients, lowest degree first.

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_rem(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    r = _trim([c % p for c in a])
    b = _trim([c % p for c in b])
    inv_lead = pow(b[-1], -1, p)
    while len(r) >= len(b):
        f = r[-1] * inv_lead % p
        shift = len(r) - len(b)
        for i, c in enumerate(b):
            r[shift + i] = (r[shift + i] - f * c) % p
        _trim(r)
    return r


def _monic_polys(p: int, d: int) -> Iterator[tuple[int, ...]]:
    for r in range(p**d):
        digits = []
        for _ in range(d):
            digits.append(r % p)
            r //= p
        yield tuple(digits) + (1,)


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree ``1..deg/2``."""
    poly = _trim([c % p for c in poly])
    m = len(poly) - 1
    if m < 1:
        return False
    for d in range(1, m // 2 + 1):
        for g in _monic_polys(p, d):
            if not _poly_rem(poly, g, p):
                return False
    return True


def least_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree ``m`` over F_p.

    Candidates are ordered by their coefficients read from ``x^{m-1}`` down
    to ``x^0``.
    """
    if m == 1:
        return (0, 1)
    for cand in _monic_polys(p, m):
        if is_irreducible(cand, p):
            return cand
    raise FieldError(f"no irreducible polynomial of degree {m} over F_{p}")  # pragma: no cover


@dataclass(frozen=True)
class FieldSpec:
    """The field F_q with ``q = p**m``, realised as F_p[x] / (modulus).

    ``modulus`` holds ``m + 1`` coefficients, lowest degree first, and is monic.
    Equality and hashing only look at ``(p, m, modulus)``.
    """

    p: int
    m: int
    modulus: tuple[int, ...]
    add_t: np.ndarray = field(init=False, repr=False, compare=False)
    sub_t: np.ndarray = field(init=False, repr=False, compare=False)
    mul_t: np.ndarray = field(init=False, repr=False, compare=False)
    neg_t: np.ndarray = field(init=False, repr=False, compare=False)
    inv_t: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        p, m, q = self.p, self.m, self.p**self.m
        digits = np.array([[(a // p**i) % p for i in range(m)] for a in range(q)], dtype=np.int64)
        weights = p ** np.arange(m, dtype=np.int64)

        add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        sub = ((digits[:, None, :] - digits[None, :, :]) % p) @ weights

        mul = np.zeros((q, q), dtype=np.int64)
        reduce_rows = self._power_reductions()
        for a in range(q):
            for b in range(a, q):
                prod = np.convolve(digits[a], digits[b]) % p
                v = prod[:m].copy()
                for i in range(m, 2 * m - 1):
                    if prod[i]:
                        v = (v + prod[i] * reduce_rows[i - m]) % p
                mul[a, b] = mul[b, a] = int(v @ weights)

        neg = sub[0].copy()
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.nonzero(mul[a] == 1)[0][0])

        for name, t in (("add_t", add), ("sub_t", sub), ("mul_t", mul), ("neg_t", neg), ("inv_t", inv)):
            t.setflags(write=False)
            object.__setattr__(self, name, t)

    def _power_reductions(self) -> list[np.ndarray]:
        """Coordinates of x^m, ..., x^{2m-2} reduced mod the modulus."""
        p, m = self.p, self.m
        out = []
        cur = np.array([(-c) % p for c in self.modulus[:m]], dtype=np.int64)  # x^m
        for _ in range(max(m - 1, 0)):
            out.append(cur)
            lead = cur[-1]
            nxt = np.concatenate(([0], cur[:-1]))
            cur = (nxt + lead * out[0]) % p
        return out

    @property
    def q(self) -> int:
        return self.p**self.m

    @property
    def zero(self) -> FieldElement:
        return FieldElement(0, self)

    @property
    def one(self) -> FieldElement:
        return FieldElement(1, self)

    def __call__(self, value: int | Sequence[int]) -> FieldElement:
        """Build an element from its integer code or its coordinate vector."""
        if isinstance(value, (int, np.integer)):
            return decode(self, int(value))
        coeffs = list(value)
        if len(coeffs) != self.m or any(not 0 <= c < self.p for c in coeffs):
            raise FieldError(f"bad coordinates {coeffs!r} for F_{self.q}")
        return FieldElement(sum(c * self.p**i for i, c in enumerate(coeffs)), self)

    def elements(self) -> list[FieldElement]:
        return field_enumerate(self)

    def generator(self) -> FieldElement:
        """Smallest (by code) primitive element."""
        for a in range(1, self.q):
            seen, x = set(), 1
            for _ in range(self.q - 1):
                x = int(self.mul_t[x, a])
                seen.add(x)
            if len(seen) == self.q - 1:
                return FieldElement(a, self)
        raise FieldError("no primitive element")  # pragma: no cover

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, obj: dict) -> FieldSpec:
        return field_make(obj["p"], obj["m"], obj["modulus"])

    def __str__(self) -> str:
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"


@dataclass(frozen=True)
class FieldElement:
    value: int
    field: FieldSpec

    @property
    def coeffs(self) -> tuple[int, ...]:
        p = self.field.p
        return tuple((self.value // p**i) % p for i in range(self.field.m))

    def _coerce(self, other: object) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError(f"cannot mix {self.field} and {other.field}")
            return other.value
        if isinstance(other, int):
            # integers act through the prime subfield
            return other % self.field.p
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: object) -> FieldElement:
        b = self._coerce(other)
        return FieldElement(int(self.field.add_t[self.value, b]), self.field)

    __radd__ = __add__

    def __sub__(self, other: object) -> FieldElement:
        b = self._coerce(other)
        return FieldElement(int(self.field.sub_t[self.value, b]), self.field)

    def __rsub__(self, other: object) -> FieldElement:
        b = self._coerce(other)
        return FieldElement(int(self.field.sub_t[b, self.value]), self.field)

    def __mul__(self, other: object) -> FieldElement:
        b = self._coerce(other)
        return FieldElement(int(self.field.mul_t[self.value, b]), self.field)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> FieldElement:
        b = self._coerce(other)
        if b == 0:
            raise ZeroDivisionError("division by zero in finite field")
        return FieldElement(int(self.field.mul_t[self.value, self.field.inv_t[b]]), self.field)

    def __rtruediv__(self, other: object) -> FieldElement:
        return FieldElement(self._coerce(other), self.field) / self

    def __neg__(self) -> FieldElement:
        return FieldElement(int(self.field.neg_t[self.value]), self.field)

    def inverse(self) -> FieldElement:
        return self.field.one / self

    def __pow__(self, e: int) -> FieldElement:
        if e < 0:
            return self.inverse() ** (-e)
        result, base = 1, self.value
        mul = self.field.mul_t
        while e:
            if e & 1:
                result = int(mul[result, base])
            base = int(mul[base, base])
            e >>= 1
        return FieldElement(result, self.field)

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.field}({self.value})"


def field_make(p: int, m: int = 1, modulus: Sequence[int] | None = None, *, max_q: int | None = None) -> FieldSpec:
    """Validate parameters and build F_{p^m}.

    Args:
        p: prime characteristic.
        m: extension degree.
        modulus: monic degree-m polynomial, lowest coefficient first. Defaults
            to the lexicographically least monic irreducible.
        max_q: soft size limit; ``None`` uses ``DEFAULT_MAX_Q``.

    Raises:
        FieldError: non-prime ``p``, bad degree, reducible modulus or ``q`` above the limit.
    """
    if not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if m < 1:
        raise FieldError("extension degree must be >= 1")
    limit = DEFAULT_MAX_Q if max_q is None else max_q
    if p**m > limit:
        raise FieldError(f"field size {p**m} exceeds desk-scale limit {limit}")
    if modulus is None:
        modulus = least_irreducible(p, m)
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {m}")
        if m > 1 and not is_irreducible(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over F_{p}")
    return FieldSpec(p, m, tuple(modulus))


def field_of_size(q: int, **kw) -> FieldSpec:
    p, m = prime_power(q)
    return field_make(p, m, **kw)


def field_enumerate(spec: FieldSpec) -> list[FieldElement]:
    return [FieldElement(a, spec) for a in range(spec.q)]


def encode(a: FieldElement) -> int:
    return a.value


def decode(spec: FieldSpec, n: int) -> FieldElement:
    if not 0 <= n < spec.q:
        raise FieldError(f"code {n} out of range for F_{spec.q}")
    return FieldElement(n, spec)
