"""Curve models: the projective line and the Hermitian curve.

The Hermitian curve is used in its norm-trace form ``y^q + y = x^{q+1}`` over
F_{q^2}.  It has a single point at infinity, where ``x`` and ``y`` have pole
orders ``q`` and ``q + 1``, and ``x - x(P)`` is a local parameter at every
affine point because the partial derivative in ``y`` is the constant 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .gf import FieldElement, FieldSpec, field_of_size, prime_power

FAMILIES = ("p1", "hermitian")
HERMITIAN_SUPPORTED = (2, 3)
DEFAULT_EXPANSION_CAP = 64


class CurveError(ValueError):
    """Unsupported family or size, or an internally inconsistent model."""


# Truncated power series in t: code arrays of length K + 1.

def series_mul(a: np.ndarray, b: np.ndarray, field: FieldSpec) -> np.ndarray:
    n = len(a)
    out = np.zeros(n, dtype=np.int64)
    for i in np.flatnonzero(a):
        out[i:] = field.add_t[out[i:], field.mul_t[a[i], b[: n - i]]]
    return out


def series_pow(a: np.ndarray, e: int, field: FieldSpec) -> np.ndarray:
    result = np.zeros(len(a), dtype=np.int64)
    result[0] = 1
    base = a.copy()
    while e:
        if e & 1:
            result = series_mul(result, base, field)
        base = series_mul(base, base, field)
        e >>= 1
    return result


def series_x(point_x: FieldElement, order: int) -> np.ndarray:
    """The series ``x(P) + t`` truncated at ``t^{order+1}``."""
    s = np.zeros(order + 1, dtype=np.int64)
    s[0] = point_x.value
    if order >= 1:
        s[1] = 1
    return s


@dataclass(frozen=True)
class RationalPoint:
    kind: str  # "affine" | "infinity"
    x: FieldElement | None
    y: FieldElement | None
    index: int

    @property
    def is_infinity(self) -> bool:
        return self.kind == "infinity"

    def to_json(self) -> list:
        return [self.kind, None if self.x is None else self.x.value, None if self.y is None else self.y.value]

    def __str__(self) -> str:
        if self.is_infinity:
            return "P_inf"
        if self.y is None:
            return f"({self.x.value})"
        return f"({self.x.value},{self.y.value})"


@dataclass(frozen=True)
class LocalExpansion:
    point: RationalPoint
    order: int
    y_coeffs: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class CurveModel:
    family: str
    base_q: int
    field: FieldSpec
    genus: int
    x_pole: int
    y_pole: int | None

    @property
    def denominator_pole_order(self) -> int:
        """Pole order at infinity of ``x^Q - x`` (Q the point-field size)."""
        return self.field.q * self.x_pole

    @cached_property
    def points(self) -> tuple[RationalPoint, ...]:
        return tuple(_enumerate_points(self))

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def affine_points(self) -> tuple[RationalPoint, ...]:
        return self.points[:-1]

    @property
    def infinity(self) -> RationalPoint:
        return self.points[-1]

    def on_curve(self, x: FieldElement, y: FieldElement | None) -> bool:
        if self.family == "p1":
            return y is None
        q = self.base_q
        return y**q + y == x ** (q + 1)

    def equation_residual(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        """Series of ``y^q + y - x^{q+1}`` for Hermitian; zero for the line."""
        f = self.field
        if self.family == "p1":
            return np.zeros(len(xs), dtype=np.int64)
        q = self.base_q
        lhs = f.add_t[series_pow(ys, q, f), ys]
        return f.sub_t[lhs, series_pow(xs, q + 1, f)]

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "q": self.base_q,
            "field": self.field.to_json(),
            "genus": self.genus,
            "n": self.n,
            "points": [pt.to_json() for pt in self.points],
        }

    def __str__(self) -> str:
        return f"{self.family}(q={self.base_q}) over {self.field}"


def curve_make(family: str, q: int) -> CurveModel:
    """Build the projective line over F_q or the Hermitian curve over F_{q^2}.

    Raises:
        CurveError: unknown family, ``q`` not a prime power, or a Hermitian
            size outside ``HERMITIAN_SUPPORTED``.
    """
    try:
        p, m = prime_power(q)
    except ValueError as exc:
        raise CurveError(str(exc)) from exc
    if family == "p1":
        try:
            field = field_of_size(q)
        except ValueError as exc:
            raise CurveError(str(exc)) from exc
        curve = CurveModel("p1", q, field, 0, 1, None)
    elif family == "hermitian":
        if q not in HERMITIAN_SUPPORTED:
            raise CurveError(
                f"hermitian curve supported for q in {list(HERMITIAN_SUPPORTED)}, got {q}"
            )
        # one degree-2m extension of F_p, not a tower
        field = field_of_size(p ** (2 * m))
        curve = CurveModel("hermitian", q, field, q * (q - 1) // 2, q, q + 1)
    else:
        raise CurveError(f"unknown curve family {family!r}; expected one of {list(FAMILIES)}")
    _check_model(curve)
    return curve


def _enumerate_points(curve: CurveModel) -> list[RationalPoint]:
    f = curve.field
    pts: list[RationalPoint] = []
    if curve.family == "p1":
        for x in f.elements():
            pts.append(RationalPoint("affine", x, None, len(pts)))
    else:
        els = f.elements()
        for x in els:
            for y in els:
                if curve.on_curve(x, y):
                    pts.append(RationalPoint("affine", x, y, len(pts)))
    pts.append(RationalPoint("infinity", None, None, len(pts)))
    return pts


def expected_point_count(curve: CurveModel) -> int:
    q = curve.base_q
    return 1 + q if curve.family == "p1" else 1 + q**3


def _check_model(curve: CurveModel) -> None:
    if curve.n != expected_point_count(curve):
        raise CurveError(f"{curve}: {curve.n} points, expected {expected_point_count(curve)}")
    for pt in curve.affine_points:
        if not curve.on_curve(pt.x, pt.y):
            raise CurveError(f"{pt} is not on {curve}")


def hasse_weil_check(curve: CurveModel) -> dict:
    """Check ``|n - (Q + 1)| <= 2 g sqrt(Q)`` with Q the point-field size.

    Bounds are rounded inwards to integers.  ``maximal`` is true when ``n``
    reaches the upper bound.
    """
    Q, g, n = curve.field.q, curve.genus, curve.n
    slack = math.isqrt(4 * g * g * Q)  # floor(2 g sqrt(Q))
    lower, upper = 1 + Q - slack, 1 + Q + slack
    return {
        "n": n,
        "field_size": Q,
        "genus": g,
        "lower": lower,
        "upper": upper,
        "ok": lower <= n <= upper,
        "maximal": n == upper,
        "note": "upper bound uses 1+Q+2g*sqrt(Q); the source text prints 1+g+2g*sqrt(Q)",
    }


def local_expand(curve: CurveModel, point: RationalPoint, order: int, cap: int = DEFAULT_EXPANSION_CAP) -> LocalExpansion:
    """Expand ``y`` as a power series in ``t = x - x(P)`` up to ``t^order``.

    Newton iteration ``y <- x^{q+1} - y^q`` (the y-derivative of the equation
    is 1); each pass fixes at least one more coefficient.
    """
    if point.is_infinity:
        raise CurveError("local expansion needs an affine point")
    if order < 0 or order > cap:
        raise CurveError(f"expansion order {order} outside [0, {cap}]")
    if curve.family == "p1":
        return LocalExpansion(point, order, ())
    f, q = curve.field, curve.base_q
    rhs = series_pow(series_x(point.x, order), q + 1, f)
    y = np.zeros(order + 1, dtype=np.int64)
    y[0] = point.y.value
    for _ in range(order + 1):
        nxt = f.sub_t[rhs, series_pow(y, q, f)]
        if np.array_equal(nxt, y):
            break
        y = nxt
    return LocalExpansion(point, order, tuple(int(c) for c in y))


def denominator_valuations(curve: CurveModel) -> dict:
    """Verify the divisor of ``t_den = x^Q - x``.

    It must vanish simply at every affine rational point and have its only
    pole at infinity, of order equal to the number of affine points.
    """
    f, Q = curve.field, curve.field.q
    affine_orders = []
    for pt in curve.affine_points:
        xs = series_x(pt.x, 2)
        t_den = f.sub_t[series_pow(xs, Q, f), xs]
        nz = np.flatnonzero(t_den)
        affine_orders.append(int(nz[0]) if nz.size else None)
    pole = Q * curve.x_pole
    report = {
        "affine_orders": affine_orders,
        "infinity_order": -pole,
        "affine_count": len(affine_orders),
        "balanced": len(affine_orders) == pole,
    }
    if any(o != 1 for o in affine_orders) or not report["balanced"]:
        raise CurveError(f"inconsistent denominator divisor on {curve}: {report}")
    return report
