"""The network codes C_{k,s}: construction, measured parameters, theory and verdicts.

Exact quantities are kept as ``int`` or :class:`fractions.Fraction`.  The only
irrational parameter, ``log_q |C|``, is stored as the pair ``(q, |C|)`` and
rendered as a decimal at output time.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
import os
from collections import Counter, defaultdict
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Iterator

import numpy as np

from .curve import CurveModel, curve_make
from .fqlinalg import Subspace, kk_dist_via_sum
from .gf import FieldSpec
from .rrspace import AmbientSpace, SubsetS, ambient_build, codeword_json, subspace_for

SCHEMA_VERSION = 1
DEFAULT_CAP = int(os.environ.get("RRNETCODE_CAP", "100000"))
FORMULA_ONLY = "parameters only, spaces not constructed"


class CapExceeded(RuntimeError):
    """Exhaustive enumeration would exceed the configured subset cap."""


class DegenerateCode(ValueError):
    """Fewer than two distinct codewords: no minimum distance."""


def fmt_fraction(x: Fraction | None) -> str:
    if x is None:
        return ""
    return f"{x.numerator}/{x.denominator}"


def fmt_decimal(x: Fraction | float | None, digits: int = 6) -> str:
    if x is None:
        return ""
    return f"{float(x):.{digits}f}"


# ---------------------------------------------------------------------------
# theory

@dataclass(frozen=True)
class ParamReport:
    """Parameters predicted from ``(g, n, q, k, s)`` alone."""

    g: int
    n: int
    field_size: int
    k: int
    s: int
    N: int
    l: int
    l_stated: int
    size: int
    D: int | None
    D_stated: int
    D_proof: int | None
    hyp_kn: bool
    hyp_ks: bool
    hyp_ks1: bool | None

    @property
    def size_log_q(self) -> float:
        return math.log(self.size, self.field_size) if self.size > 0 else float("-inf")

    @property
    def lam(self) -> Fraction:
        return Fraction(self.l, self.N)

    @property
    def rate(self) -> float:
        if self.N * self.l <= 0:
            return float("nan")
        return self.size_log_q / (self.N * self.l)

    @property
    def rate_exact(self) -> str:
        return f"log_{self.field_size}({self.size})/{self.N * self.l}"

    @property
    def delta(self) -> Fraction | None:
        return None if self.D is None or self.l <= 0 else Fraction(self.D, 2 * self.l)

    @property
    def delta_bound(self) -> Fraction | None:
        """``(2g - 1) / ((s + 1) g - 1)``, defined for ``g >= 1`` and ``s > 1``."""
        if self.g < 1 or self.s < 2:
            return None
        return Fraction(2 * self.g - 1, (self.s + 1) * self.g - 1)

    def to_json(self) -> dict:
        out = asdict(self)
        out.update(
            size_log_q=self.size_log_q,
            lambda_=fmt_fraction(self.lam),
            rate=self.rate_exact,
            rate_decimal=None if math.isnan(self.rate) else self.rate,
            delta=fmt_fraction(self.delta),
            delta_bound=fmt_fraction(self.delta_bound),
        )
        return out


def theory_params(g: int, n: int, field_size: int, k: int, s: int) -> ParamReport:
    """Evaluate the dimension, size and distance formulas.

    ``D`` is the computed prediction: ``2k`` for ``s > 1`` and
    ``2 max(0, k - g)`` for ``s = 1`` (distinct ``L(kP)`` meet in the
    constants).  ``D_stated`` is the closed form as printed (``2(k+g-1)`` for
    ``s = 1``) and ``D_proof`` the value its derivation gives (``2(k+1-g)``).
    """
    if k < 1 or s < 1:
        raise ValueError("k and s must be positive")
    if s > n:
        raise ValueError(f"s={s} exceeds the number of points n={n}")
    N = k * n + 1 - g
    l = k * s + 1 - g
    if s == 1:
        D: int | None = 2 * max(0, k - g) if k >= 2 * g - 1 else None
        D_stated = 2 * (k + g - 1)
        D_proof = 2 * (k + 1 - g)
        hyp_ks1 = None
    else:
        D = 2 * k
        D_stated = 2 * k
        D_proof = 2 * k
        hyp_ks1 = k * (s - 1) >= 2 * g - 1
    return ParamReport(
        g=g, n=n, field_size=field_size, k=k, s=s, N=N, l=l, l_stated=k * s + g - 1,
        size=math.comb(n, s), D=D, D_stated=D_stated, D_proof=D_proof,
        hyp_kn=k * n >= 2 * g - 1, hyp_ks=k * s >= 2 * g - 1, hyp_ks1=hyp_ks1,
    )


@dataclass(frozen=True)
class DLFamilyParams:
    family: str
    field_size: int
    g: int
    n: int

    @property
    def constructed(self) -> bool:
        return self.family in ("p1", "hermitian")


def dl_family(family: str, *, q: int | None = None, m: int | None = None) -> DLFamilyParams:
    """Genus and point count of the Deligne-Lusztig curves.

    ``p1``/``hermitian`` take ``q`` (Hermitian points live over F_{q^2});
    ``suzuki``/``ree`` take ``m`` with field size ``Q = 2^{2m+1}`` or
    ``3^{2m+1}``.  With ``q0 = 2^m`` (resp. ``3^m``) the genera are
    ``q0 (Q - 1)`` and ``3 q0 (Q^2 - 1)/2 + Q (Q - 1)/2``.
    """
    if family == "p1":
        _need(q, "q", family)
        return DLFamilyParams("p1", q, 0, q + 1)
    if family == "hermitian":
        _need(q, "q", family)
        return DLFamilyParams("hermitian", q * q, q * (q - 1) // 2, q**3 + 1)
    if family == "suzuki":
        _need(m, "m", family)
        if m < 0:
            raise ValueError("suzuki needs m >= 0")
        Q, q0 = 2 ** (2 * m + 1), 2**m
        return DLFamilyParams("suzuki", Q, q0 * (Q - 1), Q * Q + 1)
    if family == "ree":
        _need(m, "m", family)
        if m < 0:
            raise ValueError("ree needs m >= 0")
        Q, q0 = 3 ** (2 * m + 1), 3**m
        return DLFamilyParams("ree", Q, 3 * q0 * (Q * Q - 1) // 2 + Q * (Q - 1) // 2, Q**3 + 1)
    raise ValueError(f"unknown family {family!r}")


def _need(v: int | None, name: str, family: str) -> None:
    if v is None:
        raise ValueError(f"{family} needs --{name}")


def dl_param_table(family: str, k: int, s: int, *, q: int | None = None, m: int | None = None) -> dict:
    fam = dl_family(family, q=q, m=m)
    rep = theory_params(fam.g, fam.n, fam.field_size, k, s)
    row = {"family": fam.family, "field_size": fam.field_size, "g": fam.g, "n": fam.n}
    row.update(param_row(rep))
    row["marker"] = "" if fam.constructed else FORMULA_ONLY
    return row


def param_row(rep: ParamReport) -> dict:
    row = {
        "k": rep.k,
        "s": rep.s,
        "N": rep.N,
        "l": rep.l,
        "size": rep.size,
        "log_q_size": fmt_decimal(rep.size_log_q),
        "D": "" if rep.D is None else rep.D,
        "D_stated": rep.D_stated,
        "lambda": fmt_fraction(rep.lam),
        "lambda_decimal": fmt_decimal(rep.lam),
        "rate": rep.rate_exact,
        "rate_decimal": fmt_decimal(rep.rate, 8),
        "delta": fmt_fraction(rep.delta),
        "delta_decimal": fmt_decimal(rep.delta),
        "delta_bound": fmt_fraction(rep.delta_bound),
        "delta_bound_decimal": fmt_decimal(rep.delta_bound),
        "hyp_ks": rep.hyp_ks,
        "hyp_k_s_minus_1": "" if rep.hyp_ks1 is None else rep.hyp_ks1,
        "note": "",
    }
    if not rep.hyp_ks:
        # only the lower bound l >= ks+1-g is known
        for key in ("l", "D", "lambda", "lambda_decimal", "rate", "rate_decimal", "delta", "delta_decimal"):
            row[key] = ""
        row["note"] = "ks < 2g-1: dimension formula not exact"
    elif rep.hyp_ks1 is False:
        for key in ("D", "delta", "delta_decimal"):
            row[key] = ""
        row["note"] = "k(s-1) < 2g-1: distance formula not established"
    return row


# ---------------------------------------------------------------------------
# construction

@dataclass(frozen=True)
class CodeSpec:
    family: str
    q: int
    k: int
    s: int
    mode: str = "exhaustive"  # "exhaustive" | "sampled"
    sample: int = 0
    seed: int = 0

    def to_json(self) -> dict:
        return asdict(self)


@dataclass(eq=False)
class Code:
    spec: CodeSpec
    ambient: AmbientSpace
    codewords: list[tuple[SubsetS, Subspace]]
    theory: ParamReport
    measured: dict = field(default_factory=dict)

    @property
    def curve(self) -> CurveModel:
        return self.ambient.curve

    @property
    def field(self) -> FieldSpec:
        return self.ambient.field

    def distinct(self) -> list[tuple[SubsetS, Subspace]]:
        """First codeword (in subset order) of every distinct subspace."""
        seen: dict[bytes, tuple[SubsetS, Subspace]] = {}
        for sub, v in self.codewords:
            seen.setdefault(v.key(), (sub, v))
        return list(seen.values())

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "spec": self.spec.to_json(),
            "field": self.field.to_json(),
            "ambient": self.ambient.to_json(),
            "codewords": [codeword_json(sub, v) for sub, v in self.codewords],
            "measured": self.measured,
            "theory": self.theory.to_json(),
        }


def theory_for(curve: CurveModel, k: int, s: int) -> ParamReport:
    return theory_params(curve.genus, curve.n, curve.field.q, k, s)


def unrank_combination(rank: int, n: int, s: int) -> tuple[int, ...]:
    """The ``rank``-th ``s``-subset of ``range(n)`` in lexicographic order."""
    out = []
    x = 0
    for i in range(s):
        while True:
            c = math.comb(n - x - 1, s - i - 1)
            if rank < c:
                break
            rank -= c
            x += 1
        out.append(x)
        x += 1
    return tuple(out)


def sample_ranks(total: int, count: int, seed: int) -> list[int]:
    """``count`` distinct ranks from ``range(total)`` by seeded partial Fisher-Yates."""
    count = min(count, total)
    rng = np.random.default_rng(seed)
    swaps: dict[int, int] = {}
    out = []
    for i in range(count):
        j = int(rng.integers(i, total))
        out.append(swaps.get(j, j))
        swaps[j] = swaps.get(i, i)
    return out


def subsets_for(spec: CodeSpec, n: int, cap: int = DEFAULT_CAP) -> Iterator[tuple[int, ...]]:
    total = math.comb(n, spec.s)
    if spec.mode == "exhaustive":
        if total > cap:
            raise CapExceeded(f"C({n},{spec.s}) = {total} subsets exceed cap {cap}; use sampled mode")
        return itertools.combinations(range(n), spec.s)
    if spec.mode == "sampled":
        if spec.sample < 1:
            raise ValueError("sampled mode needs a positive sample count")
        if spec.sample > cap:
            raise CapExceeded(f"sample of {spec.sample} exceeds cap {cap}")
        ranks = sorted(sample_ranks(total, spec.sample, spec.seed))
        return (unrank_combination(r, n, spec.s) for r in ranks)
    raise ValueError(f"unknown enumeration mode {spec.mode!r}")


def code_build(spec: CodeSpec, cap: int = DEFAULT_CAP) -> Code:
    curve = curve_make(spec.family, spec.q)
    if not 1 <= spec.s <= curve.n:
        raise ValueError(f"s={spec.s} must lie in [1, {curve.n}]")
    if spec.k < 1:
        raise ValueError("k must be positive")
    subsets = subsets_for(spec, curve.n, cap)
    ambient = ambient_build(curve, spec.k)
    words = []
    for idx in subsets:
        sub = SubsetS(idx)
        words.append((sub, subspace_for(ambient, sub)))
    code = Code(spec, ambient, words, theory_for(curve, spec.k, spec.s))
    code.measured = measure_basic(code)
    return code


def measure_basic(code: Code) -> dict:
    dims = Counter(v.rank for _, v in code.codewords)
    distinct = len(code.distinct())
    return {
        "N": code.ambient.N,
        "codewords": len(code.codewords),
        "size": distinct,
        "duplicates": len(code.codewords) - distinct,
        "l_values": sorted(dims),
    }


def code_from_json(obj: dict) -> Code:
    from .fqlinalg import MatrixFq, Subspace as _Sub

    if obj.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported code file schema {obj.get('schema_version')!r}")
    spec = CodeSpec(**obj["spec"])
    curve = curve_make(spec.family, spec.q)
    if curve.field.to_json() != obj["field"]:
        raise ValueError("code file field does not match the curve's field")
    ambient = ambient_build(curve, spec.k)
    N = ambient.N
    words = []
    for cw in obj["codewords"]:
        basis = MatrixFq.from_rows(cw["basis"], curve.field, N)
        words.append((SubsetS(tuple(cw["subset"])), _Sub(basis, N)))
    code = Code(spec, ambient, words, theory_for(curve, spec.k, spec.s), dict(obj.get("measured", {})))
    return code


# ---------------------------------------------------------------------------
# distances

@dataclass(frozen=True)
class MinDistance:
    D: int
    witness: tuple[tuple[int, ...], tuple[int, ...]]
    pairs: int
    histogram: dict[int, int]

    def to_json(self) -> dict:
        return {
            "D": self.D,
            "witness": [list(self.witness[0]), list(self.witness[1])],
            "pairs": self.pairs,
            "histogram": {str(d): c for d, c in sorted(self.histogram.items())},
        }


def _adjacent_pairs(words: list[tuple[SubsetS, Subspace]]) -> Iterator[tuple[int, int]]:
    buckets: dict[tuple[int, ...], list[int]] = defaultdict(list)
    for i, (sub, _) in enumerate(words):
        idx = sub.indices
        for j in range(len(idx)):
            buckets[idx[:j] + idx[j + 1:]].append(i)
    seen = set()
    for members in buckets.values():
        for a, b in itertools.combinations(members, 2):
            if (a, b) not in seen:
                seen.add((a, b))
                yield a, b


def min_distance(code: Code, mode: str = "exhaustive") -> MinDistance:
    """Minimum subspace distance over pairs of distinct codewords.

    ``adjacent`` only scans pairs of subsets sharing ``s - 1`` points, where
    the intersection is largest; ``exhaustive`` scans every pair.
    """
    words = code.distinct()
    if len(words) < 2:
        raise DegenerateCode(f"{len(words)} distinct codeword(s); minimum distance undefined")
    if mode == "exhaustive":
        pairs: Iterator[tuple[int, int]] = itertools.combinations(range(len(words)), 2)
    elif mode == "adjacent":
        if code.spec.s < 2:
            raise ValueError("adjacent mode needs s >= 2")
        pairs = _adjacent_pairs(words)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    hist: Counter[int] = Counter()
    best: tuple[int, int, int] | None = None
    for a, b in pairs:
        d = kk_dist_via_sum(words[a][1], words[b][1])
        hist[d] += 1
        if best is None or d < best[0]:
            best = (d, a, b)
    if best is None:
        raise DegenerateCode("no pair of distinct codewords to compare")
    d, a, b = best
    return MinDistance(d, (words[a][0].indices, words[b][0].indices), sum(hist.values()), dict(hist))


# ---------------------------------------------------------------------------
# verification

@dataclass(frozen=True)
class Verdict:
    quantity: str
    measured: str
    expected: str
    status: str  # pass | fail | deviation | skip
    note: str = ""


def _s(x: object) -> str:
    if isinstance(x, Fraction):
        return fmt_fraction(x)
    return "" if x is None else str(x)


def verify(code: Code, mindist: MinDistance | None = None) -> list[Verdict]:
    """Compare measured parameters with the formulas, one row per quantity."""
    if code.spec.mode != "exhaustive":
        raise ValueError("verify needs an exhaustively built code")
    th = code.theory
    ms = code.measured or measure_basic(code)
    rows: list[Verdict] = []

    rows.append(Verdict("N", _s(ms["N"]), _s(th.N), "pass" if ms["N"] == th.N else "fail"))

    l_vals = ms["l_values"]
    note = ""
    if th.l_stated != th.l:
        note = f"stated closed form ks+g-1 = {th.l_stated} disagrees; Riemann-Roch value ks+1-g checked"
    if l_vals == [th.l]:
        status = "pass"
    elif not th.hyp_ks:
        status, note = "deviation", (note + "; " if note else "") + "hypothesis ks >= 2g-1 not met"
    else:
        status = "fail"
    rows.append(Verdict("l", ",".join(map(str, l_vals)), _s(th.l), status, note))

    if ms["size"] == th.size:
        rows.append(Verdict("size", _s(ms["size"]), _s(th.size), "pass"))
    else:
        rows.append(Verdict(
            "size", _s(ms["size"]), _s(th.size), "deviation",
            f"distinct subsets give equal spaces ({ms['duplicates']} duplicates)",
        ))

    if mindist is None:
        try:
            mindist = min_distance(code, "exhaustive")
        except DegenerateCode:
            mindist = None
    if mindist is None:
        rows.append(Verdict("D", "", _s(th.D_stated), "deviation", "fewer than two distinct codewords"))
    elif th.s == 1:
        note = f"stated 2(k+g-1) = {th.D_stated}; derivation 2(k+1-g) = {th.D_proof}; computed prediction 2(k-g) = {_s(th.D)}"
        ok = mindist.D == th.D_stated
        rows.append(Verdict("D", _s(mindist.D), _s(th.D_stated), "pass" if ok else "deviation", note))
    else:
        if mindist.D == th.D:
            rows.append(Verdict("D", _s(mindist.D), _s(th.D), "pass"))
        elif not th.hyp_ks1:
            rows.append(Verdict("D", _s(mindist.D), _s(th.D), "deviation", "hypothesis k(s-1) >= 2g-1 not met"))
        else:
            rows.append(Verdict("D", _s(mindist.D), _s(th.D), "fail"))

    if l_vals and len(l_vals) == 1 and ms["N"]:
        lam = Fraction(l_vals[0], ms["N"])
        rows.append(Verdict("lambda", _s(lam), _s(th.lam), "pass" if lam == th.lam else "fail"))
    if mindist is not None and len(l_vals) == 1 and l_vals[0] > 0:
        delta = Fraction(mindist.D, 2 * l_vals[0])
        bound = th.delta_bound
        if bound is None:
            rows.append(Verdict("delta_bound", _s(delta), "", "skip", "bound defined for g >= 1, s > 1"))
        elif not th.hyp_ks1:
            rows.append(Verdict("delta_bound", _s(delta), _s(bound), "skip", "hypothesis k(s-1) >= 2g-1 not met"))
        else:
            ok = delta >= bound
            rows.append(Verdict(
                "delta_bound", _s(delta), ">= " + _s(bound), "pass" if ok else "deviation",
                "" if ok else f"measured delta below stated lower bound; it is an upper bound once k > (2g-1)/(s-1)",
            ))
    return rows


def has_deviations(rows: list[Verdict]) -> bool:
    return any(r.status in ("fail", "deviation") for r in rows)


def rows_to_csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def verdicts_to_csv(rows: list[Verdict]) -> str:
    return rows_to_csv([asdict(r) for r in rows])
