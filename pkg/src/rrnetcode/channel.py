"""Operator channel (dimension deletions and insertions) and minimum-distance decoding."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field

import numpy as np

from .fqlinalg import Subspace, _from_array, kk_dist_via_sum, matmul, random_invertible, random_matrix
from .netcode import Code

DEFAULT_SEED = 20160101


@dataclass(frozen=True)
class ChannelConfig:
    deletions: int = 0
    insertions: int = 0
    mixing: int = 1
    seed: int = DEFAULT_SEED

    def __post_init__(self) -> None:
        if self.deletions < 0 or self.insertions < 0 or self.mixing < 0:
            raise ValueError("deletions, insertions and mixing must be non-negative")


def trial_rng(seed: int, trial_index: int, stream: int) -> np.random.Generator:
    """Independent generator for one trial; ``stream`` separates uses within it."""
    ss = np.random.SeedSequence(seed, spawn_key=(trial_index, stream))
    return np.random.default_rng(ss)


def transmit(v: Subspace, cfg: ChannelConfig, trial_index: int = 0) -> tuple[Subspace, int]:
    """Send ``v`` through the channel; return the received space and the inserted rank."""
    if v.rank == 0:
        raise ValueError("cannot transmit the zero subspace")
    if cfg.deletions > v.rank:
        raise ValueError(f"{cfg.deletions} deletions exceed dimension {v.rank}")
    rng = trial_rng(cfg.seed, trial_index, 1)
    f = v.field
    rows = v.basis.entries
    for _ in range(cfg.mixing):
        rows = matmul(random_invertible(v.rank, f, rng), rows, f)
    keep = np.sort(rng.permutation(v.rank)[: v.rank - cfg.deletions])
    rows = rows[keep]
    if cfg.insertions:
        rows = np.vstack([rows, random_matrix(cfg.insertions, v.ambient_dim, f, rng)])
    u = _from_array(rows, f, v.ambient_dim)
    return u, u.rank - (v.rank - cfg.deletions)


@dataclass(frozen=True)
class Decoded:
    subset: tuple[int, ...]
    distance: int
    tie: bool


def decode_min_dist(code: Code, u: Subspace) -> Decoded:
    """Nearest codeword; the first in subset order wins ties, which are flagged."""
    if not code.codewords:
        raise ValueError("empty code")
    best, best_d, tie = None, None, False
    for sub, v in code.codewords:
        d = kk_dist_via_sum(u, v)
        if best_d is None or d < best_d:
            best, best_d, tie = sub, d, False
        elif d == best_d:
            tie = True
    return Decoded(best.indices, best_d, tie)


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    sent: tuple[int, ...]
    received_dim: int
    inserted: int
    decoded: tuple[int, ...]
    distance: int
    tie: bool
    success: bool


@dataclass
class TrialReport:
    config: ChannelConfig
    trials: int
    successes: int = 0
    failures: int = 0
    ambiguous: int = 0
    guaranteed: int = 0
    guaranteed_failures: int = 0
    records: list[TrialRecord] = field(default_factory=list)

    @property
    def success_rate(self) -> float:
        return self.successes / self.trials if self.trials else 1.0

    def summary(self) -> dict:
        return {
            "config": asdict(self.config),
            "trials": self.trials,
            "successes": self.successes,
            "failures": self.failures,
            "ambiguous": self.ambiguous,
            "success_rate": self.success_rate,
            "unique_decoding_trials": self.guaranteed,
            "unique_decoding_failures": self.guaranteed_failures,
        }

    def to_json(self) -> str:
        return json.dumps(self.summary(), sort_keys=True, indent=2)

    def log_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["trial", "seed", "sent", "received_dim", "inserted", "decoded", "distance", "tie", "success"])
        for r in self.records:
            w.writerow([
                r.trial, self.config.seed, " ".join(map(str, r.sent)), r.received_dim, r.inserted,
                " ".join(map(str, r.decoded)), r.distance, int(r.tie), int(r.success),
            ])
        return buf.getvalue()


def run_trials(code: Code, cfg: ChannelConfig, trials: int, min_distance: int | None = None) -> TrialReport:
    """Seeded trials; the transmitted codeword is uniform over the code.

    When ``min_distance`` is given, trials with ``2 (deletions + inserted) < D``
    are counted separately: decoding must succeed on each of them.
    """
    report = TrialReport(cfg, trials)
    for t in range(trials):
        pick = int(trial_rng(cfg.seed, t, 0).integers(len(code.codewords)))
        sub, v = code.codewords[pick]
        u, inserted = transmit(v, cfg, t)
        dec = decode_min_dist(code, u)
        ok = dec.subset == sub.indices and not dec.tie
        if ok:
            report.successes += 1
        elif dec.tie:
            report.ambiguous += 1
        else:
            report.failures += 1
        if min_distance is not None and 2 * (cfg.deletions + inserted) < min_distance:
            report.guaranteed += 1
            report.guaranteed_failures += not ok
        report.records.append(TrialRecord(t, sub.indices, u.rank, inserted, dec.subset, dec.distance, dec.tie, ok))
    return report
