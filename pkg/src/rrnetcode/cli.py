"""Command-line front end.

Exit codes: 0 success, 2 usage or unsupported parameters, 3 resource cap
exceeded, 4 verification finished with deviations.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from . import __version__
from .channel import DEFAULT_SEED, ChannelConfig, run_trials
from .curve import CurveError, curve_make, denominator_valuations, hasse_weil_check
from .netcode import (
    CapExceeded,
    CodeSpec,
    DegenerateCode,
    code_build,
    code_from_json,
    dl_param_table,
    has_deviations,
    min_distance,
    rows_to_csv,
    verdicts_to_csv,
    verify,
)
from .rrspace import SpaceTooLarge

log = logging.getLogger("rrnetcode")

EXIT_USAGE = 2
EXIT_CAP = 3
EXIT_DEVIATION = 4


class UsageError(Exception):
    pass


def _manifest(args: argparse.Namespace, argv: list[str], field=None) -> dict:
    return {
        "tool": "rrnetcode",
        "version": __version__,
        "command": argv,
        "seed": getattr(args, "seed", None),
        "field": None if field is None else field.to_json(),
    }


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _dump(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _csv_with_manifest(csv_text: str, manifest: dict) -> str:
    return "# manifest: " + json.dumps(manifest, sort_keys=True) + "\n" + csv_text


def cmd_curve_info(args: argparse.Namespace, argv: list[str]) -> int:
    curve = curve_make(args.family, args.q)
    hw = hasse_weil_check(curve)
    info = curve.to_json()
    info.update(hasse_weil=hw, maximal=hw["maximal"], denominator=denominator_valuations(curve))
    info["manifest"] = _manifest(args, argv, curve.field)
    _emit(_dump(info), args.out)
    return 0


def _spec_from_args(args: argparse.Namespace) -> CodeSpec:
    for name in ("q", "k", "s"):
        if getattr(args, name) is None:
            raise UsageError(f"--{name} is required")
    mode = "sampled" if args.sample else "exhaustive"
    return CodeSpec(args.family, args.q, args.k, args.s, mode, args.sample or 0, args.seed)


def _load_or_build(args: argparse.Namespace):
    if args.infile:
        return code_from_json(json.loads(Path(args.infile).read_text(encoding="utf-8")))
    return code_build(_spec_from_args(args))


def cmd_code(args: argparse.Namespace, argv: list[str]) -> int:
    if args.action == "params":
        if args.k is None or args.s is None:
            raise UsageError("--k and --s are required")
        row = dl_param_table(args.family, args.k, args.s, q=args.q, m=args.m)
        manifest = _manifest(args, argv)
        if args.format == "json":
            _emit(_dump({"params": row, "manifest": manifest}), args.out)
        else:
            _emit(_csv_with_manifest(rows_to_csv([row]), manifest), args.out)
        return 0

    if args.family not in ("p1", "hermitian"):
        raise UsageError(f"family {args.family!r} is formula-only; use 'code params'")
    code = _load_or_build(args)
    manifest = _manifest(args, argv, code.field)

    if args.action == "build":
        obj = code.to_json()
        obj["manifest"] = manifest
        _emit(_dump(obj), args.out)
        return 0

    if args.action == "mindist":
        md = min_distance(code, args.mode)
        _emit(_dump({"mindist": md.to_json(), "mode": args.mode, "manifest": manifest}), args.out)
        return 0

    rows = verify(code)
    if args.format == "json":
        _emit(_dump({"verdicts": [r.__dict__ for r in rows], "manifest": manifest}), args.out)
    else:
        _emit(_csv_with_manifest(verdicts_to_csv(rows), manifest), args.out)
    return EXIT_DEVIATION if has_deviations(rows) else 0


def cmd_simulate(args: argparse.Namespace, argv: list[str]) -> int:
    if not args.infile and args.family is None:
        raise UsageError("give --in CODEFILE or --family/--q/--k/--s")
    code = _load_or_build(args)
    l_max = max(v.rank for _, v in code.codewords)
    if args.deletions > min(v.rank for _, v in code.codewords):
        raise UsageError(f"--deletions {args.deletions} exceeds codeword dimension (l = {l_max})")
    try:
        D = min_distance(code, "exhaustive").D
    except DegenerateCode:
        D = None
    cfg = ChannelConfig(args.deletions, args.insertions, args.mixing, args.seed)
    report = run_trials(code, cfg, args.trials, D)
    summary = report.summary()
    summary["code"] = code.spec.to_json()
    summary["min_distance"] = D
    summary["manifest"] = _manifest(args, argv, code.field)
    _emit(_dump(summary), args.out)
    if args.log:
        Path(args.log).write_text(report.log_csv(), encoding="utf-8")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rrnetcode", description="Network codes from Riemann-Roch spaces.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress and timing to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("curve-info", help="genus, rational points and Hasse-Weil check")
    p.add_argument("--family", required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_curve_info)

    p = sub.add_parser("code", help="build, inspect and verify C_{k,s}")
    p.add_argument("action", choices=["build", "params", "mindist", "verify"])
    p.add_argument("--family", default="hermitian", choices=["p1", "hermitian", "suzuki", "ree"])
    p.add_argument("--q", type=int)
    p.add_argument("--m", type=int, help="suzuki/ree: field size 2^(2m+1) or 3^(2m+1)")
    p.add_argument("--k", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--sample", type=int, help="sample this many subsets instead of enumerating")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--mode", choices=["exhaustive", "adjacent"], default="exhaustive")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--in", dest="infile")
    p.add_argument("--out")
    p.set_defaults(func=cmd_code)

    p = sub.add_parser("simulate", help="operator-channel trials with minimum-distance decoding")
    p.add_argument("--in", dest="infile")
    p.add_argument("--family", choices=["p1", "hermitian"])
    p.add_argument("--q", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--sample", type=int)
    p.add_argument("--deletions", type=int, default=0)
    p.add_argument("--insertions", type=int, default=0)
    p.add_argument("--mixing", type=int, default=1)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--log", help="write the per-trial CSV log here")
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)
    return ap


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    start = time.perf_counter()
    try:
        rc = args.func(args, argv)
    except (CapExceeded, SpaceTooLarge) as exc:
        print(f"rrnetcode: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, CurveError, DegenerateCode, ValueError) as exc:
        print(f"rrnetcode: {exc}", file=sys.stderr)
        return EXIT_USAGE
    log.info("%s finished in %.3fs", args.command, time.perf_counter() - start)
    return rc


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
