"""``ecshare`` command line: points, analyze, share, reconstruct, simulate.

Exit codes: 0 success, 2 invalid input, 3 theorem violation, 4 unqualified
reconstruction attempt.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any

from . import analysis as an
from .agcode import CodeError
from .cheatersim import simulate
from .config import ConfigError, LoadedConfig, dumps, echo_config, load_config
from .curve import CurveError
from .field import FieldError
from .lsss import NotQualified, SchemeError, build_scheme, deal, reconstruct
from .report import analysis_report, points_report

EXIT_OK, EXIT_INPUT, EXIT_THEOREM, EXIT_UNQUALIFIED = 0, 2, 3, 4

log = logging.getLogger("ecshare")


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INPUT):
        super().__init__(message)
        self.code = code


def _emit(obj: Any, out: str | None):
    text = dumps(obj)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load(args, require_scheme: bool = True) -> LoadedConfig:
    loaded = load_config(args.config, require_scheme)
    if args.seed is not None and loaded.scheme is not None:
        loaded = replace(loaded, scheme=replace(loaded.scheme, rng_seed=args.seed))
    return loaded


def _build(loaded: LoadedConfig):
    try:
        return build_scheme(loaded.scheme)
    except (SchemeError, CodeError) as exc:
        raise CliError(f"cannot build scheme: {exc}") from None


def _parse_subset(text: str, n: int) -> list[int]:
    try:
        idx = sorted({int(t) for t in text.split(",") if t.strip()})
    except ValueError:
        raise CliError(f"bad subset {text!r}: expected comma-separated player indices") from None
    if not idx or idx[0] < 1 or idx[-1] > n:
        raise CliError(f"subset must be non-empty with indices in 1..{n}")
    return idx


def cmd_points(args) -> int:
    _emit(points_report(_load(args, require_scheme=False)), args.out)
    return EXIT_OK


def cmd_analyze(args) -> int:
    loaded = _load(args)
    s = _build(loaded)
    try:
        report = analysis_report(loaded, s)
    except an.IdentityMismatch as exc:
        raise CliError(str(exc), EXIT_THEOREM) from None
    _emit(report, args.out)
    for v in report["violations"]:
        log.error("violation: %s", v)
    return EXIT_THEOREM if report["violations"] else EXIT_OK


def cmd_share(args) -> int:
    loaded = _load(args)
    s = _build(loaded)
    F = s.field
    try:
        secret = F.parse(args.secret)
    except FieldError as exc:
        raise CliError(f"bad secret: {exc}") from None
    bundle = deal(s, secret, seed=loaded.scheme.rng_seed)
    c = loaded.curve
    _emit(
        {
            "config": echo_config(loaded),
            "secret": F.format(secret),
            "shares": {
                str(i): {"point": c.format_point(loaded.scheme.D[i]), "share": F.format(v.value)}
                for i, v in enumerate(bundle.shares, start=1)
            },
        },
        args.out,
    )
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    loaded = _load(args)
    s = _build(loaded)
    F = s.field
    try:
        data = json.loads(Path(args.shares).read_text())
        table = data["shares"]
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise CliError(f"cannot read shares file: {exc}") from None
    subset = _parse_subset(args.subset, s.n) if args.subset else list(range(1, s.n + 1))
    try:
        sub = {}
        for i in subset:
            entry = table[str(i)]
            sub[i] = F.parse(entry["share"] if isinstance(entry, dict) else entry)
    except KeyError as exc:
        raise CliError(f"shares file lacks player {exc}") from None
    except FieldError as exc:
        raise CliError(f"bad share value: {exc}") from None
    try:
        secret = reconstruct(s, subset, sub)
    except NotQualified:
        raise CliError("not qualified", EXIT_UNQUALIFIED) from None
    _emit({"subset": subset, "secret": F.format(secret.value)}, args.out)
    return EXIT_OK


def cmd_simulate(args) -> int:
    loaded = _load(args)
    s = _build(loaded)
    if args.t < 0 or args.t > s.n:
        raise CliError(f"t={args.t} must lie in 0..{s.n}")
    if args.trials < 0:
        raise CliError("trials must be non-negative")
    seed = loaded.scheme.rng_seed
    detail: list | None = [] if args.verbose else None
    params = an.mds_check(s)
    summary = simulate(s, args.trials, args.t, seed, detail).as_dict()
    out: dict[str, Any] = {
        "config": echo_config(loaded),
        "d_min": params.d_min,
        "d_cheat": params.d_cheat,
        "identify_radius": (params.d_min - 1) // 2,
        "recover_radius": (params.d_cheat - 1) // 2,
        "seed": seed,
        "summary": summary,
    }
    if detail is not None:
        out["trials"] = detail
    _emit(out, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="scheme configuration JSON")
    common.add_argument("--seed", type=int, default=None, help="override the config seed")
    common.add_argument("--out", default=None, help="write JSON here instead of stdout")
    common.add_argument("--verbose", "-v", action="store_true")

    parser = argparse.ArgumentParser(prog="ecshare", description="Secret sharing from elliptic-curve AG codes.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("points", parents=[common], help="list rational points and group structure").set_defaults(
        func=cmd_points
    )
    sub.add_parser("analyze", parents=[common], help="access structure, d_min, d_cheat, theorem checks").set_defaults(
        func=cmd_analyze
    )
    p = sub.add_parser("share", parents=[common], help="deal shares of a secret")
    p.add_argument("--secret", required=True, help="field element text")
    p.set_defaults(func=cmd_share)
    p = sub.add_parser("reconstruct", parents=[common], help="recover the secret from a subset of shares")
    p.add_argument("--shares", required=True, help="JSON written by 'share'")
    p.add_argument("--subset", default=None, help="comma-separated player indices (default: all)")
    p.set_defaults(func=cmd_reconstruct)
    p = sub.add_parser("simulate", parents=[common], help="cheater identification trials")
    p.add_argument("--t", type=int, required=True, help="number of cheaters")
    p.add_argument("--trials", type=int, default=100)
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (ConfigError, FieldError, CurveError, SchemeError, CodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except an.TheoremViolation as exc:
        print(f"theorem violation: {exc}", file=sys.stderr)
        return EXIT_THEOREM


if __name__ == "__main__":
    sys.exit(main())
