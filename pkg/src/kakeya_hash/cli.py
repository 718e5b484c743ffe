"""Command-line entry point: ``kakeya-hash`` (or ``python3 -m kakeya_hash``).

Exit codes: 0 success, 1 an audit found a violation, 2 usage or config
error, 3 the work budget was exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import harness
from .harness import EXIT_BUDGET, EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, ConfigError
from .linalg import BudgetExceeded, field_make, field_of_order
from .params import (
    ParameterError,
    choose_t_binary,
    choose_t_large_field,
    hypothesis_check_large_field,
    injective_t,
)

AUDIT_KINDS = {
    "balance": "balance_audit",
    "furstenberg": "furstenberg_audit",
    "polymethod": "polymethod_selfcheck",
}


def _add_run_flags(p: argparse.ArgumentParser, csv: bool) -> None:
    p.add_argument("--config", required=True, help="JSON experiment config")
    p.add_argument("--seed", type=int, help="override the config seed")
    p.add_argument("--trials", type=int, help="override the number of trials")
    p.add_argument("--jobs", type=int, help="worker threads (output order is unaffected)")
    p.add_argument("--budget", type=int, help="work budget (default: $KAKEYA_HASH_BUDGET or 1e8)")
    p.add_argument("--out", help="write records here instead of stdout")
    choices = ["jsonl", "csv"] if csv else ["jsonl"]
    p.add_argument("--format", choices=choices, default="jsonl",
                   help="jsonl records + summary, or csv bucket histograms")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kakeya-hash",
                                     description="Linear hashing balance experiments and audits.")
    sub = parser.add_subparsers(dest="command", required=True)

    hb = sub.add_parser("hash-balance", help="pass fraction of random linear maps")
    _add_run_flags(hb, csv=True)
    bl = sub.add_parser("baseline", help="max bucket: linear maps vs random functions")
    _add_run_flags(bl, csv=False)

    au = sub.add_parser("audit", help="exhaustive and randomized correctness audits")
    au.add_argument("family", choices=sorted(AUDIT_KINDS))
    _add_run_flags(au, csv=False)

    pa = sub.add_parser("params", help="evaluate an output-length rule")
    pa.add_argument("--variant", required=True,
                    choices=["thm21", "thm22", "thm24", "thm25_binary", "thm26", "injective", "hypothesis"])
    pa.add_argument("--p", type=int, help="field characteristic (with --ell)")
    pa.add_argument("--ell", type=int, default=1, help="extension degree")
    pa.add_argument("--q", type=int, help="field order (alternative to --p/--ell)")
    pa.add_argument("--n", type=int, help="ambient dimension")
    pa.add_argument("--size", help='set size, e.g. 4096 or "2^60"')
    pa.add_argument("--tau", help='closeness parameter, e.g. 1 or "1/2"')
    pa.add_argument("--delta", help='failure probability, e.g. "1/10"')
    pa.add_argument("--hypothesis-variant", choices=["main", "improved"], default="main")
    pa.add_argument("--no-check", action="store_true",
                    help="report failed side conditions as notes instead of erroring")
    return parser


def _require(args, *names) -> None:
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise ConfigError(f"{args.variant} needs {' '.join(missing)}")


def _params(args) -> dict:
    v = args.variant
    size = harness.parse_big_int(args.size, "--size") if args.size is not None else None
    tau = harness.parse_rational(_num(args.tau), "--tau") if args.tau is not None else None
    delta = harness.parse_rational(_num(args.delta), "--delta") if args.delta is not None else None
    if v in ("thm21", "hypothesis"):
        if args.q is not None:
            ctx = field_of_order(args.q)
        elif args.p is not None:
            ctx = field_make(args.p, args.ell)
        else:
            raise ConfigError(f"{v} needs --q or --p/--ell")
        if v == "thm21":
            _require(args, "n", "size")
            return choose_t_large_field(ctx, size, args.n).as_dict()
        _require(args, "n", "tau", "delta")
        rep = hypothesis_check_large_field(ctx, args.n, tau, delta, args.hypothesis_variant)
        return {"variant": "hypothesis", "q": ctx.q, "ok": rep.ok, "failed": list(rep.failed)}
    if v == "injective":
        _require(args, "size", "delta")
        return {"variant": "injective", "t": injective_t(size, delta)}
    _require(args, "n", "size", "tau", "delta")
    return choose_t_binary(args.n, size, tau, delta, v, check=not args.no_check).as_dict()


def _num(text: str):
    # argparse hands us strings; plain integers should parse as ints
    return int(text) if text.lstrip("-").isdigit() else text


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "params":
            print(json.dumps(_params(args), sort_keys=True, default=_json_default))
            return EXIT_OK
        overrides = {"seed": args.seed, "trials": args.trials, "jobs": args.jobs, "budget": args.budget}
        cfg = harness.load_config(args.config, overrides)
        expected = {"hash-balance": ("hash_balance",), "baseline": ("baseline_compare",)}.get(
            args.command, (AUDIT_KINDS.get(getattr(args, "family", ""), ""),))
        if cfg.kind not in expected:
            raise ConfigError(f"config kind {cfg.kind!r} does not match command {args.command!r}")
        result = harness.run(cfg)
        if result.exit_code == EXIT_BUDGET:
            print(f"kakeya-hash: {result.summary['error']}", file=sys.stderr)
            return EXIT_BUDGET
        _write(result.to_csv() if args.format == "csv" else result.to_jsonl(), args.out)
        if result.exit_code == EXIT_VIOLATION:
            print("kakeya-hash: audit found violations", file=sys.stderr)
        return result.exit_code
    except BudgetExceeded as e:
        print(f"kakeya-hash: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (ConfigError, ParameterError, ValueError) as e:
        print(f"kakeya-hash: error: {e}", file=sys.stderr)
        return EXIT_USAGE


def _json_default(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    raise TypeError(type(x).__name__)


if __name__ == "__main__":
    sys.exit(main())
