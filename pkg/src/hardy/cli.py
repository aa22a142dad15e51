"""Command-line interface.

    hardy verify  [--claims PATTERN] [--config FILE] [--out FILE --format json|csv]
    hardy cont    eval | report | sweep ...
    hardy disc    report | hardy-ratio | sweep ...
    hardy sweep   --family NAME ...        (dispatches on the family name)

Exit codes: 0 all claims pass, 1 any failure or unexpected inconclusive
verdict, 2 configuration errors (reported before any check runs).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import replace
from pathlib import Path

from . import cont_ops, funcspace, harness, seq_ops

_CONFIG_KEYS = {"rel_tol", "abs_tol", "max_depth", "seq_horizon", "sharp_n",
                "claims", "seed"}


def _load_config(path: str) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise harness.ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise harness.ConfigError("config file must hold a JSON object")
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise harness.ConfigError(f"unknown config keys: {sorted(unknown)}")
    return data


def _suite_config(args) -> harness.SuiteConfig:
    cfg = harness.SuiteConfig()
    if args.config:
        cfg = replace(cfg, **_load_config(args.config))
    overrides = {}
    for key in ("rel_tol", "abs_tol", "max_depth", "seq_horizon", "sharp_n",
                "claims", "seed"):
        val = getattr(args, key, None)
        if val is not None:
            overrides[key] = val
    if getattr(args, "out", None) is not None:
        overrides["out"] = args.out
    if getattr(args, "format", None) is not None:
        overrides["fmt"] = args.format
    return replace(cfg, **overrides)


def _write_or_print(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_verify(args) -> int:
    cfg = _suite_config(args)
    records = harness.run_suite(cfg)
    for rec in records:
        print(f"{rec.verdict:22s} {rec.claim_id}")
    timestamp = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    report = harness.render_report(records, cfg, timestamp)
    if cfg.out:
        Path(cfg.out).write_text(report)
        print(f"report written to {cfg.out}")
    elif cfg.fmt == "csv":
        sys.stdout.write(report)
    code = harness.exit_code(records)
    summary = harness.report_dict(records, cfg, timestamp)["summary"]
    print(f"{summary['pass']} pass, {summary['divergent_as_expected']} "
          f"divergent-as-expected, {summary['fail']} fail, "
          f"{summary['inconclusive']} inconclusive")
    return code


def _cmd_cont_eval(args) -> int:
    f = funcspace.parse_function(args.fn)
    print(repr(f.eval(args.x)))
    return 0


def _cmd_cont_report(args) -> int:
    cfg = _suite_config(args)
    f = funcspace.parse_function(args.fn)
    rep = cont_ops.build_report(f, cfg.quad())
    payload = {"schema_version": harness.SCHEMA_VERSION, **rep.to_dict()}
    _write_or_print(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    return 0


def _resolve_sequence(args):
    if getattr(args, "seq_file", None):
        return seq_ops.load_rational_file(args.seq_file)
    if args.seq is None:
        raise harness.ConfigError("provide --seq or --seq-file")
    return seq_ops.parse_sequence(args.seq)


def _cmd_disc_report(args) -> int:
    cfg = _suite_config(args)
    seq = _resolve_sequence(args)
    rep = seq_ops.build_report(seq, cfg.seq_horizon)
    payload = {"schema_version": harness.SCHEMA_VERSION, **rep.to_dict()}
    _write_or_print(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    return 0


def _cmd_disc_ratio(args) -> int:
    seq = _resolve_sequence(args)
    ratio = seq_ops.hardy_ratio(seq, args.p, args.n)
    bound = (args.p / (args.p - 1.0)) ** args.p
    print(json.dumps({"sequence": seq.name, "p": args.p, "n": args.n,
                      "ratio": ratio, "bound": bound, "under_bound": ratio <= bound},
                     indent=2, sort_keys=True))
    return 0


def _parse_param(text: str) -> tuple[str, list]:
    if "=" not in text:
        raise harness.ConfigError("--param expects name=lo:hi[:step]")
    name, grid = text.split("=", 1)
    return name.strip(), harness.parse_grid(grid)


def _run_sweep(args, domain: str) -> int:
    cfg = _suite_config(args)
    fixed = {}
    for item in args.fix or []:
        key, val = item.split("=", 1)
        fixed[key.strip()] = float(val)
    if args.m is not None:
        param, values = "m", [int(v) for v in harness.parse_grid(args.m)]
    elif args.param is not None:
        param, values = _parse_param(args.param)
    else:
        raise harness.ConfigError("a sweep needs --param or --m")
    if domain == "auto":
        domain = "cont" if args.family in harness._CONT_FAMILIES else "disc"
    if domain == "cont":
        rows, footer = harness.sweep_cont(args.family, param, values, cfg, fixed,
                                          jobs=args.jobs)
    else:
        if param == "m":
            values = [int(v) for v in values]
        if args.family == "powcut" or args.family == "em":
            fixed = {k: int(v) if k in ("N", "m") else v for k, v in fixed.items()}
        rows, footer = harness.sweep_disc(args.family, param, values, cfg, fixed,
                                          jobs=args.jobs)
    if args.emit == "csv":
        _write_or_print(harness.sweep_to_csv(rows, footer), args.out)
    else:
        _write_or_print(json.dumps({"rows": rows, "footer": footer},
                                   indent=2, sort_keys=True) + "\n", args.out)
    return 0


def _add_tolerance_flags(p: argparse.ArgumentParser):
    p.add_argument("--rel-tol", dest="rel_tol", type=float, default=None)
    p.add_argument("--abs-tol", dest="abs_tol", type=float, default=None)
    p.add_argument("--max-depth", dest="max_depth", type=int, default=None)
    p.add_argument("--seq-horizon", dest="seq_horizon", type=int, default=None)
    p.add_argument("--config", default=None, help="JSON config file")


def _add_sweep_flags(p: argparse.ArgumentParser):
    p.add_argument("--family", required=True)
    p.add_argument("--param", default=None, help="name=lo:hi:step")
    p.add_argument("--m", default=None, help="lo:hi[:step] over impulse positions")
    p.add_argument("--fix", action="append", default=None,
                   help="extra fixed parameter name=value (repeatable)")
    p.add_argument("--emit", choices=("csv", "json"), default="csv")
    p.add_argument("--out", default=None)
    p.add_argument("--jobs", type=int, default=1,
                   help="worker threads; output is order-stable regardless")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hardy",
        description="verification suite for the averaging operator, its "
                    "mean-zero correction, and the log-weighted norms that "
                    "govern integrability of the corrected image")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the claim suite")
    p.add_argument("--claims", default=None, help="fnmatch filter on claim ids")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("json", "csv"), default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--sharp-n", dest="sharp_n", type=int, default=None)
    _add_tolerance_flags(p)
    p.set_defaults(handler=_cmd_verify)

    cont = sub.add_parser("cont", help="continuous-side operations")
    cont_sub = cont.add_subparsers(dest="subcommand", required=True)
    p = cont_sub.add_parser("eval", help="evaluate a catalog function")
    p.add_argument("--fn", required=True)
    p.add_argument("--x", type=float, required=True)
    p.set_defaults(handler=_cmd_cont_eval)
    p = cont_sub.add_parser("report", help="functionals of one function as JSON")
    p.add_argument("--fn", required=True)
    p.add_argument("--out", default=None)
    _add_tolerance_flags(p)
    p.set_defaults(handler=_cmd_cont_report)
    p = cont_sub.add_parser("sweep", help="sweep a parametric family")
    _add_sweep_flags(p)
    _add_tolerance_flags(p)
    p.set_defaults(handler=lambda a: _run_sweep(a, "cont"))

    disc = sub.add_parser("disc", help="discrete-side operations")
    disc_sub = disc.add_subparsers(dest="subcommand", required=True)
    p = disc_sub.add_parser("report", help="functionals of one sequence as JSON")
    p.add_argument("--seq", default=None)
    p.add_argument("--seq-file", dest="seq_file", default=None,
                   help="finite sequence file: one integer or p/q per line")
    p.add_argument("--out", default=None)
    _add_tolerance_flags(p)
    p.set_defaults(handler=_cmd_disc_report)
    p = disc_sub.add_parser("hardy-ratio", help="truncated p-power ratio")
    p.add_argument("--seq", default=None)
    p.add_argument("--seq-file", dest="seq_file", default=None,
                   help="finite sequence file: one integer or p/q per line")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--n", type=int, default=10 ** 6)
    p.set_defaults(handler=_cmd_disc_ratio)
    p = disc_sub.add_parser("sweep", help="sweep a sequence family")
    _add_sweep_flags(p)
    _add_tolerance_flags(p)
    p.set_defaults(handler=lambda a: _run_sweep(a, "disc"))

    p = sub.add_parser("sweep", help="sweep either kind of family")
    _add_sweep_flags(p)
    _add_tolerance_flags(p)
    p.set_defaults(handler=lambda a: _run_sweep(a, "auto"))
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 2
    try:
        return args.handler(args)
    except harness.ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except (funcspace.CatalogError, funcspace.ParameterError,
            seq_ops.SequenceError, funcspace.DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
