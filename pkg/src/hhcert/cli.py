"""Command line front door: run suites and print verdict reports.

Every flag can also be set through an environment variable named
HHCERT_<FLAG>, for example HHCERT_SEED=7 or HHCERT_DATA_DIR=/tmp/data.
Flags win over the environment.  The exit code is 0 iff no item is
refuted, 1 if some item is refuted, and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections import Counter

from . import __version__
from .errors import HHCertError
from .suites import SUITES, VERDICTS, SuiteConfig, run_suite_items, suite_datasets

__all__ = ["main", "build_report", "render_text", "run_suite"]

ENV_PREFIX = "HHCERT_"
SUITE_NAMES = list(SUITES) + ["all"]
LEDGER_SUITES = {"d4": "d4-ledger", "f4": "f4-ledger"}


def _env(name: str, default=None):
    return os.environ.get(ENV_PREFIX + name.upper().replace("-", "_"), default)


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise HHCertError("cannot read config %s: %s" % (path, exc)) from exc
    if not text.strip():
        return {}
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise HHCertError("config %s is not valid JSON: %s" % (path, exc)) from exc
    if not isinstance(obj, dict):
        raise HHCertError("config %s must hold a JSON object" % path)
    return obj


def _make_config(args) -> SuiteConfig:
    opts = _load_config(args.config)
    return SuiteConfig(seed=int(args.seed), cap=int(args.cap), budget=int(args.budget),
                       data_dir=args.data_dir, case=args.case, options=opts)


def build_report(suite: str, cfg: SuiteConfig, *, jobs: int = 1, timing: bool = False) -> dict:
    """The report dict for one suite; without timing it is reproducible byte for byte."""
    items, notes, secs = run_suite_items(suite, cfg, jobs=jobs)
    if cfg.case is not None and not any(it["id"].startswith(cfg.case + "/") for it in items):
        raise HHCertError("no items for case %r in suite %s" % (cfg.case, suite))
    counts = Counter(it["verdict"] for it in items)
    report = {
        "suite": suite,
        "version": __version__,
        "config": {"seed": cfg.seed, "cap": cfg.cap, "budget": cfg.budget, "case": cfg.case,
                   "options": cfg.options},
        "datasets": suite_datasets(suite, cfg.data_dir),
        "summary": {v: counts.get(v, 0) for v in VERDICTS},
        "items": items,
        "notes": notes,
    }
    if timing:
        report["timing_seconds"] = {k: round(v, 3) for k, v in sorted(secs.items())}
    return report


def run_suite(name: str, config_path: str | None = None, **overrides) -> dict:
    """Library entry point mirroring the run subcommand."""
    cfg = SuiteConfig(options=_load_config(config_path), **overrides)
    return build_report(name, cfg)


def render_text(report: dict) -> str:
    width = max([len(it["id"]) for it in report["items"]] + [10])
    lines = ["suite %s" % report["suite"]]
    for it in report["items"]:
        extra = ""
        if it["verdict"] == "refuted":
            extra = "  witness: %s" % json.dumps(it["witness"], sort_keys=True)
        elif it["verdict"] == "undetermined":
            extra = "  reason: %s" % it["reason"]
        lines.append(("%-*s  %-12s%s" % (width, it["id"], it["verdict"], extra)).rstrip())
    for n in report["notes"]:
        lines.append("note: %s" % n)
    s = report["summary"]
    lines.append("verified %d, refuted %d, undetermined %d"
                 % (s["verified"], s["refuted"], s["undetermined"]))
    for k, v in report.get("timing_seconds", {}).items():
        lines.append("time %s: %.3f s" % (k, v))
    for k, v in sorted(report["datasets"].items()):
        lines.append("dataset %s sha256:%s" % (k, v))
    return "\n".join(lines)


def _emit(report: dict, args) -> int:
    if args.format == "json":
        text = json.dumps(report, indent=2, sort_keys=True)
    else:
        text = render_text(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 1 if report["summary"]["refuted"] else 0


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=["json", "text"], default=_env("format", "text"))
    p.add_argument("--seed", type=int, default=int(_env("seed", 20240601)))
    p.add_argument("--cap", type=int, default=int(_env("cap", 2 ** 20)))
    p.add_argument("--budget", type=int, default=int(_env("budget", 40)),
                   help="random trials per factor in chop")
    p.add_argument("--data-dir", default=_env("data_dir"))
    p.add_argument("--case", default=_env("case"), help="restrict a ledger suite to one case id")
    p.add_argument("--config", default=_env("config"), help="JSON file with per-suite options")
    p.add_argument("--out", default=_env("out"), help="write the report here instead of stdout")
    p.add_argument("--jobs", type=int, default=int(_env("jobs", 1)))
    p.add_argument("--timing", action="store_true", default=bool(_env("timing")),
                   help="include wall-clock seconds (breaks byte-identical output)")


def _cmd_run(args) -> int:
    return _emit(build_report(args.suite, _make_config(args), jobs=args.jobs, timing=args.timing), args)


def _cmd_verify_ledger(args) -> int:
    if args.all:
        args.case = None
        reports = [build_report(s, _make_config(args), timing=args.timing) for s in LEDGER_SUITES.values()]
        items = sorted((it for r in reports for it in r["items"]), key=lambda it: it["id"])
        merged = dict(reports[0], suite="ledgers", items=items,
                      notes=sorted(n for r in reports for n in r["notes"]),
                      datasets={k: v for r in reports for k, v in r["datasets"].items()},
                      summary={v: sum(r["summary"][v] for r in reports) for v in VERDICTS})
        if args.timing:
            merged["timing_seconds"] = {k: v for r in reports for k, v in r["timing_seconds"].items()}
        return _emit(merged, args)
    if not args.case:
        raise HHCertError("verify-ledger needs --case ID or --all")
    suite = LEDGER_SUITES.get(args.case.split("/")[0])
    if suite is None:
        raise HHCertError("case ids start with d4/ or f4/, got %r" % args.case)
    return _emit(build_report(suite, _make_config(args), timing=args.timing), args)


def _cmd_su3_tables(args) -> int:
    from . import su3
    from .datafiles import load_json

    t1 = load_json("su3_table1", args.data_dir)
    t2 = load_json("su3_table2", args.data_dir)
    rows = su3.verify_table1(t1) + su3.verify_table2(t2, t1)
    if args.format == "json":
        print(json.dumps(rows, indent=2, sort_keys=True, default=str))
    else:
        for r in rows:
            cols = r.get("columns", {})
            marks = " ".join("%s=%s" % (k, "pass" if v["match"] else "FAIL") for k, v in cols.items())
            print(("%-14s %-13s %s" % (r["id"], r["verdict"], marks)).rstrip())
    return 1 if any(r["verdict"] == "refuted" for r in rows) else 0


def _cmd_jordan_table(args) -> int:
    from . import jordan2

    orders = [int(x) for x in args.orders.split(",")]
    rows = []
    for order in orders:
        for n in range(1, args.n_max + 1):
            for d in range(order // 2 + 1, min(order - 1, n) + 1):
                f = jordan2.max_j_bound(n, d, order)
                b = jordan2.brute_max_j(n, d, order, cap=max(args.n_max, jordan2.DEFAULT_CAP))
                rows.append({"n": n, "d": d, "order": order, "formula": f, "brute": b, "equal": f == b})
    if args.format == "json":
        print(json.dumps(rows, indent=1, sort_keys=True))
    else:
        print("%4s %4s %6s %8s %6s %6s" % ("n", "d", "order", "formula", "brute", "equal"))
        for r in rows:
            print("%4d %4d %6d %8d %6d %6s" % (r["n"], r["d"], r["order"], r["formula"], r["brute"], r["equal"]))
    return 0 if all(r["equal"] for r in rows) else 1


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hhcert", description="Exact certification suites.")
    parser.add_argument("--version", action="version", version="hhcert " + __version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run a named suite")
    p.add_argument("suite", choices=SUITE_NAMES)
    _common(p)
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("verify-ledger", help="certify one ledger case or all of them")
    _common(p)
    p.add_argument("--all", action="store_true")
    p.set_defaults(func=_cmd_verify_ledger)

    p = sub.add_parser("su3-tables", help="per-row pass/fail matrix for the SU3 tables")
    p.add_argument("--verify", action="store_true", default=True)
    p.add_argument("--format", choices=["json", "text"], default=_env("format", "text"))
    p.add_argument("--data-dir", default=_env("data_dir"))
    p.set_defaults(func=_cmd_su3_tables)

    p = sub.add_parser("jordan-table", help="formula against brute force, one row per (n, d, order)")
    p.add_argument("--n-max", type=int, default=40)
    p.add_argument("--orders", default="4,8,16,32,64")
    p.add_argument("--format", choices=["json", "text"], default=_env("format", "text"))
    p.set_defaults(func=_cmd_jordan_table)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (HHCertError, ValueError) as exc:
        print("hhcert: error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
