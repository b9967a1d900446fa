"""Command line entry point: ``python3 -m lglab <subcommand> [flags]``.

Every flag has an environment override ``LGLAB_<NAME>``; an explicit flag
always wins over the environment.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import List, Optional

from . import __version__
from . import enumerative as en
from .checks import ANOMALY, FAIL, PASS, SUBCOMMANDS, RunConfig, run
from .exact import parse_field

SCHEMA = "lglab.report/1"

ENV = {
    "field": "LGLAB_FIELD",
    "seed": "LGLAB_SEED",
    "samples": "LGLAB_SAMPLES",
    "witnesses": "LGLAB_WITNESSES",
    "out": "LGLAB_OUT",
    "format": "LGLAB_FORMAT",
    "jobs": "LGLAB_JOBS",
    "timing": "LGLAB_TIMING",
}

DEFAULTS = {"field": "fp:1009", "seed": 0, "samples": None, "witnesses": 5, "out": None,
            "format": "json", "jobs": 1, "timing": False}


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lglab", description="Exact checks for LG(3,6) in P^13.")
    p.add_argument("--version", action="version", version=f"lglab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name in SUBCOMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--field", default=None, help="q or fp:<p> (default fp:1009)")
        s.add_argument("--seed", default=None, help="master seed, an unsigned 64-bit integer")
        s.add_argument("--samples", default=None, help="override the sample count of each check")
        s.add_argument("--witnesses", default=None, help="number of nodal witnesses (default 5)")
        s.add_argument("--jobs", default=None, help="worker processes for the witness fits")
        s.add_argument("--out", default=None, help="write the report here instead of stdout")
        s.add_argument("--format", default=None, choices=["json", "csv"])
        s.add_argument("--timing", action="store_const", const=True, default=None,
                       help="include wall-clock timings (makes the report non-reproducible)")
    return p


def _positive(name, value, allow_zero=False):
    try:
        v = int(value)
    except (TypeError, ValueError):
        raise SystemExit(f"lglab: --{name} must be an integer, got {value!r}")
    if v < 0 or (v == 0 and not allow_zero):
        raise SystemExit(f"lglab: --{name} must be positive, got {v}")
    return v


def resolve(args, environ=None) -> dict:
    """Merge flags, environment and defaults (in that order of precedence)."""
    environ = os.environ if environ is None else environ
    out = {}
    for key, default in DEFAULTS.items():
        val = getattr(args, key, None)
        if val is None and ENV[key] in environ:
            val = environ[ENV[key]]
        out[key] = default if val is None else val
    out["timing"] = out["timing"] in (True, "1", "true", "yes")
    try:
        parse_field(str(out["field"]))
    except (ValueError, TypeError) as exc:
        raise SystemExit(f"lglab: invalid field: {exc}")
    seed = _positive("seed", out["seed"], allow_zero=True)
    if seed >= 2 ** 64:
        raise SystemExit("lglab: --seed must fit in 64 bits")
    out["seed"] = seed
    out["samples"] = None if out["samples"] is None else _positive("samples", out["samples"])
    out["witnesses"] = _positive("witnesses", out["witnesses"])
    out["jobs"] = _positive("jobs", out["jobs"])
    if out["format"] not in ("json", "csv"):
        raise SystemExit(f"lglab: unknown format {out['format']!r}")
    return out


def build_report(command: str, opts: dict) -> tuple:
    cfg = RunConfig(field=str(opts["field"]), seed=opts["seed"], samples=opts["samples"],
                    witnesses=opts["witnesses"], jobs=opts["jobs"])
    results = run(command, cfg)
    counts = {s: sum(r.status == s for r in results) for s in (PASS, FAIL, ANOMALY)}
    report = {
        "schema": SCHEMA,
        "subcommand": command,
        "config": {"field": cfg.field, "seed": cfg.seed, "samples": cfg.samples,
                   "witnesses": cfg.witnesses},
        "checks": [r.record(opts["timing"]) for r in results],
        "summary": counts,
        "warning": counts[ANOMALY] > 0,
    }
    return report, results


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    if report["subcommand"] == "numerology":
        return en.table_csv()
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["id", "title", "status", "anchor"])
    for c in report["checks"]:
        w.writerow([c["id"], c["title"], c["status"], c["anchor"]])
    return buf.getvalue()


def main(argv: Optional[List[str]] = None) -> int:
    args = _parser().parse_args(argv)
    opts = resolve(args)
    report, results = build_report(args.command, opts)
    text = render(report, opts["format"])
    if opts["out"]:
        with open(opts["out"], "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for r in results:
        print(r.line, file=sys.stderr)
    if report["warning"]:
        print("lglab: warning: some checks raised anomalies", file=sys.stderr)
    return 1 if report["summary"][FAIL] else 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
