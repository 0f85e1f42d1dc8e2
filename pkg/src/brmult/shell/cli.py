"""Command-line entry point ``brim``.

Settings precedence: command-line flags, then ``BRIM_*`` environment
variables, then built-in defaults.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from .. import config
from ..exact import parse_field
from .parser import ParseError, parse_session
from .ast import pretty
from .session import EXIT_PARSE, render_text, run_session

ENV_PREFIX = "BRIM_"


def _env(name, default=None):
    return os.environ.get(ENV_PREFIX + name, default)


def _env_flag(name) -> bool:
    return _env(name, "").strip().lower() in ("1", "true", "yes", "on")


def _env_int(name, default):
    v = _env(name)
    return int(v) if v not in (None, "") else default


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="brim",
        description="Buchsbaum-Rim multiplicities and formula checks for session files.",
    )
    p.add_argument("path", nargs="?", default="-", help="session file (default: stdin)")
    p.add_argument("--seed", type=int, default=_env_int("SEED", 0), help="seed for randomized rank checks")
    p.add_argument("--field", default=_env("FIELD", "q"), help="coefficient field: q or fp:<prime>")
    p.add_argument("--nmax", type=int, default=_env_int("NMAX", None), help="largest n sampled (default 12 + s)")
    p.add_argument("--budget", type=int, default=_env_int("BUDGET", config.DEFAULT_BUDGET),
                   help="Groebner reduction budget")
    p.add_argument("--json", action="store_true", default=_env_flag("JSON"), help="emit JSON lines")
    p.add_argument("--verbose", action="store_true", default=_env_flag("VERBOSE"),
                   help="include per-n length samples")
    p.add_argument("--timing", action="store_true", default=_env_flag("TIMING"),
                   help="record wall-clock milliseconds (output is then not reproducible)")
    p.add_argument("--format", action="store_true", help="pretty-print the session and exit")
    return p


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        field = parse_field(args.field)
    except ValueError as exc:
        print(f"brim: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        text = _read(args.path)
    except OSError as exc:
        print(f"brim: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if args.format:
        try:
            sys.stdout.write(pretty(parse_session(text)))
        except ParseError as exc:
            print(f"brim: {exc}", file=sys.stderr)
            return EXIT_PARSE
        return 0
    with config.settings_override(budget=args.budget, nmax=args.nmax, verbose=args.verbose):
        res = run_session(text, seed=args.seed, field=field, timing=args.timing)
    for rec in res.records:
        if args.json:
            print(json.dumps(rec.to_dict()))
        else:
            print(render_text(rec))
    if res.error:
        print(f"brim: {res.error}", file=sys.stderr)
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())
