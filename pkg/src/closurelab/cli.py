"""Command-line front end.

Subcommands:
  close      compute one closure dimension (or the full quotient data)
  table      run a manifest of algebras against published dimensions
  verify     run the property suites
  transform  apply the monic-polynomial transform
  tower      split roots off a monic polynomial one at a time

Exit codes: 0 success, 1 mismatch or failed property, 2 parse error,
3 budget exceeded, 4 method precondition violated.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .arith import GF, QQ, field_from_order
from .catalog import ManifestEntry, load_manifest
from .closure import (closure_from_presentation, monogenic_tower,
                      naive_closure, transform_monic)
from .errors import (BudgetExceeded, ClosureLabError, DegreeTooSmall,
                     InfiniteFieldUnsupported, ModularDisagreement, NotLocal,
                     NotPrime, NotZeroDimensional, ParseError,
                     ReducibleModulus, UnsupportedField)
from .finalg import algebra_from_presentation
from .multipoly import format_univariate, parse_presentation, parse_univariate
from .verify import DEFAULT_SEED, SUITES, run_suites

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3
EXIT_PRECONDITION = 4

_PARSE_ERRORS = (ParseError, UnsupportedField, NotPrime, ReducibleModulus,
                 NotZeroDimensional)
_PRECONDITION_ERRORS = (NotLocal, InfiniteFieldUnsupported, DegreeTooSmall,
                        ModularDisagreement)


def _field_from_spec(text: str):
    text = text.strip()
    if text in ("Q", "q"):
        return QQ()
    if text in ("Z", "z"):
        return None
    if text.startswith("GF(") and text.endswith(")"):
        inner = text[3:-1].split(",")
        p = int(inner[0])
        k = int(inner[1]) if len(inner) > 1 else 1
        return GF(p, k)
    if text.startswith("F") and text[1:].isdigit():
        return field_from_order(int(text[1:]))
    raise UnsupportedField(f"unknown field {text!r}")


def _emit(record: dict, as_json: bool):
    if as_json:
        print(json.dumps(record, sort_keys=True))
    else:
        expected = record.get("expected")
        tail = ""
        if expected is not None:
            tail = f"  expected={expected}  match={'yes' if record.get('match') else 'NO'}"
        if record.get("error"):
            print(f"{record['name']}  m={record['m']}  ERROR: {record['error']}")
        else:
            print(f"{record['name']}  m={record['m']}  dim={record['dim']}  "
                  f"[{record['method']}, {record['field']}, "
                  f"gens={record['generators']}, rank={record['rank']}, "
                  f"{record['ms']:.0f}ms]{tail}")


def cmd_close(args) -> int:
    try:
        pres = parse_presentation(args.algebra)
    except _PARSE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        t0 = time.perf_counter()
        if args.method == "naive":
            algebra = algebra_from_presentation(pres)
            result = naive_closure(algebra, args.m)
            mode = str(pres.field)
        else:
            method = "general" if args.method == "general" else "local"
            result, mode = closure_from_presentation(
                pres, args.m, method=method, exact=args.exact)
        ms = (time.perf_counter() - t0) * 1e3
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except _PRECONDITION_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except _PARSE_ERRORS + (ValueError,) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE

    record = {
        "name": args.algebra, "m": args.m, "method": result.method,
        "field": mode, "dim": result.dim, "generators": result.generator_count,
        "rank": result.rank, "ms": round(ms, 3),
    }
    if args.json:
        if args.emit == "full":
            record["basis"] = [result.closure.label_str(i)
                               for i in range(result.closure.dim)]
            record["maps"] = [
                [{str(k): result.closure.field.format_scalar(v)
                  for k, v in row.items()} for row in mp.rows]
                for mp in result.maps]
        print(json.dumps(record, sort_keys=True))
    else:
        print(f"dim = {result.dim}")
        if args.emit == "full":
            print(f"method = {result.method} ({result.strategy}), field = {mode}, "
                  f"generators = {result.generator_count}, rank = {result.rank}")
            labels = ", ".join(result.closure.label_str(i)
                               for i in range(result.closure.dim))
            print(f"basis [{result.closure.dim}]: {labels}")
            for s, mp in enumerate(result.maps, start=1):
                fmt = result.closure.field.format_scalar
                rows = []
                for i, row in enumerate(mp.rows):
                    body = " + ".join(
                        f"{fmt(v)}*{result.closure.label_str(k)}"
                        for k, v in sorted(row.items())) or "0"
                    rows.append(f"    {result.input_algebra.label_str(i)} -> {body}")
                print(f"map alpha_{s}:")
                print("\n".join(rows))
    return EXIT_OK


def _table_task(payload):
    entry_dict, m, exact = payload
    entry = ManifestEntry(**entry_dict)
    record = {"name": entry.name, "m": m, "method": "general",
              "field": entry.field, "dim": None, "generators": 0, "rank": 0,
              "ms": 0.0}
    expected = entry.expected.get(m)
    if expected is not None:
        record["expected"] = expected
    try:
        t0 = time.perf_counter()
        result, mode = closure_from_presentation(entry.presentation(), m,
                                                 exact=exact)
        record.update(dim=result.dim, method=result.method, field=mode,
                      generators=result.generator_count, rank=result.rank,
                      ms=round((time.perf_counter() - t0) * 1e3, 3))
        if expected is not None:
            record["match"] = result.dim == expected
    except (ClosureLabError, ValueError) as exc:
        record["error"] = str(exc)
        record["match"] = False
    return record


def cmd_table(args) -> int:
    try:
        entries = load_manifest(args.manifest)
    except (FileNotFoundError, json.JSONDecodeError, KeyError) as exc:
        print(f"error: cannot load manifest: {exc}", file=sys.stderr)
        return EXIT_PARSE
    if args.rows:
        wanted = [r.strip() for r in args.rows.split(";") if r.strip()]
        entries = [e for e in entries if e.name in wanted or
                   str(entries.index(e)) in wanted]
    tasks = []
    for entry in entries:
        for m in sorted(entry.expected):
            if args.max_m is not None and m > args.max_m:
                continue
            if args.min_m is not None and m < args.min_m:
                continue
            tasks.append((entry.__dict__.copy(), m, args.exact))
    if args.jobs and args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            records = list(pool.map(_table_task, tasks))
    else:
        records = [_table_task(t) for t in tasks]
    all_match = True
    for record in records:
        _emit(record, args.json)
        if record.get("match") is False or record.get("error"):
            all_match = False
    if not args.json:
        n_match = sum(1 for r in records if r.get("match"))
        n_exp = sum(1 for r in records if "expected" in r)
        print(f"-- {n_match}/{n_exp} expected dimensions matched "
              f"({len(records)} computations)")
    return EXIT_OK if all_match else EXIT_MISMATCH


def cmd_verify(args) -> int:
    names = [s.strip() for s in args.suite.split(",")]
    try:
        ok, results = run_suites(names if names != ["all"] else "all",
                                 seed=args.seed)
    except KeyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    failed = None
    for suite, name, good, detail in results:
        if args.json:
            print(json.dumps({"suite": suite, "check": name, "ok": good,
                              "detail": detail}, sort_keys=True))
        else:
            mark = "ok  " if good else "FAIL"
            print(f"[{mark}] ({suite}) {name}" + (f"  -- {detail}" if detail and not good else ""))
        if not good and failed is None:
            failed = f"({suite}) {name}"
    if not args.json:
        n_ok = sum(1 for r in results if r[2])
        print(f"-- {n_ok}/{len(results)} checks passed")
    if failed:
        print(f"first failing property: {failed}", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_transform(args) -> int:
    try:
        fieldh = _field_from_spec(args.field)
        if fieldh is None:
            raise UnsupportedField("transform needs a field; use Q or GF(p[,k])")
        f, var = parse_univariate(args.f, fieldh)
        g, _ = parse_univariate(args.g, fieldh, var=None)
        if not f or f[-1] != fieldh.one:
            raise ParseError("f must be monic")
    except _PARSE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    out = transform_monic(f, g, fieldh)
    print(format_univariate(out, fieldh, var))
    return EXIT_OK


def cmd_tower(args) -> int:
    try:
        fieldh = _field_from_spec(args.field)
        parse_field = fieldh if fieldh is not None else QQ()
        f, _ = parse_univariate(args.f, parse_field)
        if not f or f[-1] != parse_field.one:
            raise ParseError("f must be monic")
        if fieldh is None and any(c.denominator != 1 for c in f):
            raise ParseError("integer tower needs integer coefficients")
    except _PARSE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        tower = monogenic_tower(f, args.m, fieldh)
    except DegreeTooSmall as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    if args.json:
        print(json.dumps({"base": tower.base, "degree": tower.degree,
                          "m": tower.m, "dim": tower.dim,
                          "relations": list(tower.relations)}, sort_keys=True))
    else:
        print(f"dim = {tower.dim}")
        for i, rel in enumerate(tower.relations, start=1):
            print(f"stage {i}: {rel} = 0")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="closurelab",
        description="exact closures of finite commutative algebras")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("close", help="compute one closure")
    p.add_argument("--algebra", required=True,
                   help="presentation, e.g. 'Q[x,y]/((x,y)^2)'")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--method", choices=["general", "local", "naive"],
                   default="general")
    p.add_argument("--exact", action="store_true",
                   help="use rational arithmetic instead of two-prime mode")
    p.add_argument("--json", action="store_true")
    p.add_argument("--emit", choices=["dim", "full"], default="dim")
    p.set_defaults(func=cmd_close)

    p = sub.add_parser("table", help="run a manifest of table rows")
    p.add_argument("--manifest", required=True,
                   help="path or bundled name (table1.json, table2.json)")
    p.add_argument("--rows", help="semicolon-separated row names or indices")
    p.add_argument("--max-m", type=int, default=None)
    p.add_argument("--min-m", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--exact", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="run property suites")
    p.add_argument("--suite", default="all",
                   help="comma list of: " + ", ".join(SUITES) + ", or 'all'")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("transform", help="monic polynomial transform")
    p.add_argument("--f", required=True, help="monic polynomial, e.g. 'Z^3-6Z^2+11Z-6'")
    p.add_argument("--g", required=True, help="any polynomial, e.g. 'X^2'")
    p.add_argument("--field", default="Q")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("tower", help="root-splitting tower of a monic polynomial")
    p.add_argument("--f", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--field", default="Q", help="Q, GF(p[,k]), Fq, or Z")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_tower)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
