"""Command-line front end: rank tables, relation dumps, identity suites, numerics."""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from importlib import resources

from . import relations as rel
from . import seqnum as sq
from . import suites
from .algebra import in_A0, word_parse

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def load_fixture() -> dict:
    with resources.files("mlvrel").joinpath("data/appendix.json").open() as fh:
        return json.load(fh)


def expected_cell(fixture, family, r, N):
    """Published value for a cell, or None if the cell is not tabulated."""
    tab = fixture["tables"].get(str(r))
    if tab is None or N not in tab["weights"]:
        return None
    return tab[family][tab["weights"].index(N)]


def expected_count(fixture, r, N):
    tab = fixture["tables"].get(str(r))
    if tab is None or N not in tab["weights"]:
        return None
    return tab["count"][tab["weights"].index(N)]


def parse_weights(text: str) -> list[int]:
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"weights must look like A..B, got {text!r}")
    if lo < 3 or hi < lo:
        raise UsageError("weights must satisfy 3 <= A <= B")
    return list(range(lo, hi + 1))


def families(arg: str) -> list[str]:
    return list(rel.FAMILIES) if arg == "all" else [arg]


def parse_z(text: str):
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError):
        try:
            return float(text)
        except ValueError:
            raise UsageError(f"cannot read z={text!r}")
    return v


def emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------- commands

def cmd_tables(a) -> int:
    weights = parse_weights(a.weights)
    fams = families(a.family)
    workers = a.workers if a.workers is not None else (os.cpu_count() or 1)
    cells = rel.table(a.r, weights, fams, force=a.force, workers=workers)
    emit(rel.table_csv(cells) if a.format == "csv" else rel.table_json(cells), a.out)
    if not a.check:
        return EXIT_OK
    fixture = load_fixture()
    bad = 0
    for c in cells:
        want = expected_cell(fixture, c.family, c.r, c.weight)
        count = expected_count(fixture, c.r, c.weight)
        if want is None:
            print(f"check {c.family} r={c.r} N={c.weight}: no published value", file=sys.stderr)
            continue
        ok = want == c.rank and count == c.basis_count
        bad += not ok
        print(f"check {c.family} r={c.r} N={c.weight}: rank {c.rank} vs {want}, "
              f"count {c.basis_count} vs {count} {'ok' if ok else 'MISMATCH'}", file=sys.stderr)
    return EXIT_MISMATCH if bad else EXIT_OK


def cmd_relations(a) -> int:
    if a.weight < 3:
        raise UsageError("weight must be at least 3")
    fams = families(a.family)
    dumps = []
    for f in fams:
        m = rel.GENERATORS[f](a.r, a.weight, force=a.force)
        k = rel.rank(m)
        print(f"{f} r={a.r} N={a.weight}: {len(m.rows)} rows, {k} independent, "
              f"{len(m.basis)} basis words", file=sys.stderr)
        d = m.to_json()
        d["rank"] = k
        dumps.append(d)
    body = dumps[0] if len(dumps) == 1 else dumps
    emit(json.dumps(body, indent=1) + "\n", a.out)
    return EXIT_OK


def cmd_verify(a) -> int:
    try:
        names = suites.suite_names(a.suite)
    except ValueError as e:
        raise UsageError(str(e))
    if a.cases < 1:
        raise UsageError("--cases must be positive")
    rep = suites.run(names, a.cases, a.seed)
    if a.format == "json":
        body = json.dumps([t.__dict__ | {"ok": t.ok} for t in rep.tallies], indent=1) + "\n"
    else:
        body = "\n".join(rep.lines()) + "\n"
    emit(body, a.out)
    return EXIT_OK if rep.ok else EXIT_MISMATCH


def _word(text, r):
    try:
        return word_parse(text, r)
    except ValueError as e:
        raise UsageError(str(e))


def cmd_eval(a) -> int:
    w = _word(a.word, a.r)
    if not in_A0(w) or not w:
        raise UsageError(f"{a.word!r} is not admissible")
    try:
        est = sq.mlv_numeric(w, a.m, a.accel.upper())
    except ValueError as e:
        raise UsageError(str(e))
    emit(json.dumps(est.to_json()) + "\n", a.out)
    return EXIT_OK


def cmd_newton(a) -> int:
    w = _word(a.word, a.r)
    if not w:
        raise UsageError("empty word")
    try:
        w = sq.as_num(w)
    except ValueError:
        raise UsageError("Newton series need labels +1 or -1 (use --r 1 or --r 2)")
    if a.terms < 1:
        raise UsageError("--terms must be positive")
    z = parse_z(a.z)
    est = sq.newton_eval(w, z, a.terms, a.kind.upper(), a.variant.upper(), a.accel.upper())
    emit(json.dumps(est.to_json()) + "\n", a.out)
    return EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    def global_flags(suppress):
        g = argparse.ArgumentParser(add_help=False)
        d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
        g.add_argument("--r", type=int, default=d(1), help="root-of-unity order")
        g.add_argument("--seed", type=int, default=d(0))
        g.add_argument("--format", choices=("csv", "json"), default=d("csv"))
        g.add_argument("--out", default=d(None), help="write output to this file")
        return g

    # flags may come before or after the subcommand; the subcommand copies
    # only override when actually given
    common = global_flags(True)
    p = argparse.ArgumentParser(prog="mlvrel", parents=[global_flags(False)],
                                description="Relations among multiple L-values at roots of unity.")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("tables", parents=[common], help="rank table of the relation families")
    t.add_argument("--weights", default="3..6")
    t.add_argument("--family", choices=("deriv", "ext", "lin", "all"), default="all")
    t.add_argument("--check", action="store_true", help="compare with the bundled published cells")
    t.add_argument("--force", action="store_true", help="ignore resource caps")
    t.add_argument("--workers", type=int, default=None)
    t.set_defaults(fn=cmd_tables)

    r = sub.add_parser("relations", parents=[common], help="dump a relation matrix as JSON")
    r.add_argument("--weight", type=int, required=True)
    r.add_argument("--family", choices=("deriv", "ext", "lin", "all"), default="lin")
    r.add_argument("--force", action="store_true")
    r.set_defaults(fn=cmd_relations)

    v = sub.add_parser("verify", parents=[common], help="run randomized exact identity suites")
    v.add_argument("--suite", default="all", choices=suites.SUITES + ("all",))
    v.add_argument("--cases", type=int, default=20)
    v.set_defaults(fn=cmd_verify)

    e = sub.add_parser("eval", parents=[common], help="numeric multiple L-value")
    e.add_argument("--word", required=True, help="index set k1:e1,k2:e2,...")
    e.add_argument("--m", type=int, default=1_000_000)
    e.add_argument("--accel", choices=("aitken", "none"), default="aitken")
    e.set_defaults(fn=cmd_eval)

    n = sub.add_parser("newton", parents=[common], help="Newton series of a truncated sum")
    n.add_argument("--word", required=True)
    n.add_argument("--z", required=True)
    n.add_argument("--terms", type=int, default=2000)
    n.add_argument("--kind", choices=("ast", "sh"), default="ast")
    n.add_argument("--variant", choices=("equal", "leq"), default="equal")
    n.add_argument("--accel", choices=("aitken", "none"), default="aitken")
    n.set_defaults(fn=cmd_newton)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    if a.r < 1:
        parser.error("--r must be positive")
    try:
        return a.fn(a)
    except UsageError as e:
        print(f"mlvrel: {e}", file=sys.stderr)
        return EXIT_USAGE
    except rel.ResourceCap as e:
        print(f"mlvrel: {e} (pass --force to run anyway)", file=sys.stderr)
        return EXIT_CAP
    except ValueError as e:
        print(f"mlvrel: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
