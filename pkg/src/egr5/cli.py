"""Command-line front end: ``egr5 {solve,hauptmodul,enumerate,tate,verify}``."""

from __future__ import annotations

import argparse
import json
import sys

from .curves import SingularCurve, WeierstrassModel
from .diophantine import Family, solve_unit_equation
from .fixtures import (
    FixtureError,
    load_fixtures,
    load_table1,
    parallel_map,
    run_pipeline,
    verify,
)
from .hauptmodul import PipelineError
from .localred import reduce_and_normalize
from .qfield import NotDivisible, format_quad

DEFAULT_BOUND = 40


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("tsv", "json-lines"), default="tsv")
    common.add_argument("--jobs", type=int, default=1, metavar="N")
    common.add_argument("--bound", type=int, default=DEFAULT_BOUND, metavar="B", help="unit exponent search bound")

    p = _Parser(prog="egr5", description="Elliptic curves over Q(sqrt 5) with good reduction away from 2.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    s = sub.add_parser("solve", parents=[common], help="unit-equation solution orbits")
    s.add_argument("--family", choices=[f.value for f in Family], help="default: all families")
    sub.add_parser("hauptmodul", parents=[common], help="t-values and j-invariants")
    sub.add_parser("enumerate", parents=[common], help="all isomorphism classes with reduction data")
    t = sub.add_parser("tate", parents=[common], help="reduction data of one curve at 2")
    t.add_argument("--curve", required=True, metavar='"a1,a2,a3,a4,a6"')
    sub.add_parser("verify", parents=[common], help="full pipeline against the reference tables")
    return p


class _Out:
    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def row(self, **fields) -> None:
        if self.fmt == "json-lines":
            print(json.dumps(fields, ensure_ascii=False), file=self.stream)
        else:
            print("\t".join(str(v) for v in fields.values()), file=self.stream)


def _solve_one(args: tuple[str, int]):
    family, bound = args
    return solve_unit_equation(family, exp_bound=bound)


def cmd_solve(opts, out: _Out) -> int:
    families = [opts.family] if opts.family else [f.value for f in Family]
    for orbits in parallel_map(_solve_one, [(f, opts.bound) for f in families], opts.jobs):
        for o in orbits:
            s = o.canonical
            out.row(family=s.family.value, a=s.a, u=format_quad(s.u), v=format_quad(s.v), x=format_quad(s.x))
    return 0


def cmd_hauptmodul(opts, out: _Out) -> int:
    run = run_pipeline(load_table1(), exp_bound=opts.bound, jobs=1)
    table = run.table1
    by_code = {r.code: r for r in table.j_records}
    for t in table.t_values:
        rec = by_code[table.t_to_code[t.value]]
        out.row(t=format_quad(t.value), t_factored=str(t.factored), code=rec.code, j=format_quad(rec.j), j_factored=str(rec.factored_form))
    return 0


def cmd_enumerate(opts, out: _Out) -> int:
    run = run_pipeline(load_table1(), exp_bound=opts.bound, jobs=opts.jobs)
    for cls, data in zip(run.classes, run.reductions):
        m = data.minimal_model
        out.row(
            code=cls.code,
            a1=format_quad(m.a1), a2=format_quad(m.a2), a3=format_quad(m.a3), a4=format_quad(m.a4), a6=format_quad(m.a6),
            delta=str(data.delta_normalized), type=str(data.type), f=data.f,
        )
    return 0


def cmd_tate(opts, out: _Out) -> int:
    try:
        E = WeierstrassModel.parse(opts.curve)
    except ValueError as exc:
        print(f"egr5: error: bad --curve: {exc}", file=sys.stderr)
        return 2
    if E.is_singular():
        print(f"egr5: error: singular curve {E}", file=sys.stderr)
        return 2
    data = reduce_and_normalize(E)
    if out.fmt == "json-lines":
        out.row(model=str(data.minimal_model), delta=str(data.delta_normalized), type=str(data.type), m=data.m, f=data.f)
    else:
        print(f"{data.type}, m={data.m}, f={data.f}, Δ={data.delta_normalized}", file=out.stream)
        print(f"minimal model: {data.minimal_model}", file=out.stream)
    return 0


def cmd_verify(opts, out: _Out) -> int:
    t1, t2 = load_fixtures()
    report = verify(run_pipeline(t1, exp_bound=opts.bound, jobs=opts.jobs), t1, t2)
    if out.fmt == "json-lines":
        out.row(
            t=report.t_count, j=report.j_count, classes=report.class_count, ok=report.ok,
            lines=report.lines(),
        )
    else:
        for line in report.lines():
            print(line, file=out.stream)
    return 0 if report.ok else 1


COMMANDS = {
    "solve": cmd_solve,
    "hauptmodul": cmd_hauptmodul,
    "enumerate": cmd_enumerate,
    "tate": cmd_tate,
    "verify": cmd_verify,
}


def run(argv: list[str] | None = None, stream=None) -> int:
    try:
        opts = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if opts.jobs < 1:
        print("egr5: error: --jobs must be at least 1", file=sys.stderr)
        return 2
    if opts.bound < 14:
        print("egr5: error: --bound must be at least 14", file=sys.stderr)
        return 2
    try:
        return COMMANDS[opts.command](opts, _Out(opts.format, stream))
    except (PipelineError, FixtureError, NotDivisible, SingularCurve) as exc:
        print(f"egr5: internal inconsistency: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run())
