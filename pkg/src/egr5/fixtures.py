"""Transcribed reference tables and the comparison against recomputed data.

``data/table1.tsv`` holds t, factored t, code, j, factored j;
``data/table2.tsv`` holds a1..a6, factored Delta, Kodaira type, f, code.
Elements use the ``a+b*e`` text form, factored values ``[+|-]e^k*2^m*(c)^p``.
"""

from __future__ import annotations

import hashlib
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources

from .curves import J1728, TwistClass, WeierstrassModel, enumerate_classes
from .hauptmodul import JFactored, JRecord, Table1Result, enumerate_table1
from .localred import KodairaType, ReductionData, ogg_f, reduce_and_normalize
from .qfield import (
    QuadInt,
    SUnitFactorization,
    parse_factored,
    parse_quad,
    s_unit_factor,
)

TABLE1_ROWS = 52
TABLE2_ROWS = 368

# sha256 of the transcribed files; a change here means the fixtures were edited
CHECKSUMS = {
    "table1.tsv": "afbe0d0a3b33e85753281925aa7994547ed7c6b4e91d8e773a59641dae30690c",
    "table2.tsv": "1bda5af954d343f9987a12b4d195d2efb6aafc13cd5127a86ceaf8e252c633ce",
}


class FixtureError(ValueError):
    pass


@dataclass(frozen=True)
class Table1Row:
    t: QuadInt
    t_factored: SUnitFactorization
    code: int
    j: QuadInt
    j_factored: JFactored


@dataclass(frozen=True)
class Table2Row:
    model: WeierstrassModel
    delta: SUnitFactorization
    type: KodairaType
    f: int
    code: int
    line: int = 0

    def key(self) -> tuple:
        d = self.delta
        return (self.code, d.sign, d.two_exp, d.eps_exp % 12, str(self.type), self.f)


def _read(name: str) -> str:
    return resources.files("egr5").joinpath("data").joinpath(name).read_text(encoding="utf-8")


def checksum(name: str) -> str:
    return hashlib.sha256(_read(name).encode("utf-8")).hexdigest()


def _rows(name: str, ncols: int):
    for lineno, line in enumerate(_read(name).splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != ncols:
            raise FixtureError(f"{name}:{lineno}: expected {ncols} columns, got {len(cols)}")
        yield lineno, cols


def _sunit(text: str, where: str) -> SUnitFactorization:
    sign, k, m, c, p = parse_factored(text)
    if c != QuadInt(1) or p != 1:
        raise FixtureError(f"{where}: {text!r} is not an S-unit")
    return SUnitFactorization(sign, k, m)


def load_table1() -> list[Table1Row]:
    rows = []
    for lineno, (t, tf, code, j, jf) in _rows("table1.tsv", 5):
        where = f"table1.tsv:{lineno}"
        try:
            t_val, j_val = parse_quad(t), parse_quad(j)
            t_f = _sunit(tf, where)
            sign, k, m, c, p = parse_factored(jf)
            j_f = JFactored(sign, k, m, c if p == 3 else QuadInt(1))
            if p not in (1, 3) or (p == 1 and c != QuadInt(1)):
                raise FixtureError(f"{where}: unexpected j factorisation {jf!r}")
            row = Table1Row(t_val, t_f, int(code), j_val, j_f)
        except ValueError as exc:
            raise FixtureError(f"{where}: {exc}") from exc
        if row.t_factored.value() != row.t:
            raise FixtureError(f"{where}: factored t does not recombine")
        if row.j_factored.value() != row.j:
            raise FixtureError(f"{where}: factored j does not recombine")
        if ((row.t + 16) ** 3).exact_div(row.t) != row.j:
            raise FixtureError(f"{where}: j != (t + 16)^3 / t")
        rows.append(row)
    if len(rows) != TABLE1_ROWS:
        raise FixtureError(f"table1.tsv: {len(rows)} rows, expected {TABLE1_ROWS}")
    return rows


def check_table2_row(row: Table2Row) -> str | None:
    """None when the row is self-consistent, else a description of the failure."""
    delta = row.model.discriminant
    if delta.is_zero():
        return "singular model"
    d = s_unit_factor(delta)
    if not d.is_s_unit():
        return f"Delta {delta} is not an S-unit"
    if (d.sign, d.two_exp, d.eps_exp % 12) != (row.delta.sign, row.delta.two_exp, row.delta.eps_exp % 12):
        return f"Delta of model is {d}, printed {row.delta}"
    if ogg_f(row.delta.two_exp, row.type) != row.f:
        return f"Ogg's formula gives f = {ogg_f(row.delta.two_exp, row.type)}, printed {row.f}"
    return None


def load_table2() -> list[Table2Row]:
    rows = []
    for lineno, cols in _rows("table2.tsv", 9):
        where = f"table2.tsv:{lineno}"
        try:
            model = WeierstrassModel.of(*(parse_quad(c) for c in cols[:5]))
            row = Table2Row(model, _sunit(cols[5], where), KodairaType.parse(cols[6]), int(cols[7]), int(cols[8]), lineno)
        except ValueError as exc:
            raise FixtureError(f"{where}: {exc}") from exc
        rows.append(row)
    if len(rows) != TABLE2_ROWS:
        raise FixtureError(f"table2.tsv: {len(rows)} rows, expected {TABLE2_ROWS}")
    return rows


def verify_checksums() -> dict[str, bool]:
    return {name: checksum(name) == want for name, want in CHECKSUMS.items()}


# rows known to be wrong in the source and excluded from comparisons
QUARANTINE: tuple[int, ...] = ()


def load_fixtures(check: bool = True) -> tuple[list[Table1Row], list[Table2Row]]:
    """Both tables; Table 2 rows failing self-validation raise FixtureError."""
    if check:
        bad = [n for n, ok in verify_checksums().items() if not ok]
        if bad:
            raise FixtureError(f"checksum mismatch: {', '.join(bad)}")
    t1, t2 = load_table1(), load_table2()
    for row in t2:
        problem = check_table2_row(row)
        if problem:
            raise FixtureError(f"table2.tsv:{row.line}: {problem}")
    return t1, t2


def code_of_j(rows: list[Table1Row]) -> dict[QuadInt, int]:
    out: dict[QuadInt, int] = {}
    for r in rows:
        if out.setdefault(r.j, r.code) != r.code:
            raise FixtureError(f"j = {r.j} carries two codes")
    return out


def tate_self_check(rows: list[Table2Row]) -> list[tuple[Table2Row, str]]:
    """Rows whose printed model, Delta, type or f Tate's algorithm does not reproduce.

    Printed models are expected to be fixed points of minimisation plus
    global normalisation, so the model itself is compared too.
    """
    quarantined = []
    for row in rows:
        data = reduce_and_normalize(row.model)
        d = data.delta_normalized
        got = (d.sign, d.two_exp, d.eps_exp % 12, str(data.type), data.f)
        want = (row.delta.sign, row.delta.two_exp, row.delta.eps_exp % 12, str(row.type), row.f)
        if got != want or data.minimal_model != row.model:
            quarantined.append((row, f"computed {got}, printed {want}"))
    return quarantined


@dataclass
class DiffReport:
    computed_only: Counter = field(default_factory=Counter)
    fixture_only: Counter = field(default_factory=Counter)

    @property
    def empty(self) -> bool:
        return not self.computed_only and not self.fixture_only

    def lines(self) -> list[str]:
        out = []
        for key, n in sorted(self.computed_only.items()):
            out.append("computed-only\t" + _key_text(key) + (f"\tx{n}" if n > 1 else ""))
        for key, n in sorted(self.fixture_only.items()):
            out.append("fixture-only\t" + _key_text(key) + (f"\tx{n}" if n > 1 else ""))
        return out


def _key_text(key: tuple) -> str:
    code, sign, m, k, kind, f = key
    return f"code={code}\tDelta={'+' if sign > 0 else '-'}e^{k}*2^{m}\t{kind}\tf={f}"


def reduction_key(code: int, data: ReductionData) -> tuple:
    return (code,) + data.invariant_key()


def compare_enumeration(
    computed: list[tuple[int, ReductionData]], fixture: list[Table2Row], quarantine=()
) -> DiffReport:
    """Multiset comparison on (code, sign Delta, v2 Delta, e-exponent mod 12, type, f)."""
    skip = {id(r) for r in quarantine}
    mine = Counter(reduction_key(code, data) for code, data in computed)
    theirs = Counter(r.key() for r in fixture if id(r) not in skip)
    return DiffReport(mine - theirs, theirs - mine)


# -- full pipeline against the fixtures ----------------------------------------------


def parallel_map(fn, items, jobs: int = 1) -> list:
    """Order-preserving map, in worker processes when jobs > 1."""
    items = list(items)
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def _reduce_model(model: WeierstrassModel) -> ReductionData:
    return reduce_and_normalize(model)


@dataclass
class PipelineRun:
    table1: Table1Result
    classes: list[TwistClass]
    reductions: list[ReductionData]

    def coded(self) -> list[tuple[int, ReductionData]]:
        return [(c.code, r) for c, r in zip(self.classes, self.reductions)]


def run_pipeline(t1_rows: list[Table1Row] | None = None, exp_bound: int = 40, jobs: int = 1) -> PipelineRun:
    if t1_rows is None:
        t1_rows = load_table1()
    table = enumerate_table1(code_of_j(t1_rows), exp_bound=exp_bound)
    classes = enumerate_classes(table)
    reductions = parallel_map(_reduce_model, [c.model for c in classes], jobs)
    return PipelineRun(table, classes, reductions)


# the count of t-values stated alongside the two tables
STATED_T_COUNT = 56


@dataclass
class VerifyReport:
    t_count: int
    j_count: int
    class_count: int
    t_computed_only: list[QuadInt]
    t_fixture_only: list[QuadInt]
    j_mismatches: list[str]
    unlisted_j: list[JRecord]
    code_count_problems: list[str]
    diff: DiffReport

    @property
    def ok(self) -> bool:
        return not (
            self.t_computed_only
            or self.t_fixture_only
            or self.j_mismatches
            or self.unlisted_j
            or self.code_count_problems
            or self.t_count != TABLE1_ROWS
            or self.j_count != 43
            or self.class_count != TABLE2_ROWS
            or not self.diff.empty
        )

    def lines(self) -> list[str]:
        out = [
            f"t: {self.t_count}, j: {self.j_count}, classes: {self.class_count}",
            f"note: {STATED_T_COUNT} t-values are stated, Table 1 lists {TABLE1_ROWS}, "
            f"{self.t_count} were computed",
        ]
        out += [f"t computed-only\t{t}\t{s_unit_factor(t)}" for t in self.t_computed_only]
        out += [f"t fixture-only\t{t}" for t in self.t_fixture_only]
        out += [f"j unlisted\tcode={r.code}\t{r.j}\t{r.factored_form}" for r in self.unlisted_j]
        out += [f"j mismatch\t{m}" for m in self.j_mismatches]
        out += [f"count\t{m}" for m in self.code_count_problems]
        out += self.diff.lines()
        out.append("verify: " + ("ok" if self.ok else "FAILED"))
        return out


def verify(run: PipelineRun, t1_rows: list[Table1Row], t2_rows: list[Table2Row]) -> VerifyReport:
    table = run.table1
    computed_t = {t.value for t in table.t_values}
    fixture_t = {r.t for r in t1_rows}
    by_code = {r.code: r for r in t1_rows}
    mismatches = []
    for rec in table.j_records:
        row = by_code.get(rec.code) if rec.in_table else None
        if row is None:
            continue
        if row.j != rec.j:
            mismatches.append(f"code={rec.code}: computed {rec.j}, printed {row.j}")
        elif row.j_factored.value() != rec.factored_form.value():
            mismatches.append(f"code={rec.code}: factored {rec.factored_form}, printed {row.j_factored}")
    counts = Counter(c.code for c in run.classes)
    problems = []
    for rec in table.j_records:
        want = 32 if rec.j == J1728 else 8
        if counts[rec.code] != want:
            problems.append(f"code={rec.code}: {counts[rec.code]} classes, expected {want}")
    quarantine = [row for row, _ in tate_self_check(t2_rows)]
    return VerifyReport(
        t_count=len(computed_t),
        j_count=len(table.j_records),
        class_count=len(run.classes),
        t_computed_only=sorted(computed_t - fixture_t, key=QuadInt.key),
        t_fixture_only=sorted(fixture_t - computed_t, key=QuadInt.key),
        j_mismatches=mismatches,
        unlisted_j=[r for r in table.j_records if not r.in_table],
        code_count_problems=problems,
        diff=compare_enumeration(run.coded(), t2_rows, quarantine),
    )
