import dataclasses

import pytest

from egr5 import fixtures
from egr5.curves import WeierstrassModel
from egr5.fixtures import (
    CHECKSUMS,
    FixtureError,
    check_table2_row,
    checksum,
    compare_enumeration,
    load_table1,
    load_table2,
    tate_self_check,
    verify,
)
from egr5.localred import reduce_and_normalize
from egr5.qfield import QuadInt


def test_row_counts(table1_rows, table2_rows):
    assert len(table1_rows) == 52
    assert len(table2_rows) == 368
    assert len({r.code for r in table1_rows}) == 43


def test_checksums_pinned():
    for name, digest in CHECKSUMS.items():
        assert checksum(name) == digest


def test_table1_example(table1_rows):
    row = next(r for r in table1_rows if r.t == QuadInt(-19520, 12064))
    assert row.code == 40
    assert row.j == QuadInt(525604480, -324907648)


def test_table2_example(table2_rows):
    row = next(r for r in table2_rows if r.model == WeierstrassModel.of(0, 1, 0, -9, 7))
    assert (row.delta.sign, row.delta.eps_exp, row.delta.two_exp) == (1, 0, 13)
    assert (str(row.type), row.f, row.code) == ("I2*", 7, 3)


def test_table1_rows_consistent(table1_rows):
    for r in table1_rows:
        assert ((r.t + 16) ** 3).exact_div(r.t) == r.j
        assert r.t_factored.value() == r.t
        assert r.j_factored.value() == r.j


def test_table2_self_validation(table2_rows):
    assert all(check_table2_row(r) is None for r in table2_rows)
    assert tate_self_check(table2_rows) == []
    assert fixtures.QUARANTINE == ()


def test_bad_row_reports_line(monkeypatch):
    original = fixtures._read

    def fake(name):
        text = original(name)
        lines = text.splitlines()
        lines[3] = lines[3].replace("\t", "\tbogus\t", 1)
        return "\n".join(lines)

    monkeypatch.setattr(fixtures, "_read", fake)
    with pytest.raises(FixtureError, match=r"table2\.tsv:4:"):
        load_table2()
    with pytest.raises(FixtureError, match=r"table1\.tsv:4:"):
        load_table1()


def test_inconsistent_row_detected(table2_rows):
    row = table2_rows[0]
    bad = dataclasses.replace(row, f=row.f + 1)
    assert "Ogg" in check_table2_row(bad)
    bad = dataclasses.replace(row, model=WeierstrassModel.of(0, 0, 0, -1, 0))
    assert "Delta" in check_table2_row(bad)


@pytest.fixture(scope="module")
def fixture_as_computed(table2_rows):
    return [(r.code, reduce_and_normalize(r.model)) for r in table2_rows]


def test_compare_self_is_empty(fixture_as_computed, table2_rows):
    assert compare_enumeration(fixture_as_computed, table2_rows).empty


def test_compare_dropped_class(fixture_as_computed, table2_rows):
    diff = compare_enumeration(fixture_as_computed[1:], table2_rows)
    assert sum(diff.fixture_only.values()) == 1 and not diff.computed_only


def test_compare_perturbed_f(fixture_as_computed, table2_rows):
    code, data = fixture_as_computed[0]
    changed = [(code, dataclasses.replace(data, f=data.f + 1))] + fixture_as_computed[1:]
    diff = compare_enumeration(changed, table2_rows)
    assert sum(diff.fixture_only.values()) == 1 and sum(diff.computed_only.values()) == 1
    assert len(diff.lines()) == 2


def test_pipeline_diff_is_exactly_the_unlisted_codes(pipeline, table1_rows, table2_rows):
    report = verify(pipeline, table1_rows, table2_rows)
    assert not report.diff.fixture_only
    assert sum(report.diff.computed_only.values()) == 16
    assert {key[0] for key in report.diff.computed_only} == {44, 45}
    assert {key[4] for key in report.diff.computed_only} == {"III", "III*"}
    assert {key[5] for key in report.diff.computed_only} == {8}
    assert not report.j_mismatches and not report.t_fixture_only
    assert not report.code_count_problems
    lines = report.lines()
    assert lines[0] == "t: 54, j: 45, classes: 384"
    assert "56" in lines[1]
    assert lines[-1] == "verify: FAILED"
