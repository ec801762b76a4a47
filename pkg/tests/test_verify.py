"""Suite runner plumbing; the suites' content is covered by the acceptance tests."""

import pytest

from pow2comp.verify import SUITES, run_suite, run_suites


def test_suite_names_stable():
    assert SUITES == (
        "table4",
        "parity",
        "thm1",
        "eq-identities",
        "tables",
        "rg",
        "mod32",
        "asymptotics",
    )


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("nope")


def test_table4_suite_passes():
    report = run_suite("table4")
    assert report.passed
    assert all(line.startswith("[PASS]") for line in report.lines())


def test_rg_suite_passes():
    report = run_suite("rg")
    assert report.passed
    assert len(report.checks) == 8


def test_run_suites_single():
    reports = run_suites("asymptotics")
    assert len(reports) == 1
    assert reports[0].suite == "asymptotics"


def test_report_dict_shape():
    report = run_suite("table4")
    d = report.to_dict()
    assert d["suite"] == "table4"
    assert d["passed"] is True
    assert all({"name", "passed", "detail"} <= set(c) for c in d["checks"])
