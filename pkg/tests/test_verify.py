import json

import pytest

from schrodinger_mop.verify import SUITES, VerificationReport, run_suite


@pytest.mark.parametrize("suite", sorted(SUITES))
def test_suite_passes_at_default_tol(suite):
    report = run_suite(suite)
    assert report.passed, [(c.name, c.residual, c.tol) for c in report.failures()]
    assert all(c.suite == suite for c in report.checks)


def test_report_json_roundtrip():
    report = run_suite("difference")
    doc = json.loads(report.to_json())
    assert doc["passed"] and doc["suite"] == "difference"
    assert doc["conventions"]["block_b00"].startswith("B_n(0,0)")
    assert len(doc["checks"]) == len(report.checks)


def test_informational_checks_do_not_fail():
    report = run_suite("unitarity")
    printed = [c for c in report.checks if c.name == "unitarity_printed_b00"]
    assert printed and printed[0].informational and not printed[0].passed
    assert report.passed


def test_tolerance_scales_checks():
    report = run_suite("ladder", tol=1e-20)
    assert not report.passed
    assert all(c.tol < 1e-18 for c in report.checks)


def test_bad_arguments():
    with pytest.raises(ValueError):
        run_suite("everything")
    with pytest.raises(ValueError):
        run_suite("ladder", tol=0)
    assert VerificationReport("x", 1e-8).passed
