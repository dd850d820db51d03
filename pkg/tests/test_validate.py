"""Report-format contract for the validation suites: record key order,
absolute-tolerance semantics, JSON round trip, and the canonical payload
used for cross-run comparison.
"""

import json

import pytest

from tplab import validate


def test_check_record_dict_keys_in_order():
    rec = validate.CheckRecord("x", 1.0, 1.0, 0.0, True, "analytic identity")
    assert list(rec.as_dict()) == [
        "check_id", "expected", "actual", "tolerance", "passed",
        "provenance"]


def test_specfun_suite_passes_and_serializes():
    rep = validate.run_suite("specfun")
    assert rep.suite == "specfun"
    assert rep.passed
    assert len(rep.checks) >= 10
    doc = json.loads(rep.to_json())
    assert list(doc) == ["suite", "config", "checks", "passed",
                         "wall_clock_seconds"]
    assert doc["passed"] is True
    assert doc["config"]["suite"] == "specfun"
    assert all(c["check_id"] for c in doc["checks"])


@pytest.mark.parametrize("suite", ("identities", "scaling"))
def test_fast_suites_pass_with_absolute_tolerance_semantics(suite):
    rep = validate.run_suite(suite)
    assert rep.passed
    for c in rep.checks:
        assert c.passed == (abs(c.actual - c.expected) <= c.tolerance)
        assert c.tolerance >= 0.0


def test_canonical_payload_ignores_wall_clock():
    a = validate.run_suite("identities")
    b = validate.run_suite("identities")
    assert a.canonical_payload() == b.canonical_payload()
    assert "wall_clock_seconds" not in json.dumps(a.canonical_payload())


def test_config_echo_is_embedded_verbatim():
    echo = {"suite": "scaling", "who": "tester"}
    rep = validate.run_suite("scaling", config_echo=echo)
    assert rep.config == echo


def test_unknown_suite_rejected():
    with pytest.raises(ValueError):
        validate.run_suite("everything")
