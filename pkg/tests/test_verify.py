import json

import pytest

from niltl.verify import CHECK_NAMES, all_passed, run_check, verify_suite


def by_name(results):
    return {r.check_name: r for r in results}


def test_full_suite_n2():
    results = verify_suite(2, "full")
    assert [r.check_name for r in results] == CHECK_NAMES
    assert all(r.status == "pass" for r in results), [r.to_json() for r in results if r.status != "pass"]
    assert all_passed(results)


def test_standard_suite_n3():
    results = verify_suite(3, "standard")
    assert all(r.status == "pass" for r in results), [r.to_json() for r in results if r.status != "pass"]


def test_fault_mode_breaks_only_the_oracle():
    results = by_name(verify_suite(2, "quick", fault=True))
    failed = [name for name, r in results.items() if r.status == "fail"]
    assert failed == ["oracle_agreement"]
    assert results["oracle_agreement"].witness["word"] == [0, 1, 0]
    assert not all_passed(list(results.values()))


def test_large_rank_skips_budget_limited_checks():
    results = by_name(verify_suite(4, "quick", only=["window", "valuation_stabilizes", "q_matrix"]))
    assert results["window"].status == "skip"
    assert results["valuation_stabilizes"].status == "skip"
    assert results["q_matrix"].status == "pass"
    assert all_passed(list(results.values()))


def test_report_shape():
    doc = run_check("surjectivity", 2).to_json()
    assert set(doc) == {"check_name", "paper_ref", "status", "witness", "seconds"}
    assert doc["status"] == "pass"
    # minimal r for E(+-, ++) is 2
    assert doc["witness"]["minimal_r"]["+-,++"] == 2
    json.dumps(doc)


def test_unknown_check_and_level():
    with pytest.raises(KeyError):
        run_check("nope", 2)
    with pytest.raises(ValueError):
        verify_suite(2, "extreme")
