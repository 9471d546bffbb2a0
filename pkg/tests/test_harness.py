import json

import pytest

from gpjt import harness
from gpjt.grothendieck import default_context, factorial_power
from gpjt.harness import Check, VerificationReport, compare, verify_corollary, verify_proof_suite, verify_theorem
from gpjt.ring import RingContext


def test_theorem_single_variable():
    report = verify_theorem(1, (3,))
    assert report.ok
    ctx = default_context(1, (3,))
    expect = factorial_power(ctx, ctx.x(1), 3)
    for m in harness.METHODS:
        assert report.values[m] == expect


def test_theorem_two_variables():
    report = verify_theorem(2, (1, 0))
    assert report.ok
    names = [c.name for c in report.checks]
    assert names[:3] == ["theorem.hm=bialternant", "theorem.himn=bialternant", "theorem.hm=himn"]
    assert sum(n.startswith("stabilization.") for n in names) == 3


def test_theorem_invalid_index_vector_is_reported():
    report = verify_theorem(2, (0, -1))
    assert not report.ok
    assert report.errors and "a_2 + d - 2 = -1 < 0" in report.errors[0]
    assert report.checks == []


def test_theorem_partition_only():
    assert verify_theorem(2, (-1, 0)).ok
    assert verify_theorem(2, (-1, 0), partition_only=True).errors


def test_proof_suite_two_variables():
    report = verify_proof_suite(2, 2, 4)
    assert report.ok, [c.to_json() for c in report.failures]
    assert len(report.checks) >= 40
    names = {c.name for c in report.checks}
    assert {"eq4.series", "eq5.coefficient", "eq6.series", "eq7.coefficient", "detM.vandermonde",
            "detMbar.evaluation", "HM.entries", "HprimeMbar.entries", "binomial.convolution"} <= names


def test_proof_suite_degenerate():
    report = verify_proof_suite(1, 0, 0)
    assert report.ok
    assert report.checks


def test_proof_suite_bad_parameters():
    assert verify_proof_suite(0, 1, 1).errors


def test_corollary():
    for d in (1, 2):
        for k in range(3):
            assert verify_corollary(d, k).ok


def test_failure_carries_first_differing_monomial():
    ctx = RingContext(2, 0, 2)
    x1, x2 = ctx.x(1), ctx.x(2)
    check = compare("demo", {}, x1 + 2 * x2**2, x1 + 3 * x2**2 + x1**3)
    assert not check.passed
    assert check.witness == {"monomial": "x2^2", "lhs": "2", "rhs": "3"}
    assert compare("demo", {}, x1, x1).witness is None


def test_constant_witness():
    ctx = RingContext(1, 0, 1)
    check = compare("demo", {}, ctx.const(1), ctx.const(2))
    assert check.witness["monomial"] == "1"


def test_report_json_round_trip():
    report = verify_theorem(2, (1, 0))
    report.add(compare("demo", {"k": 1}, report.values["hm"], report.values["hm"] + 1))
    text = report.dumps()
    assert VerificationReport.loads(text).dumps() == text
    obj = json.loads(text)
    assert obj["passed"] is False
    assert obj["context"] == {"d": 2, "B": 2, "N": 3}
    assert obj["checks"][-1]["status"] == "fail" and "witness" in obj["checks"][-1]


def test_sweep_is_reproducible_under_parallelism():
    serial = harness.verify_theorem_sweep(2, 2, stabilize=False, workers=1)
    parallel = harness.verify_theorem_sweep(2, 2, stabilize=False, workers=2)
    assert serial.ok
    assert serial.dumps() == parallel.dumps()


def test_worker_count(monkeypatch):
    monkeypatch.delenv("GPJT_THREADS", raising=False)
    assert harness.worker_count() == 1
    monkeypatch.setenv("GPJT_THREADS", "3")
    assert harness.worker_count() == 3
    monkeypatch.setenv("GPJT_THREADS", "zero")
    assert harness.worker_count() == 1


def test_compute_unknown_method():
    with pytest.raises(ValueError):
        harness.compute(RingContext(1, 0, 0), (0,), "leibniz")
