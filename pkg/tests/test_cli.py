import json
import subprocess
import sys

import pytest

from gpjt import cli, harness
from gpjt.ring import loads, parse, RingContext


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compute_text(capsys):
    code, out, _ = run(["compute", "--d", "1", "--lambda", "2", "--method", "bialternant", "--format", "text"], capsys)
    assert code == 0
    expect = (
        "1*x1^2 + 1*x1*b1 + 1*x1*b2 + 1*b1*b2 + 1*x1^2*b1*beta + 1*x1^2*b2*beta"
        " + 2*x1*b1*b2*beta + 1*x1^2*b1*b2*beta^2"
    )
    assert out.strip() == expect


@pytest.mark.parametrize("method", ["bialternant", "hm", "himn"])
def test_compute_json_methods_agree(capsys, method):
    code, out, _ = run(["compute", "--d", "2", "--lambda", "1,0", "--method", method, "--format", "json"], capsys)
    assert code == 0
    p = loads(out)
    assert (p.ctx.d, p.ctx.B, p.ctx.N) == (2, 2, 3)
    from gpjt.ring import dumps

    assert dumps(p) == out.strip()


def test_compute_index_vector_and_trunc(capsys):
    code, out, _ = run(["compute", "--d", "2", "--a", "-1,1", "--beta-trunc", "1"], capsys)
    assert code == 0
    ctx = RingContext(2, 1, 1)
    assert parse(ctx, out.strip()).ctx == ctx


def test_coeff(capsys):
    code, out, _ = run(["coeff", "--d", "1", "--k", "0", "--m", "1"], capsys)
    assert code == 0 and out.strip() == "1*x1"
    code, out, _ = run(["coeff", "--d", "1", "--k", "0", "--m", "-1", "--format", "json"], capsys)
    assert code == 0 and json.loads(out)["terms"][0]["coeff"] == "-1"


@pytest.mark.parametrize(
    "argv",
    [
        ["compute", "--d", "0", "--lambda", "1"],
        ["compute", "--d", "2", "--lambda", "1,2"],
        ["compute", "--d", "2"],
        ["compute", "--d", "2", "--lambda", "1", "--a", "1,0"],
        ["compute", "--d", "2", "--lambda", "x"],
        ["compute", "--d", "2", "--lambda", "1", "--beta-trunc", "-1"],
        ["coeff", "--d", "1", "--k", "-1", "--m", "0"],
        ["verify", "theorem", "--d", "2", "--a", "0,-1"],
        ["verify", "theorem", "--d", "0", "--lambda", "1"],
        ["verify", "proofs", "--d", "2", "--k-max", "1"],
        ["verify", "proofs", "--d", "0", "--k-max", "1", "--beta-trunc", "2"],
        ["frobnicate"],
        [],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(argv, capsys)
    assert code == 2
    assert err


def test_verify_theorem_exit_0(capsys):
    code, out, _ = run(["verify", "theorem", "--d", "2", "--lambda", "1,0"], capsys)
    assert code == 0
    assert out.strip().endswith("6/6 checks passed")


def test_verify_sweep_and_proofs(capsys):
    code, _, _ = run(["verify", "theorem", "--d", "2", "--all-up-to", "1", "--no-stabilize"], capsys)
    assert code == 0
    code, out, _ = run(["verify", "proofs", "--d", "2", "--k-max", "1", "--beta-trunc", "3", "--format", "json"], capsys)
    assert code == 0 and json.loads(out)["passed"] is True


def test_failure_exit_1(capsys, monkeypatch):
    real = harness.compute

    def broken(ctx, a, method):
        p = real(ctx, a, method)
        return p + 1 if method == "hm" else p

    monkeypatch.setattr(harness, "compute", broken)
    code, out, _ = run(["verify", "theorem", "--d", "2", "--lambda", "1,0", "--format", "json"], capsys)
    assert code == 1
    failed = [c for c in json.loads(out)["checks"] if c["status"] == "fail"]
    assert failed and all("witness" in c for c in failed)


def test_out_file(tmp_path, capsys):
    target = tmp_path / "g.json"
    code, out, _ = run(["compute", "--d", "1", "--lambda", "1", "--format", "json", "--out", str(target)], capsys)
    assert code == 0 and out == ""
    assert loads(target.read_text()).ctx == RingContext(1, 1, 1)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "gpjt", "compute", "--d", "0", "--lambda", "1"], capture_output=True, text=True
    )
    assert proc.returncode == 2
    assert "error" in proc.stderr
