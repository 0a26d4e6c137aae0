import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from mplog.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("argv,golden", [
    (["reduce", "--n", "3"], "reduce_n3_quotient.json"),
    (["reduce", "--n", "4"], "reduce_n4_quotient.json"),
    (["reduce", "--n", "3", "--mode", "exact"], "reduce_n3_exact.json"),
    (["relations", "--kind", "marker-swap", "--symbol", "H(a0|a1,a2,a3//x|e)"], "marker_swap_n3.json"),
])
def test_golden_files_byte_identical(capsys, argv, golden):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out.encode("utf-8") == (GOLDEN / golden).read_bytes()


def test_golden_is_stable_across_hash_seeds(tmp_path):
    outs = []
    for seed in ("1", "987"):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        r = subprocess.run([sys.executable, "-m", "mplog", "reduce", "--n", "3"], capture_output=True, env=env)
        assert r.returncode == 0
        outs.append(r.stdout)
    assert outs[0] == outs[1] == (GOLDEN / "reduce_n3_quotient.json").read_bytes()


def test_reduce_with_points_reports_variable_count(capsys):
    code, out, err = run(capsys, "reduce", "--n", "4", "--points", "a,b,c,d,e,f", "--mode", "quotient")
    assert code == 0
    assert "max variable count 2" in err
    assert json.loads(out)["leading_coeff"] == "2"


def test_reduce_odd(capsys):
    code, out, _ = run(capsys, "reduce", "--n", "3", "--odd")
    assert code == 0 and json.loads(out)["leading_coeff"] == "1"


def test_verify_golden_identity_passes(capsys):
    code, out, _ = run(capsys, "verify", str(GOLDEN / "marker_swap_n3.json"), "--trials", "20")
    assert code == 0 and out.startswith("PASS")


def test_verify_exact_reduction_passes(capsys, tmp_path):
    report = tmp_path / "rep.json"
    code, out, _ = run(capsys, "verify", str(GOLDEN / "reduce_n3_exact.json"), "--trials", "5",
                       "--report", str(report))
    assert code == 0
    rep = json.loads(report.read_text())
    assert rep["passed"] and rep["regularized"] and rep["eps_sequence"] == [1e-2, 1e-3, 1e-4]


def test_verify_corrupted_golden_fails(capsys, tmp_path):
    obj = json.loads((GOLDEN / "marker_swap_n3.json").read_text())
    obj["terms"][0]["coeff"] = "2"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(obj))
    code, out, _ = run(capsys, "verify", str(bad), "--trials", "3")
    assert code == 1 and out.startswith("FAIL")


def test_verify_quotient_file_rejected(capsys):
    code, _, err = run(capsys, "verify", str(GOLDEN / "reduce_n3_quotient.json"))
    assert code == 2 and "quotient" in err


def test_eval_values(capsys):
    code, out, _ = run(capsys, "eval", "--expr", "H(0|1,0|1/2)")
    assert code == 0 and out.startswith("-0.5822405265")
    code, out, _ = run(capsys, "eval", "--expr", "H(0|2|1)")
    assert code == 0 and out.startswith("-0.6931471806")
    code, out, _ = run(capsys, "eval", "--expr", "H(0|x|1)", "--at", "x=3", "--digits", "6")
    assert code == 0 and out.startswith("-0.405465")


def test_phi_report(capsys):
    code, out, err = run(capsys, "phi", "--compare-reference")
    assert code == 0
    obj = json.loads(out)
    assert obj["reference_term_count"] == 42 and "comparison" in obj
    assert "reference terms: 42" in err
    code2, out2, _ = run(capsys, "phi", "--compare-reference", "--seed", "3")
    assert out2 == out
    code3, out3, _ = run(capsys, "phi")
    assert "comparison" not in json.loads(out3)


@pytest.mark.parametrize("argv,code", [
    (["reduce", "--n", "2"], 2),
    (["reduce", "--n", "3", "--points", "a,b,c"], 2),
    (["reduce", "--n", "3", "--points", "a,b,b,d,e"], 2),
    (["reduce", "--n", "4", "--odd"], 2),
    (["verify", "/nonexistent/file.json"], 2),
    (["eval", "--expr", "H(0|2"], 2),
    (["eval", "--expr", "H(0|x|1)"], 2),
    (["eval", "--expr", "H(0|1,0,1|1)"], 1),
    (["phi", "--points", "a,b,c"], 2),
    (["relations", "--kind", "shuffle", "--symbol", "H(a|b|c)"], 2),
    (["relations", "--kind", "marker-change", "--symbol", "H(a|b//x|c)", "--y", "a"], 2),
    (["relations", "--kind", "chen", "--symbol", "H(a|b|c)", "--y", "m"], 0),
    (["nosuchcommand"], 2),
])
def test_exit_code_matrix(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_relations_then_verify(capsys, tmp_path):
    for kind, extra in [("shuffle", ["--other", "H(a|d,f//x|c)"]), ("antipode", []), ("reverse", []),
                        ("two-term", ["--y", "m"]), ("transposition", ["--i", "1", "--j", "3"]),
                        ("D", ["--i", "2"]), ("block-shuffle", [])]:
        path = tmp_path / f"{kind}.json"
        code, _, _ = run(capsys, "relations", "--kind", kind, "--symbol", "H(a|b,e,g//x|c)", *extra,
                         "--out", str(path))
        assert code == 0, kind
        code, out, _ = run(capsys, "verify", str(path), "--trials", "5")
        assert code == 0, (kind, out)


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "mplog", "eval", "--expr", "H(0|2|1)"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.startswith("-0.6931471806")
