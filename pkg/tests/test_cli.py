import json
import subprocess
import sys

import pytest

from resolvere.cli import main
from resolvere.corpus import data_text


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return write


def test_replay_faithful(capsys):
    code, out, _ = run(capsys, "replay-goedel", "--variant", "faithful")
    assert code == 0
    for label in ("c39", "c40", "c41", "c42", "c44", "c45", "c46", "c49", "EMPTY CLAUSE"):
        assert label in out
    assert out.rstrip().endswith("replay: ok")


def test_replay_rederived(capsys):
    code, out, _ = run(capsys, "replay-goedel", "--variant", "rederived")
    assert code == 0 and "sk1(forall_r)" in out


def test_ablate(capsys):
    code, out, _ = run(capsys, "ablate-goedel")
    assert code == 0 and "not derived" in out and "satisfies" in out


def test_expand_even(capsys):
    code, out, _ = run(capsys, "expand-induction", "--pred", "even", "--base", "0", "--step", "s(s(X))", "--depth", "2", "--check")
    assert code == 0
    assert "domain: {0, s(s(0)), s(s(s(s(0))))}" in out
    assert "equivalent: true" in out


def test_expand_budget(capsys):
    code, _, err = run(capsys, "expand-induction", "--pred", "p", "--base", "0", "--step", "s(X)", "--depth", "30", "--check")
    assert code == 2 and "budget" in err


def test_expand_bad_template(capsys):
    code, _, err = run(capsys, "expand-induction", "--pred", "p", "--base", "0", "--step", "s(0)", "--depth", "2")
    assert code == 64 and err


def test_prove_empty_problem(capsys, files):
    code, out, _ = run(capsys, "prove", files("empty.p", ""))
    assert code == 1
    assert json.loads(out)["result"] == "saturated"


def test_prove_verify_round_trip(capsys, files, tmp_path):
    prob = files("s.p", data_text("goedel_S_faithful.p") + "formula(goal, conjecture, ~bew(forall_r)).\n")
    trace = str(tmp_path / "t.json")
    code, out, err = run(capsys, "prove", prob, "--trace-out", trace)
    assert code == 0 and "refutation" in err
    assert json.loads(out) == json.load(open(trace))
    first = open(trace).read()
    run(capsys, "prove", prob, "--trace-out", trace)
    assert open(trace).read() == first  # byte-identical
    code, out, _ = run(capsys, "verify", trace, prob)
    assert code == 0 and out.startswith("ok")


def test_verify_rejects_tampering(capsys, files, tmp_path):
    prob = files("o.p", data_text("goedel_omega.p"))
    trace = str(tmp_path / "t.json")
    assert run(capsys, "prove", prob, "--trace-out", trace)[0] == 0
    doc = json.load(open(trace))
    step = next(s for s in doc["steps"] if s["rule"] == "resolve")
    step["clause"] = "bew(n)"
    bad = files("bad.json", json.dumps(doc))
    code, _, err = run(capsys, "verify", bad, prob)
    assert code == 1 and "rejected" in err


def test_prove_pretty_and_options(capsys, files):
    prob = files("o.p", data_text("goedel_omega.p"))
    code, out, _ = run(capsys, "prove", prob, "--pretty", "--no-subsumption")
    assert code == 0 and out.startswith("% refutation")
    code, _, _ = run(capsys, "prove", prob, "--max-clauses", "5")
    assert code == 2


def test_clausify(capsys, files):
    code, out, _ = run(capsys, "clausify", files("f.p", "formula(d, axiom, ![X]: (bew(X) <=> ?[Y]: b(Y, X)))."))
    assert code == 0
    assert out == "clause(d_1, ~bew(X) | b(sk1(X), X)).\nclause(d_2, bew(X) | ~b(Y, X)).\n"


def test_check_model(capsys, files):
    model = files("m.p", "model(bew, head(0, r)).\nmodel(b, head(0, n) & head(1, r)).\n")
    code, out, _ = run(capsys, "check-model", model, files("s.p", data_text("goedel_S_faithful.p")), "--depth", "3")
    assert code == 0
    false_model = files("f.p", "model(bew, false).\nmodel(b, false).\n")
    code, out, _ = run(capsys, "check-model", false_model, files("s2.p", data_text("goedel_S_faithful.p")), "--depth", "1")
    assert code == 1 and out.startswith("counterexample: b(")


def test_usage_errors(capsys):
    assert run(capsys, )[0] == 64
    assert run(capsys, "frobnicate")[0] == 64
    assert run(capsys, "prove")[0] == 64
    assert run(capsys, "prove", "x.p", "--max-clauses", "0")[0] == 64
    assert run(capsys, "replay-goedel", "--variant", "other")[0] == 64


def test_file_errors(capsys, files, tmp_path):
    code, out, err = run(capsys, "prove", str(tmp_path / "missing.p"))
    assert code == 65 and not out and "cannot read" in err
    code, _, err = run(capsys, "prove", files("bad.p", "clause(a, p(X) | )."))
    assert code == 65 and ":1:" in err
    code, _, _ = run(capsys, "verify", files("t.json", "{not json"), files("e.p", ""))
    assert code == 65


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "resolvere", "expand-induction", "--pred", "p", "--base", "0", "--step", "s(X)", "--depth", "1"],
        capture_output=True,
        text=True,
    )
    assert out.returncode == 0 and "p(s(0))" in out.stdout and not out.stderr
