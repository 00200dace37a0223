import json
import os
import subprocess
import sys

import pytest
from conftest import I_PRIME_GENS, J_GENS, plucker_terms

from coxhilbert.cli import main


def ideal_file(write_json, blocks, gens, relations=(), name="ideal.json"):
    data = {"blocks": list(blocks), "generators": list(gens)}
    if relations:
        data["relations"] = [
            {"terms": [{"coeff": str(c), "exps": list(e)} for c, e in rel]} for rel in relations
        ]
    return write_json(name, data)


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def as_json(out):
    return json.loads(out)


@pytest.fixture
def iprime_file(write_json):
    return ideal_file(write_json, (5, 5), I_PRIME_GENS, name="iprime.json")


@pytest.fixture
def two_file(write_json):
    return ideal_file(write_json, (1, 1), ["x[1][0]^2", "x[2][0]"], name="two.json")


@pytest.fixture
def x0_file(write_json):
    return ideal_file(write_json, (1, 1), ["x[1][0]"], name="x0.json")


GR_RELS = [plucker_terms(1, 2), plucker_terms(2, 2)]


# -- hilbert-eval ----------------------------------------------------------------


def test_hilbert_eval(capsys, write_json, iprime_file):
    code, out, _ = run(capsys, "hilbert-eval", iprime_file, "--degree", "2,3")
    assert code == 0 and as_json(out) == {"degree": [2, 3], "value": 20}
    zero = ideal_file(write_json, (5, 5), [], name="zero.json")
    code, out, _ = run(capsys, "hilbert-eval", zero, "--degree", "1,0", "--format", "plain")
    assert out.strip() == "6"
    gr = ideal_file(write_json, (5, 5), [], GR_RELS, name="gr.json")
    code, out, _ = run(capsys, "hilbert-eval", gr, "--degree", "2,0")
    assert as_json(out)["value"] == 20
    code, out, _ = run(capsys, "hilbert-eval", gr, "--degree", "2,0", "--allow-probabilistic")
    assert as_json(out) == {"degree": [2, 0], "value": 20, "unverified": True}


def test_hilbert_eval_grassmannian_with_j(capsys, write_json):
    gr = ideal_file(write_json, (5, 5), J_GENS, GR_RELS, name="grj.json")
    code, out, _ = run(capsys, "hilbert-eval", gr, "--degree", "1,1", "--format", "plain")
    assert code == 0 and out.strip() == "9"


def test_input_errors(capsys, write_json, iprime_file, tmp_path):
    code, _, err = run(capsys, "hilbert-eval", iprime_file, "--degree", "2")
    assert code == 2 and "error" in err
    code, _, _ = run(capsys, "hilbert-eval", str(tmp_path / "missing.json"), "--degree", "1,1")
    assert code == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, _ = run(capsys, "hilbert-eval", str(bad), "--degree", "1,1")
    assert code == 2
    junk = ideal_file(write_json, (1,), ["y[1][0]"], name="junk.json")
    code, _, _ = run(capsys, "hilbert-eval", junk, "--degree", "1")
    assert code == 2


def test_argparse_errors_exit_2(capsys, iprime_file):
    for argv in (["hilbert-eval", iprime_file], ["nonsense"], ["gotzmann", "--poly", "1", "--bogus"],
                 ["gotzmann", "--poly", "a,b"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2
    capsys.readouterr()


def test_budget_exit_3(capsys, iprime_file):
    code, _, err = run(capsys, "hilbert-eval", iprime_file, "--degree", "4,4", "--max-monomials", "10")
    assert code == 3 and "error" in err


def test_budget_env_override(capsys, iprime_file, monkeypatch):
    monkeypatch.setenv("COXHILBERT_MAX_MONOMIALS", "10")
    code, _, _ = run(capsys, "hilbert-eval", iprime_file, "--degree", "4,4")
    assert code == 3


# -- hilbert-poly ----------------------------------------------------------------


def test_hilbert_poly(capsys, write_json, iprime_file, two_file):
    code, out, _ = run(capsys, "hilbert-poly", iprime_file)
    data = as_json(out)
    assert code == 0 and data["text"] == "t1*t2+2*t1+2*t2+4"
    assert data["validated_offset"] == [1, 1]
    zero = ideal_file(write_json, (1, 1), [], name="z11.json")
    code, out, _ = run(capsys, "hilbert-poly", zero, "--format", "plain")
    assert out.splitlines() == ["t1*t2+t1+t2+1", "C(t1+1,1)*C(t2+1,1)"]
    code, out, _ = run(capsys, "hilbert-poly", two_file)
    assert as_json(out)["text"] == "2"


def test_hilbert_poly_general_ideal_is_input_error(capsys, write_json):
    gr = ideal_file(write_json, (5, 5), J_GENS, GR_RELS, name="grj.json")
    code, _, _ = run(capsys, "hilbert-poly", gr)
    assert code == 2


# -- certify ---------------------------------------------------------------------


def test_certify(capsys, two_file, x0_file):
    code, out, _ = run(capsys, "certify", two_file, "--d", "2,2", "--m", "2")
    assert code == 0 and as_json(out) == {"status": "certified"}
    code, out, _ = run(capsys, "certify", x0_file, "--d", "1,1", "--m", "1")
    assert code == 1
    assert as_json(out) == {"status": "failed_at_vertex", "vertex": [1, 1], "observed": 2, "expected": 1}
    code, out, _ = run(capsys, "certify", x0_file, "--d", "1,1", "--m", "2", "--threads", "3")
    assert code == 1
    assert as_json(out) == {"status": "precondition_violated", "reason": "DegreeBoundTooLow"}


# -- gotzmann / macaulay-growth / min-point ---------------------------------------


@pytest.mark.parametrize("coeffs,r", [("2,1", 2), ("4,3", 7), ("18,9", 54)])
def test_gotzmann(capsys, coeffs, r):
    code, out, _ = run(capsys, "gotzmann", "--poly", coeffs)
    assert code == 0 and as_json(out)["gotzmann_number"] == r
    code, out, _ = run(capsys, "gotzmann", "--poly", coeffs, "--format", "plain")
    assert out.strip() == str(r)


def test_gotzmann_not_hilbert(capsys):
    code, _, err = run(capsys, "gotzmann", "--poly", "0,0,1")
    assert code == 2 and "not a Hilbert polynomial" in err


def test_macaulay_growth(capsys):
    code, out, _ = run(capsys, "macaulay-growth", "--alpha", "5", "--d", "2")
    assert code == 0 and as_json(out) == {"alpha": 5, "d": 2, "kappas": [3, 2], "growth": 7}
    code, _, _ = run(capsys, "macaulay-growth", "--alpha", "5", "--d", "0")
    assert code == 2


def test_min_point_from_hilbert_poly(capsys, iprime_file, tmp_path):
    _, out, _ = run(capsys, "hilbert-poly", iprime_file)
    poly_path = tmp_path / "p.json"
    poly_path.write_text(out)
    code, out, _ = run(capsys, "min-point", "--poly-file", poly_path, "--d1", "7")
    assert code == 0
    assert as_json(out) == {"point": [7, 54], "vertices": [[7, 54], [7, 55], [8, 54], [8, 55]]}
    code, out, _ = run(capsys, "min-point", "--poly-json", poly_path.read_text(), "--d1", "7", "--format", "plain")
    assert out.strip() == "(7,54)"
    code, _, _ = run(capsys, "min-point", "--d1", "7")
    assert code == 2


# -- slice / gasharov --------------------------------------------------------------


def test_slice_and_gasharov_round_trip(capsys, two_file, iprime_file, tmp_path):
    code, out, _ = run(capsys, "slice", iprime_file, "--prefix", "2", "--u-max", "5")
    data = as_json(out)
    assert code == 0 and data["v"] == 21 and data["generator_degree_bound"] == 2
    assert [data["hf"][str(u)] for u in range(6)] == [4, 12, 16, 20, 24, 28]

    _, out, _ = run(capsys, "slice", two_file, "--prefix", "2", "--u-max", "4")
    path = tmp_path / "slice.json"
    path.write_text(out)
    code, out, _ = run(capsys, "gasharov", path, "--d", "2")
    assert code == 0 and as_json(out)["outcome"] == "MaximalGrowthPersists"
    code, _, _ = run(capsys, "gasharov", path, "--d", "0")
    assert code == 2
    code, _, _ = run(capsys, "gasharov", path, "--d", "4")
    assert code == 2


def test_gasharov_strict_and_violated(capsys, write_json, tmp_path):
    zero = ideal_file(write_json, (1, 1), [], name="z.json")
    _, out, _ = run(capsys, "slice", zero, "--prefix", "1", "--u-max", "3")
    path = tmp_path / "zs.json"
    path.write_text(out)
    code, out, _ = run(capsys, "gasharov", path, "--d", "1", "--format", "plain")
    assert code == 0 and out.strip() == "GrowthStrict"
    fake = write_json("fake.json", {"v": 1, "generator_degree_bound": 0, "hf": {"3": 1, "4": 5}})
    code, out, _ = run(capsys, "gasharov", fake, "--d", "3")
    assert code == 1 and as_json(out)["outcome"] == "BoundViolated"


def test_slice_axis_flag(capsys, iprime_file):
    code, out, _ = run(capsys, "slice", iprime_file, "--prefix", "3", "--u-max", "3", "--axis", "1")
    data = as_json(out)
    assert code == 0 and data["axis"] == 1 and data["hf"]["3"] == 25
    code, _, _ = run(capsys, "slice", iprime_file, "--prefix", "3", "--u-max", "1")
    assert code == 2


# -- grid / verify -----------------------------------------------------------------


def test_grid(capsys, write_json, two_file, iprime_file):
    code, out, _ = run(capsys, "grid", two_file, "--lower", "0,0", "--upper", "3,3")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "t1,t2,H" and len(lines) == 17
    assert lines[1:5] == ["0,0,1", "0,1,1", "0,2,1", "0,3,1"]
    assert all(line.endswith(",2") for line in lines[5:])
    zero = ideal_file(write_json, (1,), [], name="z1.json")
    _, out, _ = run(capsys, "grid", zero, "--lower", "0", "--upper", "4")
    assert out.splitlines()[1:] == [f"{k},{k + 1}" for k in range(5)]
    _, out, _ = run(capsys, "grid", iprime_file, "--lower", "1,1", "--upper", "3,3", "--format", "json")
    vals = {tuple(r["degree"]): r["value"] for r in as_json(out)["values"]}
    assert all(v == (a + 2) * (b + 2) for (a, b), v in vals.items()) and len(vals) == 9


def test_verify(capsys, write_json, two_file, x0_file):
    code, out, _ = run(capsys, "verify", two_file, "--d", "2,2", "--m", "2", "--horizon", "6")
    assert code == 0 and as_json(out)["holds"] is True
    code, out, _ = run(capsys, "verify", x0_file, "--d", "1,1", "--m", "1", "--horizon", "3")
    assert code == 1 and as_json(out)["witness"] == [1, 1]
    zero = ideal_file(write_json, (1, 1), [], name="z11.json")
    poly = {"vars": 2, "terms": [{"exps": [1, 1], "coeff": "1"}, {"exps": [1, 0], "coeff": "1"},
                                 {"exps": [0, 1], "coeff": "1"}, {"exps": [0, 0], "coeff": "1"}]}
    code, out, _ = run(capsys, "verify", zero, "--d", "0,0", "--poly-json", json.dumps(poly),
                       "--horizon", "4", "--format", "plain")
    assert code == 0 and out.strip() == "true"


def test_hilbert_poly_feeds_verify(capsys, iprime_file, tmp_path):
    _, out, _ = run(capsys, "hilbert-poly", iprime_file)
    path = tmp_path / "p.json"
    path.write_text(out)
    code, out, _ = run(capsys, "verify", iprime_file, "--d", "1,1", "--poly-file", path, "--horizon", "3")
    assert code == 0
    code, out, _ = run(capsys, "verify", iprime_file, "--d", "0,0", "--poly-file", path, "--horizon", "1")
    assert code == 1 and as_json(out)["witness"] == [0, 0]


def test_module_entry_point(tmp_path):
    env = dict(os.environ)
    proc = subprocess.run(
        [sys.executable, "-m", "coxhilbert", "gotzmann", "--poly", "18,9", "--format", "plain"],
        capture_output=True, text=True, env=env, timeout=120,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "54"
