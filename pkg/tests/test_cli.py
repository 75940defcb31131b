import json
from pathlib import Path

import pytest

from figraph.cli import main

FAMILIES = Path(__file__).resolve().parent.parent / "families"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_validate_ok(capsys):
    code, out, _ = run(capsys, "validate", FAMILIES / "kneser2.json")
    assert code == 0
    assert json.loads(out)["orbits"] == {"pair": 1, "linear": 0, "singleton": 0}


def test_validate_rule_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"orbits": [{"id": "S", "kind": "singleton"}],
                               "loops": [{"orbit": "S", "label": "LinComplete"}]}))
    code, _, err = run(capsys, "validate", bad)
    assert code == 1
    doc = json.loads(err)
    assert doc["error"] == "LoopOnSingleton" and doc["rule"] == 4 and doc["where"] == "S"


def test_missing_file(capsys):
    code, _, err = run(capsys, "validate", "/nonexistent.json")
    assert code == 1 and "cannot read" in json.loads(err)["message"]


def test_expand_dimacs(capsys):
    code, out, _ = run(capsys, "expand", "family:kneser2", "--n", 4)
    assert code == 0
    assert "p edge 6 3" in out


def test_alpha_from_dimacs(tmp_path, capsys):
    run(capsys, "expand", "family:johnson2", "--n", 6, "--out", tmp_path / "j6.dimacs")
    code, out, _ = run(capsys, "alpha", tmp_path / "j6.dimacs", "--format", "json")
    assert code == 0 and json.loads(out)["alpha"] == 3


def test_alpha_budget_exit_code(capsys):
    code, out, _ = run(capsys, "alpha", "family:johnson2", "--n", 12, "--budget-nodes", 5)
    assert code == 2 and out.startswith("budget exhausted")


def test_alpha_needs_n(capsys):
    code, _, err = run(capsys, "alpha", FAMILIES / "kneser2.json")
    assert code == 1 and "--n" in json.loads(err)["message"]


def test_scan_fit_pipeline(tmp_path, capsys):
    scan = tmp_path / "kneser.csv"
    code, _, _ = run(capsys, "scan", FAMILIES / "kneser2.json", "--n-min", 4, "--n-max", 10, "--out", scan)
    assert code == 0
    manifest = json.loads((tmp_path / "kneser.csv.manifest.json").read_text())
    assert manifest["command"] == "scan" and manifest["parameters"]["n_max"] == 10
    assert str(FAMILIES / "kneser2.json") in manifest["inputs"]
    code, out, _ = run(capsys, "fit", scan)
    assert code == 0
    assert out.startswith("period 1, degree 1, stable degree 4")
    assert "denominator t^2 - 2*t + 1" in out


def test_scan_is_reproducible(tmp_path, capsys):
    def body(name):
        run(capsys, "scan", "family:johnson2", "--n-max", 9, "--out", tmp_path / name)
        lines = (tmp_path / name).read_text().splitlines()
        # Timing is the one column allowed to differ between runs.
        return [",".join(l.split(",")[:5] + l.split(",")[6:]) for l in lines]
    assert body("a.csv") == body("b.csv")


def test_scan_budget_partial(capsys):
    code, out, _ = run(capsys, "scan", "family:johnson2", "--n-min", 10, "--n-max", 11, "--budget-nodes", 3)
    assert code == 2
    assert out.splitlines()[1].endswith(",budget")


def test_fit_no_fit(tmp_path, capsys):
    seq = tmp_path / "s.csv"
    seq.write_text("n,alpha\n" + "".join(f"{n},{2 ** n}\n" for n in range(8)))
    code, _, err = run(capsys, "fit", seq, "--max-period", 1, "--max-degree", 1)
    assert code == 1 and json.loads(err)["error"] == "NoFit"


def test_random_sweep(tmp_path, capsys):
    params = tmp_path / "p.json"
    params.write_text(json.dumps({"pair": 1, "linear": [0, 1], "singleton": 0, "p": 0.5}))
    out = tmp_path / "sweep.csv"
    code, _, _ = run(capsys, "random-sweep", params, "--count", 3, "--n-max", 9, "--seed", 7, "--out", out)
    assert code == 0
    rows = out.read_text().splitlines()
    assert len(rows) == 4 and rows[0].startswith("index,seed,digest")
    assert json.loads((tmp_path / "sweep.csv.manifest.json").read_text())["seeds"] == {"master": 7}


def test_ideal(capsys):
    code, out, _ = run(capsys, "ideal", "family:kneser2", "--n", 4)
    assert code == 0
    assert "x_{1,2}x_{3,4}" in out and out.strip().endswith("= 3")


def test_verify_lemmas(capsys):
    code, out, _ = run(capsys, "verify", "lemmas")
    assert code == 0 and out.startswith("[PASS] C9")


def test_unknown_family(capsys):
    code, _, _ = run(capsys, "validate", "family:petersen")
    assert code == 1


def test_bad_subcommand():
    with pytest.raises(SystemExit):
        main(["frobnicate"])
