import csv
import io
import json
from fractions import Fraction

import pytest

from ggjet.cli import main
from ggjet.morse import JetParams, morse_polynomial
from ggjet.report import morse_from_dict, morse_roundtrip, morse_to_dict


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_bound_n2_json(capsys):
    code, out, _ = run(capsys, "bound", "--n", "2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["ggl_bound"] == "1224/1"
    assert data["monomial_bound"] == "1224/1"
    assert data["kobayashi_bound"] == "37179/4"
    assert data["threshold_2M"] == "1224/1"
    assert data["all_verdicts_pass"] is True
    assert "27/4" in data["metadata"]["d_eps_alternative_constant"]


def test_bound_with_d(capsys):
    code, out, _ = run(capsys, "bound", "--n", "2", "--eps", "13", "--d", "1225", "--format", "json")
    assert code == 0
    assert json.loads(out)["evaluation"]["P_positive"] is True


def test_bound_text(capsys):
    code, out, _ = run(capsys, "bound", "--n", "2", "--eps", "13", "--d", "1225")
    assert code == 0
    assert "P > 0" in out and "1224" in out


def test_bound_usage_errors(capsys):
    assert run(capsys, "bound", "--n", "1")[0] == 2
    assert run(capsys, "bound", "--n", "2", "--eps", "-3")[0] == 2
    assert run(capsys, "bound", "--n", "2", "--eps", "abc")[0] == 2
    assert run(capsys, "bound")[0] == 2


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as info:
        main(["bound", "--n", "x"])
    assert info.value.code == 2


def test_bound_csv_rows(capsys):
    code, out, _ = run(capsys, "bound", "--n-range", "2..3", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [(r["n"], r["alpha"]) for r in rows] == [("2", "0"), ("2", "1"), ("2", "2"),
                                                   ("3", "0"), ("3", "1"), ("3", "2"), ("3", "3")]
    assert all("/" in r["Q"] and "/" in r["R"] for r in rows)


def test_morse_json(capsys):
    code, out, _ = run(capsys, "morse", "--n", "2", "--k", "2", "--eps", "13", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["q"][2] == "1/2"
    mp = morse_from_dict(data)
    assert mp.q[2] == Fraction(1, 2)


def test_morse_default_eps(capsys):
    code, out, _ = run(capsys, "morse", "--n", "3", "--k", "3", "--format", "json")
    data = json.loads(out)
    assert data["params"]["eps"] == "18/1"
    assert data["q"][3] == "1/6"


def test_morse_roundtrip():
    for n, eps in [(2, Fraction(1, 3)), (4, 23)]:
        mp = morse_polynomial(JetParams(n, n, eps))
        assert morse_roundtrip(mp)
        again = morse_from_dict(json.loads(json.dumps(morse_to_dict(mp))))
        assert again.raw == mp.raw


def test_json_rationals_are_strings(capsys):
    _, out, _ = run(capsys, "bound", "--n", "3", "--format", "json")
    data = json.loads(out)

    def walk(x, key=""):
        if isinstance(x, dict):
            for k, v in x.items():
                if k not in ("approx", "metadata", "verdicts", "params"):
                    walk(v, k)
        elif isinstance(x, list):
            for v in x:
                walk(v, key)
        elif isinstance(x, float):
            raise AssertionError(f"float in JSON under {key}")

    walk(data)
    assert "/" in data["d_eps"]


def test_coeffs(capsys):
    code, out, _ = run(capsys, "coeffs", "--n", "2", "--k", "2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["B"][1] == "6/1"
    assert data["lambda"][0][1] == "-3/2"
    assert all(data["checks"].values())


def test_verify_suites(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "whitney", "--max-n", "2", "--max-r", "2")
    assert code == 0 and "FAIL" not in out
    code, out, _ = run(capsys, "verify", "--suite", "lemmas", "--n-range", "2..6")
    assert code == 0 and "FAIL" not in out
    code, out, _ = run(capsys, "verify", "--suite", "coeffs", "--n", "3", "--k", "3")
    assert code == 0 and "FAIL" not in out


def test_verify_aliases(capsys):
    assert run(capsys, "verify-lemmas", "--n-range", "2..3")[0] == 0
    assert run(capsys, "verify-whitney", "--max-n", "1", "--max-r", "2", "--degrees=-1..1")[0] == 0


def test_verify_deterministic_across_jobs(capsys):
    argv = ["verify", "--suite", "morse", "--n-range", "2..4", "--format", "json"]
    _, serial, _ = run(capsys, *argv)
    _, parallel, _ = run(capsys, *argv, "--jobs", "2")
    assert serial == parallel


def test_annex(capsys, tmp_path):
    target = tmp_path / "annex.json"
    code, _, _ = run(
        capsys, "annex", "--weights", "1,1", "--m-schedule", "2,4,8,16,32,64",
        "--remark-n", "1", "--bundle", "1:1,0:1", "--format", "json", "--output", str(target),
    )
    assert code == 0
    data = json.loads(target.read_text())
    assert data["lattice_volume_squared"] == "2/1"
    assert data["simplex_volume_ratio"] == "1/1"
    assert data["remark"]["constant"] == "3/4"
    assert data["whitney"]["equal"] is True


def test_annex_bad_schedule(capsys):
    assert run(capsys, "annex", "--weights", "2,4", "--m-schedule", "3")[0] == 2


def test_verify_whitney_ordered_grid_is_larger(capsys):
    argv = ["verify-whitney", "--max-n", "1", "--max-r", "2", "--weights", "1,2", "--degrees=0..1", "--format", "json"]
    _, multiset, _ = run(capsys, *argv)
    code, ordered, _ = run(capsys, *argv, "--ordered")
    assert code == 0
    assert len(json.loads(ordered)["checks"]) > len(json.loads(multiset)["checks"])
