import json
import subprocess
import sys

import pytest

from mirtrace import suites
from mirtrace.cli import main
from mirtrace.suites import Check


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def test_canonical_diag(tmp_path, capsys):
    path = write(tmp_path, "x.json", [["1", "0"], ["0", "2"]])
    code, rep = run_json(capsys, "canonical", path)
    assert code == 0 and rep["ok"]
    assert rep["results"]["invariant_factors"] == ["t^2 - 3t + 2"]
    assert rep["results"]["classification"] == "regular-semisimple"


def test_canonical_scalar(tmp_path, capsys):
    path = write(tmp_path, "x.json", [["5", "0"], ["0", "5"]])
    code, rep = run_json(capsys, "canonical", path)
    assert rep["results"]["class_datum"] == {"components": [{"poly": ["-5", "1"], "partition": [1, 1]}]}
    assert rep["results"]["classification"] == "semisimple"


def test_canonical_companion_of_t3_minus_1(tmp_path, capsys):
    path = write(tmp_path, "x.json", [["0", "0", "1"], ["1", "0", "0"], ["0", "1", "0"]])
    code, rep = run_json(capsys, "canonical", path)
    assert code == 0
    assert rep["results"]["classification"] == "regular-semisimple"
    assert len(rep["results"]["class_datum"]["components"]) == 2


def test_canonical_degree_bound_is_not_fatal(tmp_path, capsys):
    path = write(tmp_path, "x.json", [["0", "1"], ["1", "0"]])
    code, rep = run_json(capsys, "canonical", path, "--degree-bound", "1")
    assert code == 0
    assert rep["results"]["class_datum"].startswith("unavailable")
    assert rep["results"]["char_poly"] == "t^2 - 1"


@pytest.mark.parametrize("partition,symbolic", [
    ([1, 1], "ζ_F(s)ζ_F(2s)"),
    ([2], "ζ_F(s)ζ_F(2s-1)"),
])
def test_predict_gl2(tmp_path, capsys, partition, symbolic):
    path = write(tmp_path, "d.json", {"components": [{"poly": ["-1", "1"], "partition": partition}]})
    code, rep = run_json(capsys, "predict", path, "--q", "5")
    assert code == 0 and rep["results"]["symbolic"] == symbolic


def test_predict_regular_chain(tmp_path, capsys):
    path = write(tmp_path, "d.json", {"components": [{"poly": ["1", "0", "1"], "partition": [3]}]})
    code, rep = run_json(capsys, "predict", path)
    (component,) = rep["results"]["factors"]
    assert [f["symbol"] for f in component["factors"]] == \
        ["ζ_E1(s)", "ζ_E1(2s-1)", "ζ_E1(3s-2)"]


def test_tate_unit_ball(tmp_path, capsys):
    path = write(tmp_path, "phi.json", {"p": 3, "d": 1, "terms": [
        {"coeff": "1", "twist": ["0"], "center": ["0"], "levels": [0]}]})
    code, rep = run_json(capsys, "tate", path)
    assert code == 0 and rep["results"]["integral"]["text"] == "1 / (1 - t)"
    assert len(rep["checks"]) == 3


def test_eisenstein_defaults(capsys):
    code, rep = run_json(capsys, "eisenstein", "--p", "3")
    assert code == 0 and rep["ok"]
    value = rep["results"]["numeric"]["0.5"]
    # 1/(1 - 3^-1/2) + 1/(3^1/2 - 1)
    assert abs(float(value["exact"]) - (1 / (1 - 3 ** -0.5) + 1 / (3 ** 0.5 - 1))) < 1e-9


def test_kernel_defaults(capsys):
    code, rep = run_json(capsys, "kernel")
    assert code == 0 and rep["results"]["kernel"] == "1/2"


def test_verify_suite(capsys):
    code, rep = run_json(capsys, "verify", "hooks", "--count", "6")
    assert code == 0 and rep["results"]["passed"] == "6/6"


def test_text_report(capsys):
    code, out, _ = run(capsys, "verify", "conjugation", "--count", "4")
    assert code == 0 and "PASS" in out and out.rstrip().splitlines()[-1].startswith("OK")


def test_failed_check_exit_code(capsys, monkeypatch):
    def failing(seed, count):
        return [Check("always fails", False, {"left": "1", "right": "2"})]
    monkeypatch.setitem(suites.SUITES, "hooks", (failing, 1))
    code, rep = run_json(capsys, "verify", "hooks")
    assert code == 1 and not rep["ok"]
    assert rep["checks"][0]["witness"] == {"left": "1", "right": "2"}


def test_input_errors(tmp_path, capsys):
    code, _, err = run(capsys, "tate", str(tmp_path / "missing.json"))
    assert code == 2 and "no such file" in err
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "canonical", str(bad))[0] == 2
    path = write(tmp_path, "phi.json", {"p": 3, "d": 2, "terms": []})
    g = write(tmp_path, "g.json", [["1"]])
    assert run(capsys, "eisenstein", g, path, path)[0] == 2
    assert run(capsys, "eisenstein", g)[0] == 2


def test_json_is_deterministic(capsys):
    reports = []
    for _ in range(2):
        _, rep = run_json(capsys, "verify", "fourier", "--seed", "7", "--count", "10")
        rep.pop("timing_seconds")
        reports.append(json.dumps(rep, sort_keys=True))
    assert reports[0] == reports[1]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mirtrace", "kernel", "--p", "3", "--json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["kernel"] == "1/3"
