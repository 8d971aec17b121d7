import json
from pathlib import Path

import numpy as np
import pytest

from bellcert import cli, serialization, states
from bellcert.errors import StateFileError
from bellcert.functional import bell_value

DATA = Path(__file__).resolve().parents[1] / "data" / "states"


def run_json(capsys, *argv):
    code = cli.run(list(argv))
    out = capsys.readouterr()
    assert code == 0, out.err
    return json.loads(out.out)


def test_criterion_werner(capsys):
    rep = run_json(capsys, "criterion", "--state", str(DATA / "werner_0.9.json"), "--n", "3")
    assert rep["schema"] == serialization.REPORT_SCHEMA_TAG
    assert rep["criterion"]["m_n_value"] == pytest.approx(1.5588457268, abs=1e-9)
    assert rep["criterion"]["verdict"] == "violates"
    assert "timings" in rep


def test_verify_proofs(capsys):
    rep = run_json(capsys, "verify-proofs", "--n-max", "12", "--deterministic")
    assert [r["full"] for r in rep["proofs"]] == [True] * 11
    assert "timings" not in rep


def test_construct_roundtrip(capsys, tmp_path):
    path = DATA / "two_copy_bell_diagonal.json"
    rep = run_json(capsys, "construct", "--state", str(path), "--n", "4")
    assert rep["proposition1"]["pass"]
    obs = serialization.observables_from_dict(rep["observables"])
    rho = serialization.load_state(path)
    assert bell_value(rho, obs) == pytest.approx(rep["bell_value"], abs=1e-10)


def test_seesaw_gap(capsys):
    rep = run_json(capsys, "seesaw", "--state", str(DATA / "singlet.json"), "--n", "2", "--restarts", "4")
    assert rep["oracle"]["value"] == pytest.approx(2 * np.sqrt(2), abs=1e-7)
    assert abs(rep["gap"]) < 1e-6
    obs_value = bell_value(states.singlet(), alice=[serialization.decode_matrix(a) for a in rep["oracle"]["alice"]],
                           bob=[serialization.decode_matrix(b) for b in rep["oracle"]["bob"]])
    assert obs_value == pytest.approx(rep["oracle"]["value"], abs=1e-10)


def test_text_format(capsys):
    assert cli.run(["criterion", "--state", str(DATA / "singlet.json"), "--n", "2", "--format", "text"]) == 0
    assert "verdict: violates" in capsys.readouterr().out


def test_out_file(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert cli.run(["criterion", "--state", str(DATA / "singlet.json"), "--n", "3", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["criterion"]["n"] == 3


def test_usage_errors(capsys, tmp_path):
    assert cli.run(["criterion", "--state", str(DATA / "singlet.json"), "--n", "4"]) == 2
    assert "usage error" in capsys.readouterr().err
    assert cli.run(["bogus"]) == 2


def test_malformed_state_reports_line(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{\n  "kind": "bell_diagonal",\n  "lambda": [0.1, 0.2,]\n}\n')
    assert cli.run(["criterion", "--state", str(bad), "--n", "2"]) == 1
    err = capsys.readouterr().err
    assert "line 3" in err and '"lambda"' in err


def test_invalid_state_contents(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"kind": "bell_diagonal", "lambda": [0.5, 0.6, 0.9]}, indent=1))
    assert cli.run(["criterion", "--state", str(bad), "--n", "2"]) == 1
    bad.write_text(json.dumps({"kind": "fano", "r": [0, 0], "s": [0, 0, 0], "lambda": [0, 0, 0]}, indent=1))
    assert cli.run(["criterion", "--state", str(bad), "--n", "2"]) == 1
    assert "line" in capsys.readouterr().err


def test_state_kinds_roundtrip(rng):
    rho = states.random_state(2, rng)
    doc = serialization.dense_state_doc(rho)
    assert np.array_equal(serialization.parse_state(json.dumps(doc)), rho)
    fano = states.diagonalize_two_qubit(rho)
    doc = {"kind": "fano", "r": fano.r.tolist(), "s": fano.s.tolist(), "lambda": fano.lam.tolist(),
           "frame": {"U": serialization.encode_matrix(fano.U), "V": serialization.encode_matrix(fano.V)}}
    assert np.allclose(serialization.parse_state(json.dumps(doc)), rho, atol=1e-12)
    doc = {"kind": "m_copies", "m": 2, "state": serialization.dense_state_doc(rho)}
    assert np.allclose(serialization.parse_state(json.dumps(doc)), states.m_copies(rho, 2))
    with pytest.raises(StateFileError):
        serialization.parse_state(json.dumps({"kind": "dense", "d": 3, "matrix": doc["state"]["matrix"]}))


def test_deterministic_bytes(tmp_path):
    args = ["seesaw", "--state", str(DATA / "fano_example.json"), "--n", "3", "--restarts", "5", "--seed", "9", "--deterministic"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert cli.run(args + ["--out", str(a)]) == 0
    assert cli.run(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_demo(capsys):
    rep = run_json(capsys, "demo", "--restarts", "5", "--deterministic")
    w = rep["demo"]["werner_thresholds"]
    assert w["2"]["criterion_threshold"] == pytest.approx(1 / np.sqrt(2), abs=1e-9)
    assert w["3"]["criterion_threshold"] == pytest.approx(np.sqrt(3) / 2, abs=1e-9)
    a = rep["demo"]["appendix_b"]
    assert a["closed_form"] == pytest.approx(8 * np.sqrt(0.81 * 1.42 + 0.36), abs=1e-12)
    assert not a["valid_state"]
    v = rep["demo"]["appendix_b_valid"]
    assert v["listed_observables_value"] == pytest.approx(v["closed_form"], abs=1e-9)
    assert v["seesaw"] >= v["criterion_bound"] - 1e-6
