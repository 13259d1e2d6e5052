import json

import numpy as np
import pytest

from eulerwedge.cli import run
from eulerwedge.verify import random_standard_subspace


def call(capsys, *argv):
    code = run(list(argv))
    return code, capsys.readouterr().out.strip()


@pytest.fixture
def h0_file(tmp_path):
    p = tmp_path / "h0.json"
    p.write_text(json.dumps({"algebra": "sl2R", "coords": ["1/2", "0", "0"]}))
    return str(p)


@pytest.fixture
def k0_file(tmp_path):
    p = tmp_path / "k0.json"
    p.write_text(json.dumps({"algebra": "sl2R", "coords": ["0", "1/2", "1/2"]}))
    return str(p)


def test_euler_check(capsys, h0_file):
    assert call(capsys, "euler", "check", "--algebra", "sl2R", "--element", h0_file) == (0, '{"euler":true}')
    assert call(capsys, "euler", "check", "--algebra", "sl2R", "--element", "z0") == (1, '{"euler":false}')


def test_pair_classify(capsys):
    out = call(capsys, "pair", "classify", "--family", "sl2_sum_r", "--r", "2", "--j", "0")
    assert out == (0, '{"class":"negative-timelike"}')


def test_zeta(capsys, h0_file, k0_file):
    assert call(capsys, "zeta", "--group", "PSL2R~", "--h", h0_file, "--k", k0_file) == (0, '{"winding":[1]}')
    assert call(capsys, "zeta", "--group", "PSL2xPSL2~", "--h", "h0,h0", "--k", "k0,-k0") == (0, '{"winding":[0,1]}')


def test_order_and_interval(capsys):
    assert call(capsys, "order", "test", "--w1", "[[1,1],[0,1]]", "--w2", "[[1,0],[0,1]]")[0] == 0
    assert call(capsys, "order", "test", "--w1", "[[1,-1],[0,1]]", "--w2", "[[1,0],[0,1]]")[0] == 1
    code, out = call(capsys, "interval", "--element", "k0")
    assert code == 0 and json.loads(out) == {"model": "circle", "a": "-1", "b": "1"}


def test_catalog(capsys):
    code, out = call(capsys, "catalog", "realize", "--family", "sl2_sum_r", "--params", "2")
    assert code == 0 and all(e["certified"] for e in json.loads(out)["euler_elements"])
    code, out = call(capsys, "catalog", "list")
    assert code == 0 and "simple_3_graded" in json.loads(out)


def test_subspace_verbs(capsys, tmp_path):
    p = tmp_path / "h.json"
    h = random_standard_subspace(np.random.default_rng(3), 2)
    p.write_text(json.dumps(h.to_json()))
    code, out = call(capsys, "subspace", "modular", "--subspace", str(p))
    assert code == 0 and json.loads(out)["standard"]
    code, out = call(capsys, "subspace", "orthogonal", "--h1", str(p), "--h2", str(p))
    assert code == 1 and json.loads(out)["orthogonal"] is False
    assert call(capsys, "subspace", "complement", "--subspace", str(p))[0] == 0


def test_counterexample(capsys):
    code, out = call(capsys, "counterexample", "--m", "2", "--seed", "5")
    assert code == 0 and json.loads(out)["holds"]


def test_malformed_input_exit_code(capsys, tmp_path):
    code, out = call(capsys, "euler", "check", "--element", str(tmp_path / "missing.json"))
    assert code == 2 and "error" in json.loads(out)
    code, out = call(capsys, "euler", "check", "--element", '{"algebra":"sl2R","coords":["1"]}')
    assert code == 2 and "error" in json.loads(out)


def test_unknown_verb_prints_usage(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["frobnicate"])
    assert exc.value.code == 2
    assert "usage" in capsys.readouterr().err


def test_output_is_byte_stable(capsys):
    argv = ["counterexample", "--m", "2", "--seed", "1"]
    assert call(capsys, *argv) == call(capsys, *argv)


def test_output_file_and_table(capsys, tmp_path):
    out = tmp_path / "o.json"
    assert call(capsys, "pair", "classify", "--family", "sl2_sum_r", "--r", "1", "--j", "1", "--output", str(out))[0] == 0
    assert json.loads(out.read_text()) == {"class": "positive-timelike"}
    code, text = call(capsys, "pair", "classify", "--family", "sl2_sum_r", "--r", "1", "--j", "1", "--format", "table")
    assert "positive-timelike" in text


def test_tolerance_env(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv("EULERWEDGE_TOL", "1e-3")
    almost = '{"algebra":"sl2R","coords":["0.5000001","0","0"]}'
    assert call(capsys, "euler", "check", "--element", almost)[0] == 0
    monkeypatch.setenv("EULERWEDGE_TOL", "1e-12")
    assert call(capsys, "euler", "check", "--element", almost)[0] == 1
