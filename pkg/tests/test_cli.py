import json
import subprocess
import sys

import pytest

from qminor.cli import main
from qminor.experiments import quasicommutation_13_24
from qminor.identities import dodgson, plucker3a


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def write(tmp_path):
    def _write(obj, name="id.json"):
        p = tmp_path / name
        p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(p)
    return _write


def test_check_dodgson(capsys, write):
    code, out, _ = run(capsys, "check", write(dodgson((), 1, 2, (), 1, 2).to_json()))
    assert code == 0
    assert json.loads(out)["verdict"] == "q-balanced"


def test_check_refuted_with_witness(capsys, write):
    code, out, _ = run(capsys, "check", write(quasicommutation_13_24(0).to_json()))
    assert code == 1
    rep = json.loads(out)
    assert rep["verdict"] == "balanced-but-not-q"
    assert rep["witness"]["pair"]["matchings"] == ["{(c1',c2'),(c3',c4')}", "{(c1',c4'),(c2',c3')}"]


@pytest.mark.parametrize("text", ['{"m": 2, "n": 2, "lhs": []}', "not json",
                                  '{"m": 1, "n": 1, "lhs": [{"I": [1], "J": [1], "Ip": [], "Jp": []}],'
                                  ' "rhs": [{"I": [1], "J": [1], "Ip": [1], "Jp": [1]}]}'])
def test_check_bad_input(capsys, write, text):
    code, _, err = run(capsys, "check", write(text))
    assert code == 2 and err.startswith("qminor: error:")


def test_check_missing_file(capsys, tmp_path):
    assert run(capsys, "check", str(tmp_path / "absent.json"))[0] == 2


def test_verify(capsys, write):
    path = write(plucker3a((), 1, 2, 3).to_json())
    code, out, _ = run(capsys, "verify", path, "--graph", "grid:2x3")
    assert (code, out) == (0, "0\n")
    code, out, _ = run(capsys, "verify", write(quasicommutation_13_24(1).to_json(), "r.json"),
                       "--graph", "grid:3x4")
    assert code == 1 and out.strip() != "0"
    assert run(capsys, "verify", path, "--graph", "grid:oops")[0] == 2
    assert run(capsys, "verify", path, "--graph", "grid:1x1")[0] == 2


def test_falsify_golden(capsys, write):
    code, out, _ = run(capsys, "falsify", write(quasicommutation_13_24(0).to_json()))
    assert code == 1
    assert out == ("(1 - q^-2)*t11*t12*t23*t24 + (q^2 - 1)*t11*t12*t13^-1*t14*t23^2"
                   " + (1 - q^-2)*t11*t14*t22*t23\n")


def test_catalog_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "catalog", "dodgson", "--X", "3", "--i", "1", "--k", "2",
                       "--Xp", "3", "--ip", "1", "--kp", "2")
    assert code == 0
    p = tmp_path / "d.json"
    p.write_text(out)
    assert json.loads(out)["m"] == 3
    assert run(capsys, "check", str(p))[0] == 0
    assert run(capsys, "falsify", str(p))[0] == 0


def test_catalog_errors(capsys):
    assert run(capsys, "catalog", "nonsense")[0] == 2
    assert run(capsys, "catalog", "plucker4", "--i", "1")[0] == 2
    assert run(capsys, "catalog", "lz", "--I", "1,3", "--J", "2,4")[0] == 2
    assert run(capsys, "catalog", "lz", "--I", "3,1", "--J", "2")[0] == 2


def test_catalog_manin(capsys):
    code, out, _ = run(capsys, "catalog", "manin", "--kind", "row", "--i", "1", "--j", "1", "--jp", "2")
    assert code == 0
    assert json.loads(out)["rhs"][0]["qexp"] == 1


def test_matchings_golden(capsys):
    code, out, _ = run(capsys, "matchings", "--I", "1,2", "--J", "1,3", "--Ip", "1,2", "--Jp", "2,4")
    assert code == 0
    data = json.loads(out)
    assert data["count"] == 2
    assert [m["text"] for m in data["matchings"]] == ["{(c1',c2'),(c3',c4')}", "{(c1',c4'),(c2',c3')}"]


def test_classify_golden(capsys):
    code, out, _ = run(capsys, "classify", "--I", "1,2", "--J", "1,2", "--Ip", "1", "--Jp", "1")
    assert code == 0
    assert out == ('{\n  "c": 0,\n  "commutes": true,\n  "cortege": "({1,2}|{1,2}, {1}|{1})",\n'
                   '  "unique": true\n}\n')
    code, out, _ = run(capsys, "classify", "--I", "1,2", "--J", "1,3", "--Ip", "1,2", "--Jp", "2,4")
    assert json.loads(out)["c"] is None
    assert run(capsys, "classify", "--I", "1,2", "--J", "1", "--Ip", "", "--Jp", "")[0] == 2


def test_threads_variable(capsys, write, monkeypatch):
    path = write(plucker3a((), 1, 2, 3).to_json())
    monkeypatch.setenv("QMINOR_THREADS", "1")
    assert run(capsys, "verify", path, "--graph", "grid:2x3")[0] == 0
    monkeypatch.setenv("QMINOR_THREADS", "zero")
    assert run(capsys, "verify", path, "--graph", "grid:2x3")[0] == 2
    monkeypatch.setenv("QMINOR_THREADS", "0")
    assert run(capsys, "check", path)[0] == 2


def test_usage_errors(capsys):
    assert run(capsys)[0] == 2
    assert run(capsys, "verify", "x.json")[0] == 2


def test_module_entry_point(tmp_path):
    p = tmp_path / "id.json"
    p.write_text(json.dumps(dodgson((), 1, 2, (), 1, 2).to_json()))
    proc = subprocess.run([sys.executable, "-m", "qminor", "check", str(p)], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["verdict"] == "q-balanced"


def test_catalog_manin_missing_index(capsys):
    assert run(capsys, "catalog", "manin", "--kind", "row", "--i", "1", "--j", "1")[0] == 2
