import json
import subprocess
import sys

import pytest

from planepoly.cli import main
from planepoly.constructions import family_eq2
from planepoly.serialize import dumps

from conftest import CUBIC_NOT_W, P3, QUARTIC, SEPTIC


def run(*args, stdin=None):
    proc = subprocess.run(
        [sys.executable, "-m", "planepoly", *args],
        input=stdin,
        capture_output=True,
        text=True,
        timeout=120,
    )
    return proc.returncode, proc.stdout, proc.stderr


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, text in (("p3", P3), ("quartic", QUARTIC), ("cubic", CUBIC_NOT_W), ("septic", SEPTIC)):
        path = tmp_path / f"{name}.txt"
        path.write_text(text + "\n")
        out[name] = str(path)
    eq2 = tmp_path / "eq2.json"
    eq2.write_text(dumps(family_eq2(3, 5)))
    out["eq2"] = str(eq2)
    out["dir"] = tmp_path
    return out


def test_construct_pipes_into_verify():
    code, text, _ = run("construct", "pd", "--d", "7")
    assert code == 0
    code, out, _ = run("verify", "-", "--json", stdin=text)
    obj = json.loads(out)
    assert code == 0 and obj["in_H"] and obj["degree"] == 7 and obj["N"] == 5


def test_verify_not_in_p(files):
    code, out, _ = run("verify", files["eq2"], "--json")
    obj = json.loads(out)
    assert code == 1 and obj["in_J"] and not obj["in_P"]


def test_polynomial_commands(files, capsys):
    assert main(["q", files["p3"]]) == 0
    assert capsys.readouterr().out.strip() == "x^2 - x*y + y^2 + x + y + 1"
    assert main(["measure", files["quartic"], "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["N"] == 9
    assert main(["bounds", files["quartic"]]) == 0
    assert "general" in capsys.readouterr().out
    assert main(["chain", files["septic"], "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["replay_ok"]
    assert main(["pullback", files["cubic"], "--map", "veronese", "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["vars"] == 2
    assert main(["pullback", files["cubic"], "--map", "h2:" + files["p3"]]) == 0
    assert capsys.readouterr().out.startswith("x^9 + y^9")
    assert main(["pullback", files["cubic"], "--map", "linear:1,2|3"]) == 0
    capsys.readouterr()


def test_wcheck_exit_codes(files, capsys):
    assert main(["wcheck", files["cubic"]]) == 1
    assert "NOT_IN_W" in capsys.readouterr().out
    path = files["dir"] / "gd.txt"
    assert main(["construct", "gd", "--n", "3", "--d", "3"]) == 0
    path.write_text(capsys.readouterr().out)
    assert main(["wcheck", str(path), "--json"]) == 0
    assert json.loads(capsys.readouterr().out)["status"] == "IN_W"


def test_input_errors(files, capsys):
    assert main(["verify", str(files["dir"] / "missing.txt")]) == 3
    bad = files["dir"] / "bad.txt"
    bad.write_text("x + * y")
    assert main(["verify", str(bad)]) == 3
    assert main(["pullback", files["p3"], "--map", "sideways"]) == 3
    assert main(["construct", "pd", "--d", "4"]) == 3
    assert main(["frobnicate"]) == 3
    assert main(["search", "--n", "2", "--d", "3", "--budget", "0"]) == 3
    capsys.readouterr()


def test_search_and_recheck(files, capsys):
    cert = str(files["dir"] / "c.json")
    assert main(["search", "--n", "2", "--d", "5", "--out", cert]) == 0
    assert "kind: optimum" in capsys.readouterr().out
    assert main(["recheck", cert]) == 0
    assert "recheck: ok" in capsys.readouterr().out
    obj = json.loads(open(cert).read())
    obj["witnesses"][0]["terms"][-1]["c"] = "7"
    with open(cert, "w") as fh:
        json.dump(obj, fh)
    assert main(["recheck", cert]) == 1
    capsys.readouterr()
    assert main(["search", "--n", "2", "--d", "5", "--budget", "2"]) == 2
    capsys.readouterr()


def test_budget_env_and_flag_precedence(monkeypatch, capsys):
    monkeypatch.setenv("PLANEPOLY_BUDGET", "2")
    assert main(["search", "--n", "2", "--d", "5"]) == 2
    assert main(["search", "--n", "2", "--d", "5", "--budget", "1000"]) == 0
    monkeypatch.setenv("PLANEPOLY_BUDGET", "nope")
    assert main(["search", "--n", "2", "--d", "5"]) == 3
    capsys.readouterr()


def test_float_output(files, capsys):
    assert main(["construct", "pd", "--d", "3", "--float"]) == 0
    assert capsys.readouterr().out.strip() == "x^3 + y^3 + 3*x*y"
    assert main(["q", files["septic"], "--float"]) == 0
    assert "1.5*x^4*y" in capsys.readouterr().out
