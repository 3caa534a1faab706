import json

import jsonschema
import pytest

from realdescent import fixtures
from realdescent.cli import main
from realdescent.ideal import Ideal, ideal_equals
from realdescent.numbers import FieldSpec
from realdescent.parser import parse_poly
from realdescent.poly import VariableContext
from realdescent.report import load_schema

QI = FieldSpec(-1)
HUMBERT_IDENTITY = fixtures.HUMBERT_PROBLEM.split("symmetry:")[0] + "symmetry:\n  x1\n  x2\n  x3\n  x4\n"


@pytest.fixture
def write(tmp_path):
    def _write(text, name="p.txt"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_descend_humbert(write, capsys):
    code, out, _ = run(capsys, "descend", write(fixtures.HUMBERT_PROBLEM))
    assert code == 0
    assert "branch: GenericDescent" in out
    assert "over Q in t1" in out
    assert "R: 11 components (isomorphism onto Z)" in out
    assert "W: empty" in out
    assert out.rstrip().endswith("result: PASS")


def test_descend_identity_symmetry(write, capsys):
    code, _, err = run(capsys, "descend", write(HUMBERT_IDENTITY))
    assert code == 2
    assert "condition (a)" in err
    assert "witness: x1^2 + x4^2 - i" in err


def test_descend_self_conjugate(write, capsys):
    code, out, _ = run(capsys, "descend", write(fixtures.SELF_CONJUGATE_PROBLEM), "--format", "json")
    assert code == 0
    assert json.loads(out)["branch"] == "SelfConjugate"


def test_gb_examples(write, capsys):
    text = "field Q\nvars x1 x2\nideal:\n  x1\n  x2\n"
    assert run(capsys, "gb", write(text))[:2] == (0, "x1\nx2\n")
    text = "field Q\nvars x1 x2\nideal:\n  x1^2 - x2\n  x1\n"
    assert run(capsys, "gb", write(text), "--order", "lex")[:2] == (0, "x1\nx2\n")


def test_budget_exit(write, capsys, monkeypatch):
    path = write(fixtures.HUMBERT_PROBLEM)
    code, _, err = run(capsys, "descend", path, "--budget", "1")
    assert code == 3
    assert "budget" in err
    monkeypatch.setenv("REALDESCENT_BUDGET", "1")
    assert run(capsys, "descend", path)[0] == 3


def test_check(write, capsys):
    code, out, _ = run(capsys, "check", write(fixtures.HUMBERT_PROBLEM))
    assert code == 0
    assert "[PASS] symmetry_valid" in out
    assert run(capsys, "check", write(HUMBERT_IDENTITY))[0] == 2


def test_project(write, capsys):
    code, out, _ = run(capsys, "project", write(fixtures.HUMBERT_PROBLEM), "--keep", "t1,t2,t3,t4", "--format", "json")
    assert code == 0
    data = json.loads(out)
    ctx = VariableContext(data["kept"])
    got = Ideal([parse_poly(g, ctx, QI) for g in data["generators"]], ctx, QI)
    want = Ideal([parse_poly(g, ctx, QI) for g in fixtures.HUMBERT_Y], ctx, QI)
    assert ideal_equals(got, want)
    assert data["birational_certified"] is False


def test_project_empty_keep(write, capsys):
    assert run(capsys, "project", write(fixtures.TOY_PROBLEM), "--keep", ",")[0] == 1
    assert run(capsys, "project", write(fixtures.TOY_PROBLEM), "--keep", "t7")[0] == 1


@pytest.mark.parametrize(
    "text,needle",
    [
        ("field Q\nvars x1\nideal:\nsymmetry:\n  x1\n", "at least one generator"),
        ("field Q\nvars x1\nideal:\n  x5\nsymmetry:\n  x1\n", "x5"),
        ("field Q\nvars x1\nideal:\n  x1\n", "symmetry"),
    ],
)
def test_parse_errors_exit_1(write, capsys, text, needle):
    code, _, err = run(capsys, "descend", write(text))
    assert code == 1
    assert needle in err


def test_usage_errors_exit_1(capsys, write):
    assert run(capsys, "descend", write(fixtures.TOY_PROBLEM), "--order", "bogus")[0] == 1
    assert run(capsys, "descend", "/nonexistent/file")[0] == 1
    assert run(capsys)[0] == 1


def test_json_schema_and_text_agree(write, capsys):
    path = write(fixtures.HUMBERT_PROBLEM)
    _, js, _ = run(capsys, "descend", path, "--format", "json")
    _, txt, _ = run(capsys, "descend", path)
    data = json.loads(js)
    jsonschema.validate(data, load_schema())
    block = txt.split("Z: ")[1].split("\n\n")[0].splitlines()[1:]
    assert sorted(l.strip() for l in block) == sorted(data["z_generators"])
    assert data["w_status"]["status"] == "empty"
    assert len(data["r_components"]) == 11
    assert data["timings"] == {}


def test_timings_flag(write, capsys):
    _, js, _ = run(capsys, "descend", write(fixtures.TOY_PROBLEM), "--format", "json", "--timings")
    data = json.loads(js)
    jsonschema.validate(data, load_schema())
    assert "compute_Z" in data["timings"]


def test_deterministic_output(write, capsys, tmp_path):
    path = write(fixtures.HUMBERT_PROBLEM)
    outs = []
    for k in range(2):
        target = tmp_path / f"out{k}.json"
        assert run(capsys, "descend", path, "--format", "json", "--output", str(target))[0] == 0
        outs.append(target.read_bytes())
    assert outs[0] == outs[1]
    assert run(capsys, "descend", path)[1] == run(capsys, "descend", path)[1]


def test_stdin(monkeypatch, capsys):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO(fixtures.TOY_PROBLEM))
    code, out, _ = run(capsys, "descend", "-")
    assert code == 0
    assert "t1^2 + 2" in out


def test_no_verify_and_radical(write, capsys):
    path = write(fixtures.TOY_PROBLEM)
    code, out, _ = run(capsys, "descend", path, "--no-verify", "--format", "json")
    assert code == 0
    assert "pullback" not in json.loads(out)["certificates"]
    code, out, _ = run(capsys, "descend", path, "--radical", "--format", "json")
    assert code == 0
    assert json.loads(out)["equality_notion"] == "radical"


def test_module_entry_point():
    import subprocess
    import sys

    res = subprocess.run([sys.executable, "-m", "realdescent", "--help"], capture_output=True, text=True)
    assert res.returncode == 0
    assert "descend" in res.stdout
