import json
import subprocess
import sys

import pytest

from twwchi.cli import main
from twwchi.graph import format_graph, parse_graph, shift2


@pytest.fixture
def c5_file(tmp_path, c5):
    p = tmp_path / "c5.txt"
    p.write_text(format_graph(c5))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_writes_parseable_graph(capsys, tmp_path):
    code, out, _ = run(capsys, "gen", "shift2", "5")
    assert code == 0 and parse_graph(out) == shift2(5)
    target = tmp_path / "g.txt"
    assert run(capsys, "gen", "gnp", "6", "0.5", "3", "-o", str(target))[0] == 0
    assert parse_graph(target.read_text()).n == 6


def test_usage_errors(capsys, c5_file):
    assert run(capsys, "gen", "nope", "3")[0] == 2
    assert run(capsys, "color", "/nonexistent/file")[0] == 2
    assert run(capsys, "verify", "--suite", "nope")[0] == 2
    assert run(capsys, "color", c5_file, "--method", "amf", "-d", "1")[0] == 2
    assert run(capsys, "color", c5_file, "--method", "quotient")[0] == 2
    assert run(capsys, "quotient", c5_file, "0-1,2-3")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["color", c5_file, "--method", "bogus"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_decompose_json(capsys, c5_file):
    code, out, _ = run(capsys, "decompose", c5_file, "--json")
    data = json.loads(out)
    assert code == 0 and data["schema"] == 1
    assert data["nodes"][0]["children"] == [1, 2]
    assert sorted(map(sorted, data["nodes"][0]["g_edges"])) == [[4, 7], [5, 6]]
    code, out, _ = run(capsys, "decompose", c5_file, "--kind", "subst", "--json")
    assert set(json.loads(out)["trees"]) == {"odd", "even"}


@pytest.mark.parametrize("method", ["exact", "amf", "subst", "mixedext"])
def test_color_methods(capsys, c5_file, method):
    code, out, _ = run(capsys, "color", c5_file, "--method", method, "--json")
    data = json.loads(out)
    assert code == 0 and data["proper"] and data["palette"] >= 3
    assert data["omega"] == 2


def test_color_amf_with_given_d(capsys, c5_file):
    code, out, _ = run(capsys, "color", c5_file, "--method", "amf", "-d", "3", "--strict", "--check-claims", "--json")
    assert code == 0 and json.loads(out)["accounting"]["d"] == 3


def test_contract_failures_exit_one(capsys, c5_file):
    assert run(capsys, "color", c5_file, "--method", "cograph")[0] == 1
    assert run(capsys, "color", c5_file, "--method", "amf", "-d", "2", "--strict")[0] == 1
    assert run(capsys, "color", c5_file, "--method", "amf", "-d", "2")[0] == 1


def test_quotient(capsys, tmp_path):
    f = tmp_path / "s.txt"
    f.write_text(format_graph(shift2(5)))
    code, out, _ = run(capsys, "quotient", str(f), "0-0,1-2,3-5,6-9", "--json")
    data = json.loads(out)
    assert code == 0 and data["n"] == 4 and len(data["edges"]) == 6
    code, out, err = run(capsys, "quotient", str(f), "0-1,2-9", "--json")
    assert code == 1 and "invalid RMP" in err
    assert json.loads(out)["violation"]["ok"] is False
    code, _, _ = run(capsys, "color", str(f), "--method", "quotient", "--partition", "0-0,1-2,3-5,6-9")
    assert code == 0


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "corner", "--max-n", "2", "--json")
    data = json.loads(out)
    assert code == 0 and data["passed"] and data["cases"] > 0


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("TWWCHI_SEED", "5")
    _, out, _ = run(capsys, "verify", "--suite", "depth", "--samples", "3", "--json")
    assert json.loads(out)["seed"] == 5
    monkeypatch.setenv("TWWCHI_SEED", "x")
    assert run(capsys, "verify", "--suite", "depth")[0] == 2


def test_module_entry_point(c5_file):
    res = subprocess.run([sys.executable, "-m", "twwchi", "color", c5_file], capture_output=True, text=True)
    assert res.returncode == 0 and "proper True" in res.stdout
