import json
import subprocess
import sys

import pytest

from _support import G1, PATH
from evenartin.cli import main
from evenartin.presentation import format_graph


@pytest.fixture
def graphs(tmp_path):
    files = {
        "G1": format_graph(G1),
        "path": format_graph(PATH),
        "odd": "vertex a\nvertex b\nedge a b 3\n",
        "nonfc": "vertex a\nvertex b\nvertex c\nedge a b 4\nedge b c 4\nedge a c 2\n",
        "broken": "vertex a\nvertex b\nedge a b x\n",
    }
    out = {}
    for name, text in files.items():
        p = tmp_path / f"{name}.graph"
        p.write_text(text)
        out[name] = str(p)
    return out


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_eq_equal(capsys, graphs):
    assert run(capsys, "eq", graphs["G1"], "z x z x", "x z x z")[:2] == (0, "equal\n")


def test_eq_distinct(capsys, graphs):
    assert run(capsys, "eq", graphs["G1"], "z x", "x z")[:2] == (1, "distinct\n")


def test_eq_oracle_flag(capsys, graphs):
    code, out, _ = run(capsys, "--oracle", "eq", graphs["G1"], "z x z x", "x z x z")
    assert code == 0 and out == "equal\noracle: proven-trivial\n"


def test_check(capsys, graphs):
    assert run(capsys, "check", graphs["G1"])[:2] == (0, "even: yes\nfc: yes\nspherical: yes\n")
    code, out, _ = run(capsys, "check", graphs["odd"])
    assert code == 3 and "odd label" in out
    code, out, _ = run(capsys, "check", graphs["nonfc"])
    assert code == 3 and "triangle a b c" in out


def test_parse_error_exit_code(capsys, graphs):
    code, _, err = run(capsys, "nf", graphs["broken"], "a")
    assert code == 2 and "line 3, column 10" in err
    code, _, err = run(capsys, "nf", graphs["G1"], "a b^")
    assert code == 2 and "column 3" in err
    assert run(capsys, "nf", graphs["G1"], "q")[0] == 2


def test_precondition_exit_code(capsys, graphs):
    code, _, err = run(capsys, "nf", graphs["nonfc"], "a")
    assert code == 3 and "triangle a b c" in err


def test_nf_and_act(capsys, graphs):
    assert run(capsys, "nf", graphs["G1"], "z x z x")[1] == \
        "(((() ; b[1|1]^1 b[1|1]^1) ; b[z|1]^1 b[1|1]^1) ; 1)\n"
    assert run(capsys, "act", graphs["G1"], "x z x z", "--at", "z")[1] == "(x^2 ; b[x|1]^1 b[1|1]^1)\n"


def test_tower_and_split(capsys, graphs):
    assert run(capsys, "tower", graphs["G1"])[1] == "a 1\nx 2\nz 1\n"
    assert run(capsys, "split", graphs["path"])[1] == "X: b c\nY: a b\nZ: b\n"
    assert run(capsys, "split", graphs["G1"])[1] == "complete\n"


def test_separate(capsys, graphs, monkeypatch):
    code, out, _ = run(capsys, "separate", graphs["G1"], "a")
    assert code == 0 and out.startswith("target: Z/2\n") and out.endswith("image -> 1\n")
    assert run(capsys, "separate", graphs["G1"], "1")[:2] == (1, "trivial-input\n")
    assert run(capsys, "separate", graphs["G1"], "z x z^-1 x^-1", "--max-degree", "2")[:2] == (1, "not-found\n")
    monkeypatch.setenv("ARTIN_MAX_DEGREE", "3")
    assert run(capsys, "separate", graphs["G1"], "a", "--max-degree", "4")[0] == 3


def test_json_mirrors_text(capsys, graphs):
    code, out, _ = run(capsys, "--format", "json", "eq", graphs["G1"], "z x", "x z")
    assert code == 1 and json.loads(out) == {"verdict": "distinct"}
    doc = json.loads(run(capsys, "--format", "json", "separate", graphs["path"], "a c a^-1 c^-1")[1])
    assert doc["target"] == "S3" and set(doc["assignment"]) == {"a", "b", "c"}
    doc = json.loads(run(capsys, "--format", "json", "tower", graphs["G1"])[1])
    assert doc == {"stages": [{"vertex": "a", "rank": 1}, {"vertex": "x", "rank": 2}, {"vertex": "z", "rank": 1}]}


def test_deterministic_subprocess(graphs):
    cmd = [sys.executable, "-m", "evenartin.cli", "nf", graphs["G1"], "z x a^-1 z^2 x^-1"]
    outs = {subprocess.run(cmd, capture_output=True, text=True, check=True).stdout for _ in range(3)}
    assert len(outs) == 1


def test_usage_error_is_a_parse_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["eq", "only-one-arg"])
    assert info.value.code == 2
