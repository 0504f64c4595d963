import json
import subprocess
import sys

import pytest

from diagstrat.cli import main

LEVEL_ONE = {"flavor": "CB", "m": 1, "u": ["1/3"], "N": 4}
HALF = {"flavor": "CB", "m": 1, "u": ["1/2"], "N": 3}
BAD_BUBBLES = {"flavor": "CB", "m": 2, "u": ["1/5", "3/10"], "bubbles": ["1", "1"], "N": 3}


@pytest.fixture
def config_file(tmp_path):
    def write(raw, name="cfg.json"):
        p = tmp_path / name
        p.write_text(json.dumps(raw))
        return str(p)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_basis_count(capsys, config_file):
    code, out, _ = run(capsys, "basis", "--config", config_file(LEVEL_ONE), "--a", "2", "--b", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["count"] == 3 and len(doc["basis"]) == 3


def test_inline_config_and_criteria(capsys):
    code, out, _ = run(capsys, "criteria", "--config", json.dumps({"flavor": "CB", "m": 1, "u": ["1/2"]}))
    assert code == 0
    assert json.loads(out) == {"semisimple": False, "morita": False}


def test_failing_verification_exits_one(capsys, config_file):
    code, out, _ = run(capsys, "verify-decomposition", "--config", config_file(BAD_BUBBLES))
    assert code == 1
    assert json.loads(out)["pass"] is False


def test_passing_verification_exits_zero(capsys, config_file):
    code, out, _ = run(capsys, "verify-assumptions", "--config", config_file(HALF))
    assert code == 0 and json.loads(out)["pass"] is True


def test_config_errors_exit_two(capsys, config_file):
    code, out, err = run(capsys, "basis", "--config", config_file({"flavor": "XX"}), "--a", "1", "--b", "1")
    assert code == 2 and out == ""
    assert json.loads(err)["error"] == "INVALID_CONFIG"
    code, _, err = run(capsys, "basis", "--config", "{not json", "--a", "1", "--b", "1")
    assert code == 2 and json.loads(err)["error"] == "INVALID_CONFIG"
    code, _, _ = run(capsys, "basis", "--a", "1")
    assert code == 2


def test_truncation_error(capsys, config_file):
    code, _, err = run(capsys, "basis", "--config", config_file(LEVEL_ONE), "--a", "5", "--b", "1")
    assert code == 2 and json.loads(err)["error"] == "TRUNCATION_EXCEEDED"
    code, out, _ = run(capsys, "basis", "--config", config_file(LEVEL_ONE), "--a", "5", "--b", "1",
                       "--max-object", "6")
    assert code == 0 and json.loads(out)["count"] == 15


def test_output_is_byte_identical(capsys, config_file):
    path = config_file(HALF)
    args = ["decomposition", "--config", path, "--bgg"]
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second and first.endswith("\n")


def test_output_file(capsys, config_file, tmp_path):
    target = tmp_path / "out.json"
    code, out, _ = run(capsys, "crystal", "--config",
                       json.dumps({"flavor": "CK", "m": 1, "u": ["q"], "e": 3}), "--n", "3",
                       "-o", str(target))
    assert code == 0 and out == ""
    doc = json.loads(target.read_text())
    assert doc["count"] == 2 and doc["restricted"] == [[[2, 1]], [[1, 1, 1]]]


def test_pretty_tables(capsys, config_file):
    code, out, _ = run(capsys, "crystal", "--config",
                       json.dumps({"flavor": "CK", "m": 1, "u": ["q"], "e": 3}), "--n", "3", "--pretty")
    assert code == 0
    assert "count: 2" in out.splitlines()


def test_character_sources_agree(capsys, config_file):
    path = config_file(LEVEL_ONE)
    outs = []
    for src in ("paths", "module"):
        code, out, _ = run(capsys, "character", "--config", path, "--lambda", "[[1]]", "--length", "3",
                           "--source", src)
        assert code == 0
        outs.append(json.loads(out))
    assert outs[0] == outs[1] and len(outs[0]) == 3


def test_fock_apply(capsys):
    cfg = json.dumps({"flavor": "CB", "m": 1, "u": ["1/2"]})
    code, out, _ = run(capsys, "fock", "--config", cfg, "--apply", "1/2", "--lambda", "[[1]]")
    assert code == 0
    assert json.loads(out)["e_tilde"]["result"] == [{"label": [[]], "coeff": 1}, {"label": [[1, 1]], "coeff": 1}]
    code, _, err = run(capsys, "fock", "--config", cfg, "--apply", "1/7", "--lambda", "[[1]]")
    assert code == 2 and json.loads(err)["error"] == "CONTENT_OUTSIDE_I"


def test_cache_reuse(capsys, config_file, tmp_path, monkeypatch):
    monkeypatch.setenv("DIAGSTRAT_CACHE", str(tmp_path / "cache"))
    path = config_file(HALF)
    _, first, _ = run(capsys, "algebra", "--config", path, "--a", "3", "--radical")
    assert any((tmp_path / "cache").rglob("*.json"))
    _, second, _ = run(capsys, "algebra", "--config", path, "--a", "3", "--radical")
    assert first == second


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "diagstrat", "criteria", "--config",
                           json.dumps({"flavor": "CB", "m": 1, "u": ["1/3"]})],
                          capture_output=True, text=True, env={"DIAGSTRAT_CACHE": str(tmp_path),
                                                               "PATH": "/usr/bin:/bin"})
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"morita": True, "semisimple": True}


def test_accept_subset(capsys):
    code, out, err = run(capsys, "accept", "--only", "7")
    assert code == 0
    doc = json.loads(out)
    assert [r["id"] for r in doc] == [7] and doc[0]["pass"]
    assert "seconds" not in doc[0]
    assert err.startswith("criterion  7 ") and "PASS" in err


def test_compose_inline_diagrams(capsys, config_file):
    cap_cup = json.dumps({"bottom": 2, "top": 2, "pairs": [[1, 2], [3, 4]]})
    code, out, _ = run(capsys, "compose", "--config", config_file(LEVEL_ONE), "--g", cap_cup, "--f", cap_cup)
    assert code == 0
    # e . e = omega_0 e with omega_0 = 1 + 2/3
    assert json.loads(out) == [{"coeff": "5/3", "diagram": json.loads(cap_cup) | {"dots": {}}}]
