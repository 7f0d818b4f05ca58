import json
import subprocess
import sys

import pytest

from stabforce import system_to_json
from stabforce.cli import main
from stabforce.ordinal import parse_ordinal as O
from stabforce.poset import chain_to_dict, ChainPresentation
from stabforce.simulate import make_pattern, pattern_to_dict


@pytest.fixture
def system_file(tmp_path, pstar):
    path = tmp_path / "p.json"
    path.write_text(system_to_json(pstar), encoding="utf-8")
    return str(path)


@pytest.fixture
def p3_file(tmp_path, pattern_p3):
    path = tmp_path / "p3.json"
    path.write_text(json.dumps(pattern_to_dict(pattern_p3)), encoding="utf-8")
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_rel(capsys, system_file):
    code, out, _ = run_cli(capsys, "rel", "--k", "1", "7", "w*3", system_file)
    assert (code, out.strip()) == (0, "false")
    code, out, _ = run_cli(capsys, "rel", "--k", "1", "3", "w*3", system_file)
    assert (code, out.strip()) == (0, "true")
    code, out, _ = run_cli(capsys, "rel", "--json", "--k", "1", "3", "w*3", system_file)
    assert json.loads(out)["lt"] is True


def test_preds(capsys, system_file):
    code, out, _ = run_cli(capsys, "preds", "--k", "1", "w*3", system_file)
    assert code == 0 and out.strip() == "[0, 6) u [w*2, w*3)"
    code, out, _ = run_cli(capsys, "preds", "--json", "--k", "1", "w*3", system_file)
    assert json.loads(out)["intervals"] == [["0", "6"], ["w*2", "w*3"]]


def test_validate_exit_codes(capsys, tmp_path, system_file):
    code, out, _ = run_cli(capsys, "validate", system_file)
    assert (code, out.strip()) == (0, "valid")
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"bound": "w*3", "levels": {}}), encoding="utf-8")
    code, out, _ = run_cli(capsys, "validate", str(bad))
    assert code == 1 and "V1" in out
    garbled = tmp_path / "garbled.json"
    garbled.write_text("{not json", encoding="utf-8")
    code, _, err = run_cli(capsys, "validate", str(garbled))
    assert code == 2 and "input error" in err
    noncanon = tmp_path / "noncanon.json"
    noncanon.write_text(json.dumps({"bound": "w+w", "levels": {}}), encoding="utf-8")
    code, _, err = run_cli(capsys, "validate", str(noncanon))
    assert code == 2


def test_extend(capsys, system_file):
    code, out, _ = run_cli(capsys, "extend", "--to", "w*4", system_file)
    assert code == 0 and json.loads(out)["bound"] == "w*4+1"
    code, out, _ = run_cli(capsys, "extend", "--chain-limit", "1", "--target", "5",
                           system_file)
    assert code == 0
    assert json.loads(out)["levels"]["2"] == {"w*4": "5"}
    code, _, err = run_cli(capsys, "extend", "--chain-limit", "1", "--target", "7",
                           system_file)
    assert code == 1 and "not reachable" in err
    code, _, err = run_cli(capsys, "extend", system_file)
    assert code == 2


def test_infimum(capsys, tmp_path, pstar, qstar):
    chain = tmp_path / "chain.json"
    chain.write_text(json.dumps(chain_to_dict(
        ChainPresentation((pstar, qstar), O("w*5"), ell=2))), encoding="utf-8")
    code, out, _ = run_cli(capsys, "infimum", str(chain))
    assert code == 0 and json.loads(out)["bound"] == "w*5+1"


def test_generic(capsys, system_file):
    code, out, _ = run_cli(capsys, "generic", system_file,
                           "--dense", "taller_than:w^2", "--budget", "16", "--json")
    assert code == 0
    assert json.loads(out)["system"]["bound"] == "w^2+1"
    code, _, err = run_cli(capsys, "generic", system_file,
                           "--dense", "top_chain_limit:1:7", "--budget", "6")
    assert code == 1 and "budget exhausted" in err
    code, _, err = run_cli(capsys, "generic", system_file, "--dense", "bogus:1")
    assert code == 2


def test_generic_poset_params(capsys, system_file):
    code, out, _ = run_cli(capsys, "generic", system_file, "--json",
                           "--kappa", "w^3", "--ell", "2", "--gamma", "0",
                           "--dense", "taller_than:w*5", "--budget", "8")
    assert code == 0 and json.loads(out)["inPoset"] is True
    code, _, err = run_cli(capsys, "generic", system_file,
                           "--kappa", "w^3", "--ell", "1", "--gamma", "7")
    assert code == 1 and "not in P(" in err


def test_simulate(capsys, p3_file):
    code, out, _ = run_cli(capsys, "simulate", p3_file, "--grid", "1,w,w*8")
    assert code == 0
    assert "requirements: PASS" in out
    assert "stable-pair ordering: PASS" in out
    assert "survivors: none" in out
    code, out, _ = run_cli(capsys, "simulate", p3_file, "--json", "--grid", "0,w*7")
    payload = json.loads(out)
    assert payload["requirements"]["passed"] is True
    assert payload["minimality"]["survivors"] == ["0", "w*7"]


def test_simulate_invalid_pattern(capsys, tmp_path):
    bad = tmp_path / "bad_pattern.json"
    bad.write_text(json.dumps(pattern_to_dict(make_pattern([("w^2", True, [])]))),
                   encoding="utf-8")
    code, out, _ = run_cli(capsys, "simulate", str(bad))
    assert code == 1 and "A1" in out


def test_export_dot(capsys, system_file):
    code, out, _ = run_cli(capsys, "export-dot", "--k", "1", system_file)
    assert code == 0
    assert out.startswith("digraph level1 {")
    assert '"w*2" -> "w*3";' in out
    assert '"w*2" [shape=box];' in out
    code, out2, _ = run_cli(capsys, "export-dot", "--k", "1", "--mark", "5", system_file)
    assert '"5" [penwidth=2];' in out2


def test_selftest(capsys):
    code, out, _ = run_cli(capsys, "selftest", "--seed", "2", "--systems", "8")
    assert code == 0 and out.startswith("PASS")


def test_cli_determinism(capsys, system_file, p3_file):
    runs = []
    for _ in range(2):
        chunks = []
        for argv in (["validate", "--json", system_file],
                     ["preds", "--json", "--k", "2", "w*3", system_file],
                     ["export-dot", "--k", "1", system_file],
                     ["simulate", "--json", p3_file, "--grid", "0,w,w*7"]):
            code, out, err = run_cli(capsys, *argv)
            chunks.append((code, out, err))
        runs.append(chunks)
    assert runs[0] == runs[1]


def test_console_entry_point(tmp_path, pstar):
    path = tmp_path / "p.json"
    path.write_text(system_to_json(pstar), encoding="utf-8")
    res = subprocess.run([sys.executable, "-m", "stabforce", "rel", "--k", "1",
                          "5", "w*3", str(path)], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "true"


def test_duplicate_json_keys_rejected(capsys, tmp_path):
    path = tmp_path / "dup.json"
    path.write_text('{"bound": "w+1", "levels": {}, "bound": "w+1"}', encoding="utf-8")
    code, _, err = run_cli(capsys, "validate", str(path))
    assert code == 2 and "duplicate" in err
