import json
import subprocess
import sys

import pytest

from iceduality.acceptance import SuiteConfig
from iceduality.cli import ConfigError, load_config, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_pf_text(capsys):
    code, out, _ = run(capsys, "pf", "--m", "2", "--rows", "2", "--mu", "2,1", "--sigma", "1,2")
    assert code == 0
    assert "Z = -Phi*q^-1*z2" in out


def test_pf_json_iwahori(capsys):
    code, out, _ = run(capsys, "pf", "--m", "2", "--mu", "2,1", "--sigma", "1,2", "--mode", "iwahori", "--out", "json")
    assert code == 0
    data = json.loads(out)
    assert data["partition_function"] == "-q^-2*z2"
    assert data["exit_status"] == 0


def test_pf_states_dump(capsys):
    code, out, _ = run(capsys, "pf", "--m", "2", "--mu", "2,1", "--sigma", "1,2", "--states", "--out", "json")
    assert code == 0 and len(json.loads(out)["states"]) >= 1


def test_ybe_pass_and_fail(capsys):
    assert run(capsys, "ybe", "--check", "rtt", "--m", "2")[0] == 0
    assert run(capsys, "ybe", "--check", "rrr", "--m", "2")[0] == 0
    code, out, _ = run(capsys, "ybe", "--check", "rtt", "--m", "3", "--shift", "-1")
    assert code == 1 and "violation" in out


def test_demazure_verb(capsys):
    code, out, _ = run(capsys, "demazure", "--m", "2", "--mu", "2,1", "--sigma", "2,1", "--target", "1,2", "--out", "json")
    data = json.loads(out)
    assert code == 0
    assert data["transported"] == "-Phi*q^-1*z2"
    assert data["conventions"]["functional_equation_eps"] == "z^-alpha"


def test_tokuyama_and_duality_verbs(capsys):
    assert run(capsys, "tokuyama", "--n", "2", "--rows", "2", "--lambda", "1,0")[0] == 0
    code, out, _ = run(capsys, "duality", "--n", "3", "--theta", "1,2,0", "--mu", "5,3,1", "--out", "json")
    assert code == 0
    assert json.loads(out)["reports"][0]["notes"]["C"] == "-q^2"


def test_fock_verb(capsys):
    assert run(capsys, "fock", "--m", "2", "--energy", "3", "--degree", "2", "--currents")[0] == 0


@pytest.mark.parametrize("argv", [
    ["pf", "--m", "2", "--mu", "2", "--sigma", "1,2"],
    ["pf", "--m", "2", "--rows", "3", "--mu", "2,1", "--sigma", "1,2"],
    ["pf", "--m", "2", "--mu", "x", "--sigma", "1,2"],
    ["nope"],
    ["suite", "--only", "99"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err


def test_config_empty_file_gives_defaults(tmp_path):
    p = tmp_path / "c.cfg"
    p.write_text("# nothing\n\n")
    assert load_config(str(p)) == SuiteConfig()


def test_config_override(tmp_path):
    p = tmp_path / "c.cfg"
    p.write_text("fock_energy = 0\nfock_degree = 0  # trailing comment\n")
    cfg = load_config(str(p))
    assert cfg.fock_energy == 0 and cfg.fock_degree == 0 and cfg.max_rows == SuiteConfig().max_rows


@pytest.mark.parametrize("text,line", [
    ("max_rows = 2\nmax_rows = 3\n", 2),
    ("\nbogus = 1\n", 2),
    ("max_rows = two\n", 1),
    ("max_rows\n", 1),
])
def test_config_errors_carry_line(tmp_path, text, line):
    p = tmp_path / "c.cfg"
    p.write_text(text)
    with pytest.raises(ConfigError) as exc:
        load_config(str(p))
    assert exc.value.line == line


def test_suite_with_config(tmp_path, capsys):
    p = tmp_path / "c.cfg"
    p.write_text("fock_energy = 0\nfock_degree = 0\n")
    code, out, _ = run(capsys, "suite", "--config", str(p), "--only", "13")
    assert code == 0 and "PASS criterion 13" in out
    p.write_text("fock_energy = 1\nfock_energy = 2\n")
    code, _, err = run(capsys, "suite", "--config", str(p))
    assert code == 2 and "line 2" in err


def test_json_output_is_byte_deterministic():
    argv = [sys.executable, "-m", "iceduality.cli", "demazure", "--m", "3", "--mu", "4,2,0",
            "--sigma", "2,1,3", "--target", "3,1,2", "--out", "json"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and a
