import json
from fractions import Fraction

import pytest

from qhsuper import cli
from qhsuper.cli import ConfigError, build_config, load_config, main
from qhsuper.qhsalg import GUARD_ENV


def write(tmp_path, text, name="run.toml"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def run_main(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


# -- configuration

def test_preset_config(tmp_path):
    cfg = load_config(write(tmp_path, '[datum]\npreset = "A2"\n[run]\ncommand = "cyclo"\nlambda = [1, 0]\n'))
    assert cfg.datum.name == "A2" and cfg.lam == (1, 0)
    assert cfg.max_degree == 12 and cfg.guards == cli.DEFAULT_GUARDS
    echoed = cfg.to_json()
    assert echoed["guards"] == cli.DEFAULT_GUARDS and echoed["qparams"]


def test_cartan_zero_pattern(tmp_path):
    path = write(tmp_path, "[datum]\nlabels = [1, 2]\ncartan = [[2, -1], [0, 2]]\n"
                           "symmetrizers = [1, 1]\nparity = [0, 0]\n[run]\ncommand = \"nf\"\n")
    with pytest.raises(ConfigError, match="datum.cartan"):
        load_config(path)


def test_odd_coloring(tmp_path):
    path = write(tmp_path, "[datum]\nlabels = [1, 2]\ncartan = [[2, -1], [-1, 2]]\n"
                           "symmetrizers = [1, 1]\nparity = [1, 0]\n[run]\ncommand = \"nf\"\n")
    with pytest.raises(ConfigError, match="odd"):
        load_config(path)


def test_inline_datum_and_qparams(tmp_path):
    path = write(tmp_path, "[datum]\nlabels = [1, 2]\ncartan = [[2, -1], [-1, 2]]\n"
                           "symmetrizers = [1, 1]\nparity = [0, 0]\n"
                           "[[qparams]]\ni = 1\nj = 2\nr = 1\ns = 0\nt = \"2\"\n"
                           "[[qparams]]\ni = 1\nj = 2\nr = 0\ns = 1\nt = \"1/3\"\n"
                           "[run]\ncommand = \"dim\"\n")
    cfg = load_config(path)
    assert cfg.datum.name == "custom"
    assert sorted(cfg.qparams.terms(1, 2)) == [(0, 1, Fraction(1, 3)), (1, 0, Fraction(2))]


def test_bad_qparams_path():
    with pytest.raises(ConfigError, match=r"qparams\[0\]"):
        build_config({"datum": {"preset": "A2"}, "qparams": [{"i": 1, "j": 2, "r": 1}],
                      "run": {"command": "nf"}})


def test_parse_error_names_file(tmp_path):
    path = write(tmp_path, "[datum\npreset = 1\n")
    with pytest.raises(ConfigError, match="line"):
        load_config(path)


def test_wrong_lambda_length():
    with pytest.raises(ConfigError, match="run.lambda"):
        build_config({"datum": {"preset": "A2"}, "run": {"command": "cyclo", "lambda": [1]}})


def test_unknown_guard():
    with pytest.raises(ConfigError, match="guards.speed"):
        build_config({"datum": {"preset": "A2"}, "run": {"command": "nf"}, "guards": {"speed": 1}})


def test_flags_override_file(tmp_path):
    path = write(tmp_path, '[datum]\npreset = "A2"\n[run]\ncommand = "cyclo"\nlambda = [1, 0]\n')
    cfg = load_config(path, {"lambda": "0,1"})
    assert cfg.datum.name == "A2" and cfg.lam == (0, 1)


# -- commands

def test_verify_braid(capsys):
    code, report, _ = run_main(capsys, "verify", "braid", "--preset", "A1odd", "--n", "3")
    assert code == 0 and report["pass"]


def test_cyclo_dims(capsys):
    code, report, _ = run_main(capsys, "cyclo", "--preset", "A1odd", "--L", "2", "--beta", "1")
    assert code == 0
    (result,) = report["results"]
    assert result["dims"] == {"0": 1, "2": 1}
    assert result["character"] == {"even": {"0": 1}, "odd": {"2": 1}}


def test_nf_command(capsys):
    code, report, _ = run_main(capsys, "nf", "--preset", "A1odd", "--word", "t1 x2 e(1,1)")
    assert code == 0
    assert "x1t1e(1,1)" in json.dumps(report)


@pytest.mark.slow
def test_suite_a2(capsys):
    code, report, _ = run_main(capsys, "suite", "--preset", "A2", "--L", "1,0", "--height", "3")
    assert code == 0 and report["pass"]
    assert report["summary"]["failed"] == 0 and report["summary"]["checks"] > 50


@pytest.mark.parametrize("argv", [["simples", "--preset", "A2", "--L", "1,1", "--beta", "1,1"],
                                  ["oracle", "--preset", "A2", "--L", "1,1", "--height", "2"],
                                  ["character", "--preset", "A1odd", "--L", "2", "--beta", "2"],
                                  ["dim", "--preset", "A2", "--beta", "1,1"]])
def test_commands_succeed(capsys, argv):
    code, report, _ = run_main(capsys, *argv)
    assert code == 0 and report["pass"]


@pytest.mark.parametrize("check", ["relations", "intertwiner", "qp", "sl2", "perfect", "pi",
                                   "mackey", "boson", "oracle-match", "integrability", "dims",
                                   "kernel", "ses"])
def test_every_check_runs(capsys, check):
    code, report, _ = run_main(capsys, "verify", check, "--preset", "A1odd", "--L", "2",
                               "--height", "1", "--n", "2")
    assert code == 0, report


def test_deterministic_output(tmp_path, capsys):
    outs = []
    for k in range(2):
        path = tmp_path / f"out{k}.json"
        assert main(["simples", "--preset", "A2", "--L", "1,1", "--beta", "1,1", "--output", str(path)]) == 0
        report = json.loads(path.read_text())
        report["config"]["output"] = None
        outs.append(json.dumps(report))
    assert outs[0] == outs[1]
    first = capsys.readouterr()
    main(["cyclo", "--preset", "A1odd", "--L", "2", "--beta", "2"])
    main(["cyclo", "--preset", "A1odd", "--L", "2", "--beta", "2"])
    text = capsys.readouterr().out
    half = len(text) // 2
    assert text[:half] == text[half:]
    assert first is not None


# -- exit codes

def test_guard_exit(capsys, monkeypatch):
    monkeypatch.delenv(GUARD_ENV, raising=False)
    code, _, err = run_main(capsys, "dim", "--preset", "A1", "--beta", "5")
    assert code == 3
    assert "max_height" in err


def test_guard_lifted_by_environment(tmp_path, capsys, monkeypatch):
    path = write(tmp_path, '[datum]\npreset = "A2"\n[run]\ncommand = "nf"\nword = "x1 x2 e(1,2)"\n'
                           "[guards]\nword_length = 1\n")
    monkeypatch.delenv(GUARD_ENV, raising=False)
    code, _, err = run_main(capsys, "nf", "--config", path)
    assert code == 3 and "word_length" in err
    monkeypatch.setenv(GUARD_ENV, "1")
    code, report, _ = run_main(capsys, "nf", "--config", path)
    assert code == 0 and report["pass"]


def test_config_exit(tmp_path, capsys):
    path = write(tmp_path, "[datum]\nlabels = [1, 2]\ncartan = [[2, -1], [0, 2]]\n"
                           "symmetrizers = [1, 1]\nparity = [0, 0]\n")
    code, _, err = run_main(capsys, "nf", "--config", path)
    assert code == 2 and "datum" in err


def test_missing_argument_exit(capsys):
    code, _, err = run_main(capsys, "nf", "--preset", "A2")
    assert code == 2 and "--word" in err


def test_failed_check_exit(capsys, monkeypatch):
    monkeypatch.setitem(cli.VERIFY, "braid", lambda cfg: [{"check": "braid", "pass": False}])
    code, report, _ = run_main(capsys, "verify", "braid", "--preset", "A1", "--n", "2")
    assert code == 1 and not report["pass"] and report["summary"]["failed"] == 1
