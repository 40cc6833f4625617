import json
import subprocess
import sys

import pytest

from bethepop.cli import build_parser, main
from conftest import DATA_DIR


def run_cli(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def data(name):
    return DATA_DIR / name


def test_population_example(capsys):
    code, out = run_cli(capsys, "population", "--data", data("a2_trivial.json"), "--seed-tuple", data("ones.json"))
    assert code == 0
    assert len(out["degreeVectors"]) == 6
    assert out["orbit"]["orbit_size"] == 6 and out["orbit"]["unreached"] == []


def test_verify_examples(capsys):
    code, out = run_cli(capsys, "verify", "--data", data("a2_trivial.json"), "--tuple", data("bad.json"))
    assert code == 0
    assert out["critical"] is False and out["reason"] == "non-generic"
    code, out = run_cli(capsys, "verify", "--data", data("a2_trivial.json"), "--tuple", data("ones.json"))
    assert out["critical"] is True


def test_identities_example(capsys):
    code, out = run_cli(capsys, "identities", "--trials", 200, "--max-s", 4)
    assert code == 0 and out["allPass"]
    assert all(entry["trials"] > 0 for entry in out["identities"].values())


def test_reproduce(capsys):
    args = ["reproduce", "--data", data("a2_trivial.json"), "--tuple", data("ones.json"), "--direction", 2]
    code, out = run_cli(capsys, *args, "--param", "3")
    assert code == 0 and out == {"critical": True, "tuple": [["1"], ["3", "1"]]}
    code, out = run_cli(capsys, *args, "--param", "inf")
    assert out["tuple"] == [["1"], ["1"]]


def test_space_operator_schubert(capsys):
    base = ["--data", data("sl2_n1.json"), "--tuple", data("one.json")]
    code, out = run_cli(capsys, "space", *base)
    assert code == 0 and out["frameMatches"]
    code, out = run_cli(capsys, "operator", *base)
    assert code == 0 and out["normalForm"]
    code, out = run_cli(capsys, "schubert", *base, "--d", 4)
    assert code == 0 and len(out["measured"]) == 2


def test_selfdual_space_file(capsys):
    code, out = run_cli(capsys, "selfdual", "--space", data("c2_space.json"))
    assert code == 0 and out["selfdual"]
    assert len(out["witt"]) == 3


def test_selfdual_from_b_data(capsys):
    code, out = run_cli(capsys, "selfdual", "--data", data("b2_trivial.json"), "--tuple", data("b2_pair.json"))
    assert code == 0 and out["selfdual"]


def test_fold_and_c1(capsys):
    code, out = run_cli(capsys, "fold", "--data", data("b2_trivial.json"), "--tuple", data("b2_pair.json"))
    assert code == 0 and out["critical"]["critical"]
    assert out["lifted"]["kind"] == "A"
    code, out = run_cli(capsys, "fold", "--data", data("c1_trivial.json"), "--tuple", data("c1_member.json"))
    assert code == 0 and out["critical"]["critical"]
    code, out = run_cli(capsys, "c1", "--y", '["1/8", "-1", "1"]')
    assert out["triple"][2] == ["1/2"]


def test_multiplicity_and_count(capsys):
    code, out = run_cli(capsys, "multiplicity", "--rank", 2, "--first", "1,1", "--second", "1,1", "--target", "1,1")
    assert code == 0 and out == {"multiplicity": 2}
    code, out = run_cli(capsys, "count-check", "--data", data("sl2_n2.json"), "--sl-shift")
    assert code == 0 and out["agrees"]


@pytest.mark.parametrize(
    "argv, code",
    [
        (["verify", "--data", "missing.json", "--tuple", "x.json"], "io"),
        (["multiplicity", "--rank", "2", "--first", "1", "--second", "1,1", "--target", "1,1"], "dimension"),
        (["c1", "--y", "not json"], "bad-poly"),
        (["count-check", "--data", str(DATA_DIR / "sl2_n1.json")], "hypotheses"),
    ],
)
def test_domain_errors_exit_one(capsys, argv, code):
    status, out = run_cli(capsys, *argv)
    assert status == 1
    assert out["code"] == code and set(out) == {"code", "detail", "error"}


@pytest.mark.parametrize("argv", [[], ["nope"], ["reproduce", "--data", "x"], ["identities", "--trials", "-3"]])
def test_usage_errors_exit_two(capsys, argv):
    assert main(argv) == 2


def test_help_exits_zero(capsys):
    assert main(["population", "--help"]) == 0
    assert "--seed-tuple" in capsys.readouterr().out


def test_out_file_and_determinism(tmp_path, capsys):
    argv = ["identities", "--trials", "20", "--per-pair", "3", "--seed", "4"]
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    assert main(argv + ["--out", str(first)]) == 0
    assert main(argv + ["--out", str(second)]) == 0
    assert first.read_bytes() == second.read_bytes()
    assert json.loads(first.read_text())["allPass"]


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("BETHE_SEED", "7")
    assert build_parser().parse_args(["identities"]).seed == 7
    assert build_parser().parse_args(["identities", "--seed", "2"]).seed == 2
    monkeypatch.delenv("BETHE_SEED")
    assert build_parser().parse_args(["identities"]).seed == 0


def test_module_entry_point():
    argv = [sys.executable, "-m", "bethepop", "verify", "--data", str(data("a2_trivial.json")),
            "--tuple", str(data("ones.json"))]
    first = subprocess.run(argv, capture_output=True, text=True)
    assert first.returncode == 0
    assert first.stdout == subprocess.run(argv, capture_output=True, text=True).stdout
