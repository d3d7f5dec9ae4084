import json

import pytest

from lattice_commutant.cli import main


def run(capsys, *argv):
    code = main(["--quiet", *argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_phi_renders_alpha_form(capsys):
    code, out, _ = run(capsys, "phi", "--n", "1", "--format", "text")
    assert code == 0
    assert out.strip() == "3/16*a(-1)^2*e[2] - 1/8*a(-2)*e[2]"


def test_phi_varpi_form(capsys):
    _, out, _ = run(capsys, "phi", "--n", "1", "--osc", "w")
    assert out.strip() == "3/4*w(-1)^2*e[2] - 1/4*w(-2)*e[2]"


def test_jet_series_ends_with_5q5(capsys):
    code, out, _ = run(capsys, "jet", "--ring", "RC", "--max-weight", "5")
    assert code == 0
    assert out.strip().endswith("+ 5q^5")


def test_jet_mismatch_exits_one(capsys):
    code, out, _ = run(capsys, "jet", "--ring", "RC", "--max-weight", "5", "--space", "C")
    assert code == 1
    assert "first mismatch at q^5: 5 vs 4" in out


def test_jet_from_json_file(capsys, tmp_path):
    path = tmp_path / "ring.json"
    path.write_text(json.dumps({"vars": [["x", 1]], "rels": ["x^2"]}), encoding="utf-8")
    code, out, _ = run(capsys, "jet", "--ring", str(path), "--max-weight", "4", "--space", "W")
    assert code == 0
    assert out.startswith("1 + q + q^2 + q^3 + 2q^4")


def test_verify_borcherds(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "borcherds", "--max-weight", "2")
    assert code == 0 and out.startswith("PASS borcherds_exhaustive")


def test_json_output_is_deterministic(capsys):
    argv = ("verify", "--suite", "borcherds-sampled", "--max-weight", "4", "--seed", "5", "--format", "json")
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    data = json.loads(first)
    assert data["passed"] and data["reports"][0]["checked"] == 500


@pytest.mark.parametrize(
    "argv",
    [
        ("char", "--space", "C", "--max-weight", "6"),
        ("commutant", "--of", "W", "--in", "VA1", "--max-weight", "5"),
        ("duality", "--max-weight", "4"),
        ("zhu", "--space", "C", "--max-weight", "5"),
        ("zhu", "--space", "C", "--left", "phi1", "--right", "phi2"),
        ("ope", "--left", "phi1", "--right", "phi1"),
        ("basis", "--space", "Wcirc", "--max-weight", "3"),
        ("sl2", "--max-weight", "5"),
        ("generators", "--max-weight", "4"),
    ],
)
def test_commands_pass(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0, out
    code, out, _ = run(capsys, *argv, "--format", "json")
    assert code == 0 and json.loads(out)["passed"]


def test_ope_values(capsys):
    _, out, _ = run(capsys, "ope", "--left", "phi1", "--right", "phi1")
    assert "phi1(1)phi1 = -25/32*e[4]" in out
    assert "phi1(0)phi1 = -25/32*a(-1)*e[4]" in out


def test_output_file(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, out, _ = run(capsys, "char", "--space", "W", "--format", "json", "--output", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text(encoding="utf-8"))["space"] == "W"


@pytest.mark.parametrize(
    "argv",
    [
        ("phi",),
        ("zhu", "--space", "Wcirc"),
        ("commutant", "--of", "X"),
        ("ope", "--left", "phi1"),
        ("ope", "--left", "w(3)", "--right", "phi1"),
        ("jet", "--ring", "/nonexistent.json"),
    ],
)
def test_usage_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_argparse_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["phi", "--max-weight", "-1"])
    assert exc.value.code == 2


def test_progress_goes_to_stderr(capsys):
    code = main(["duality", "--max-weight", "2"])
    cap = capsys.readouterr()
    assert code == 0
    assert "kernel charge=" in cap.err and "kernel charge=" not in cap.out
