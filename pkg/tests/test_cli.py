import json

import pytest

from distvar.cli import build_parser, main


def run_cli(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *args):
    code, out, err = run_cli(capsys, *args, "--json")
    assert code == 0, err
    return json.loads(out)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def test_model_command(capsys):
    data = run_json(capsys, "model", "--model", "F")
    assert data["dimension"] == 7
    assert data["degree"] == 3
    assert len(data["generators"]) == 1


def test_degree_bound_command(capsys):
    data = run_json(capsys, "degree", "--model", "F", "--config", "u_both",
                    "--bound")
    assert data["bound"] == 18


def test_degree_exact_command(capsys):
    data = run_json(capsys, "degree", "--model", "F", "--config", "v_right")
    assert data["degree"] == 8


def test_degree_from_ideal_file(capsys, tmp_path):
    path = tmp_path / "conic.txt"
    path.write_text("# a smooth conic\nx0*x2 - x1^2\n")
    data = run_json(capsys, "degree", "--ideal", str(path), "--u", "0,1,1")
    assert data["degree"] == 3


def test_distort_command(capsys):
    data = run_json(capsys, "distort", "--model", "F", "--config", "v_right")
    assert data["u"] == [0, 0, 1, 0, 0, 1, 0, 0, 1]
    assert data["n_generators"] > 3


def test_cayley_command(capsys):
    data = run_json(capsys, "cayley", "--model", "F", "--config", "two_param")
    assert data["r"] == 2
    assert len(data["exponent_matrix"]) == 9 + 2
    assert "iterated" in data


def test_template_command(capsys, tmp_path):
    out = tmp_path / "tmpl.json"
    data = run_json(capsys, "template", "--no-validate", "--out", str(out))
    assert data["rows"] == 160
    assert data["cols"] == 126
    assert out.exists()


def test_solve_command(capsys, tmp_path):
    from distvar.simulate import SceneConfig, generate_trial
    corrs, _ = generate_trial(SceneConfig(n_trials=1, seed=0), 0)
    path = tmp_path / "corrs.json"
    path.write_text(json.dumps([{"U1": list(c.U1), "U2": list(c.U2)}
                                for c in corrs]))
    data = run_json(capsys, "solve", "--corrs", str(path))
    assert data["n_candidates"] == 23
    assert data["n_real"] % 2 == 1


def test_simulate_command(capsys, tmp_path):
    out = tmp_path / "stats.json"
    csvp = tmp_path / "stats.csv"
    data = run_json(capsys, "simulate", "--trials", "5",
                    "--out", str(out), "--csv", str(csvp))
    assert data["summary"]["n_trials"] == 5
    assert out.exists() and csvp.exists()


# ---------------------------------------------------------------------------
# errors and exit codes
# ---------------------------------------------------------------------------

def test_missing_subcommand_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        build_parser().parse_args([])
    assert exc.value.code == 2


def test_computation_error_exit_code(capsys):
    code, _, err = run_cli(capsys, "degree", "--model", "F")
    assert code == 1
    assert "error" in err


def test_bad_ideal_file(capsys, tmp_path):
    path = tmp_path / "empty.txt"
    path.write_text("# nothing here\n")
    code, _, err = run_cli(capsys, "degree", "--ideal", str(path),
                           "--u", "0,1,1")
    assert code == 1


def test_bad_distortion_vector(capsys):
    code, _, err = run_cli(capsys, "degree", "--model", "F", "--u", "a,b")
    assert code == 1
