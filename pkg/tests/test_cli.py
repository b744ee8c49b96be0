import json

from knotconc.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_sig_knot(capsys):
    code, out, _ = run(capsys, "sig", "--knot", "T(2,3)", "--q", "3")
    assert code == 0
    assert "j = 1: -2" in out and "j = 2: -2" in out and "sigma^(3) = -4" in out


def test_sig_matrix_json(capsys):
    code, out, _ = run(capsys, "sig", "--matrix", "[[-1,1],[0,-1]]", "--json")
    assert code == 0
    obj = json.loads(out)
    assert obj["sigma_q"] == -2 and obj["per_j"] == {"1": -2}


def test_sig_unknot_all_zero(capsys):
    code, out, _ = run(capsys, "sig", "--knot", "unknot", "--q", "5")
    assert code == 0
    assert out.count(": 0") == 4 and "sigma^(5) = 0" in out


def test_sig_requires_matrix_for_unmatrixed_atom(capsys):
    code, _, err = run(capsys, "sig", "--knot", "T(3,7)")
    assert code == 2 and "Seifert matrix" in err


def test_theta_command(capsys):
    code, out, _ = run(capsys, "theta", "--expr", "T(3,7)", "--quiet")
    assert code == 0 and "theta = 6" in out
    code, out, _ = run(capsys, "theta", "--expr", "unknot", "--quiet")
    assert code == 0 and "theta = 0" in out


def test_theta_json_trace(capsys):
    code, out, _ = run(capsys, "theta", "--expr", "-(9_42) + Wh(T(2,3))", "--json")
    assert code == 0
    obj = json.loads(out)
    assert obj["result"]["exact"] is True
    assert obj["result"]["lower"] == {"numerator": 2, "denominator": 1}
    assert any("R5" in line for line in obj["result"]["justification"])
    assert obj["result"]["provenance"]


def test_theta_interval_output(capsys):
    code, out, _ = run(capsys, "theta", "--expr", "-T(2,5) + Wh(T(2,3))", "--quiet")
    assert code == 0 and "theta in [0, 1]" in out


def test_theta_m_command(capsys):
    code, out, _ = run(capsys, "theta-m", "--expr", "T(3,7)", "--m", "4", "--quiet")
    assert code == 0 and "theta = 4" in out


def test_genus_bound_command(capsys):
    code, out, _ = run(capsys, "genus-bound", "--expr", "T(3,7)",
                       "--rank", "3", "--class", "0,0,0")
    assert code == 0 and "g >= 6" in out


def test_genus_bound_compare(capsys):
    code, out, _ = run(capsys, "genus-bound", "--expr", "T(3,7)",
                       "--rank", "3", "--class", "2,0,0", "--compare")
    assert code == 0
    assert "g >= 5" in out
    assert "theta: 5   tau: 5   sig1: 3   sig2: -6" in out


def test_genus_bound_q3(capsys):
    code, out, _ = run(capsys, "genus-bound", "--expr", "T(2,7)", "--q", "3",
                       "--rank", "1", "--class", "0")
    assert code == 0 and "g >= 3" in out


def test_genus_bound_hypothesis_error(capsys):
    code, _, err = run(capsys, "genus-bound", "--expr", "T(3,7)",
                       "--rank", "2", "--class", "1,0")
    assert code == 2 and "not divisible" in err


def test_infer_command(capsys):
    code, out, _ = run(capsys, "infer", "--expr", "9_42")
    assert code == 0
    assert "theta = 0" in out and "mirror: theta = 1" in out
    assert "ledger facts used:" in out


def test_branch_cover_command(capsys):
    code, out, _ = run(capsys, "branch-cover", "--q", "3", "--b2x", "0",
                       "--sigmax", "0", "--genus", "1", "--sigq-out", "-8",
                       "--sigq-in", "-8")
    assert code == 0 and "b2      = 4" in out and "b_plus  = 2" in out


def test_branch_cover_inconsistent(capsys):
    code, _, err = run(capsys, "branch-cover", "--q", "3", "--b2x", "0",
                       "--sigmax", "0", "--genus", "1", "--self-int", "1",
                       "--sigq-out", "0")
    assert code == 2 and "inconsistent" in err


def test_usage_errors_exit_1(capsys):
    for argv in (["theta", "--expr", "T(3,7"],
                 ["theta", "--expr", "T(3,7)", "--q", "6"],
                 ["sig", "--knot", "a", "--matrix", "[[0]]"],
                 ["genus-bound", "--expr", "T(3,7)", "--rank", "2", "--class", "0"],
                 ["no-such-command"]):
        code, _, err = run(capsys, *argv)
        assert code == 1, argv


def test_unknown_atom_exit_2(capsys):
    code, _, err = run(capsys, "theta", "--expr", "mystery")
    assert code == 2 and "unknown knot atom" in err


def test_reproduce_list_and_sections(capsys):
    code, out, _ = run(capsys, "reproduce", "--list")
    assert code == 0 and "theta-torus-pipeline" in out
    code, out, _ = run(capsys, "reproduce", "--section", "4")
    assert code == 0
    assert "FAIL" not in out
    code, out, _ = run(capsys, "reproduce", "--section", "6")
    assert code == 0


def test_reproduce_full_reports_known_failures(capsys):
    # the published T(2,5) + -Wh(T(2,3)) values contradict the theta axioms,
    # so the full run reports exactly those two failures and exits 3
    code, out, _ = run(capsys, "reproduce")
    assert code == 3
    assert out.count("FAIL") == 2
    assert "theta-t25-whitehead" in out


def test_output_deterministic(capsys):
    _, out1, _ = run(capsys, "infer", "--expr", "-(9_42) + Wh(T(2,3))")
    _, out2, _ = run(capsys, "infer", "--expr", "-(9_42) + Wh(T(2,3))")
    assert out1 == out2


def test_custom_ledger_flag(tmp_path, capsys):
    path = tmp_path / "mini.json"
    path.write_text(json.dumps({
        "atoms": [{"name": "K", "seifert": [[-1, 1], [0, -1]]}],
        "facts": [{"knot": "K", "kind": "g4", "value": 1, "provenance": "t"}],
        "relations": [],
    }))
    code, out, _ = run(capsys, "theta", "--expr", "K", "--ledger", str(path), "--quiet")
    assert code == 0 and "theta = 1" in out  # sigma from the matrix, g4 fact


def test_missing_ledger_file_exit_2(capsys):
    code, _, err = run(capsys, "theta", "--expr", "unknot",
                       "--ledger", "/nonexistent/ledger.json")
    assert code == 2 and "ledger.json" in err


def test_bad_ledger_exit_2(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({
        "atoms": [{"name": "K"}],
        "facts": [{"knot": "K", "kind": "sigma", "value": 3, "provenance": "t"}],
        "relations": [],
    }))
    code, _, err = run(capsys, "theta", "--expr", "K", "--ledger", str(path))
    assert code == 2 and "sigma must be even" in err
