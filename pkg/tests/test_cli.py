import json

from dwork_forge.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_hg_trace(capsys):
    code, out = run_cli(capsys, "hg-trace", "--N", "3", "--n", "2",
                        "--q", "7", "--x", "3")
    assert code == 0
    data = json.loads(out)
    assert data["trace"] == [2, 0] and data["R"] == [1, 2]


def test_hg_charpoly_with_slopes(capsys):
    code, out = run_cli(capsys, "hg-charpoly", "--N", "3", "--n", "2",
                        "--q", "7", "--x", "3", "--l", "7")
    assert code == 0
    data = json.loads(out)
    assert data["checks"] == {"det": "pass", "purity": "pass"}
    assert data["slopes"] == ["0/1", "1/1"]
    assert data["coeffs"][2] == [1, 0]


def test_hg_scan_summary(capsys):
    code, out = run_cli(capsys, "hg-scan", "--N", "3", "--n", "2", "--q", "7")
    assert code == 0
    data = json.loads(out)
    assert data["summary"] == {"det_purity_all_pass": True, "count": 5}


def test_hg_scan_rejects_bad_config(capsys):
    code, _ = run_cli(capsys, "hg-scan", "--N", "3", "--n", "2", "--q", "11")
    assert code == 2  # 3 does not divide 10


def test_ordinary_scan_csv(capsys):
    code, out = run_cli(capsys, "ordinary-scan", "--N", "3", "--n", "2",
                        "--l", "7", "--d", "1")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == ("x_dlog,u_x,trace_mod_lambda,norm_u,"
                        "identity_ok,min_slope,slopes")
    assert len(lines) == 6
    assert all(line.split(",")[4] == "1" for line in lines[1:])


def test_breuil_generic_frame(capsys):
    code, out = run_cli(capsys, "breuil-generic", "--p", "5", "--e", "1",
                        "--f", "1", "--s", "0", "--t", "1")
    assert code == 0
    frame = json.loads(out)["frames"][0]
    assert frame["n"] == ["-1/2"] and frame["r"] == [3]
    assert frame["obstruction"] == {"i": 0, "x": -1}
    assert frame["solver"] == {"witness": "infeasible", "in_window": "feasible"}


def test_breuil_oracle(capsys):
    code, out = run_cli(capsys, "breuil-oracle", "--p", "5", "--e", "2",
                        "--f", "1", "--s", "3", "--t", "0", "--y", "1:1")
    assert code == 0
    data = json.loads(out)
    assert data["forbidden_degrees"] == [[1]]
    assert data["monodromy"] == "infeasible"
    assert data["image_windows"] == [[2, 3]]


def test_breuil_chain(capsys):
    code, out = run_cli(capsys, "breuil-chain", "--d", "2", "--e", "1", "--f", "1")
    assert code == 0
    assert json.loads(out)["chains_checked"] == 1


def test_unitary_normalize(capsys):
    code, out = run_cli(capsys, "unitary-normalize", "--q", "5",
                        "--matrix", "[[[2,0],[0,0]],[[0,0],[3,0]]]")
    assert code == 0
    assert json.loads(out)["certificate"] is True


def test_unitary_sym(capsys):
    code, out = run_cli(capsys, "unitary-sym", "--p", "11", "--beta", "2",
                        "--n", "2", "--m", "3")
    assert code == 0
    data = json.loads(out)
    assert len(data["spectrum_dlogs"]) == 3


def test_byte_identical_reruns(capsys, tmp_path):
    outs = []
    for _ in range(2):
        code, out = run_cli(capsys, "hg-scan", "--N", "5", "--n", "2",
                            "--q", "11", "--l", "11")
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]


def test_out_file(capsys, tmp_path):
    path = tmp_path / "t.json"
    code, _ = run_cli(capsys, "hg-trace", "--N", "3", "--n", "2", "--q", "7",
                      "--x", "3", "--out", str(path))
    assert code == 0
    assert json.loads(path.read_text())["trace"] == [2, 0]
