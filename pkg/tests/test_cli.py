import json

import pytest

from qre import LAMBDA, Mat, Q, REMatrix, gl_R
from qre import io
from qre.cli import Session, InputError, run


def write(path, obj):
    path.write_text(io.dumps(obj))
    return str(path)


@pytest.fixture
def files(tmp_path, K_q):
    assert run(["r-matrix", "--rank", "2", "--out", str(tmp_path / "R.json")]) == 0
    return {
        "dir": tmp_path,
        "R": str(tmp_path / "R.json"),
        "I": write(tmp_path / "I.json", io.mat_to_json(Mat.identity([2]))),
        "D": write(tmp_path / "D.json", io.mat_to_json(Mat.diag([0, 1]))),
        "J": write(tmp_path / "J.json", io.mat_to_json(Mat([[1, 1], [0, 1]]))),
        "Q": write(tmp_path / "Q.json", io.rematrix_to_json(K_q)),
    }


def load(path):
    return json.loads(open(path).read())


def test_r_matrix(tmp_path, files):
    assert io.mat_from_json(load(files["R"])) == gl_R(2)
    out = tmp_path / "R3.json"
    assert run(["r-matrix", "--algebra", "gl", "--rank", "3", "--out", str(out)]) == 0
    assert io.mat_from_json(load(out)).shape == (9, 9)


def test_r_matrix_bad_rank(capsys):
    assert run(["r-matrix", "--rank", "1", "--out", "-"]) == 2
    assert "rank" in capsys.readouterr().err


def test_verify_re(files, capsys):
    assert run(["verify", "re", "--R", files["R"], "--K", files["I"]]) == 0
    assert run(["verify", "re", "--R", files["R"], "--K", files["J"]]) == 1
    out = capsys.readouterr().out
    assert "FAIL  witness (" in out


def test_verify_ybe(files):
    assert run(["verify", "ybe", "--R", files["R"]]) == 0


def test_q_solution_command(files, K_q):
    out = files["dir"] / "Kq.json"
    assert run(["q-solution", "--R", files["R"], "--out", str(out)]) == 0
    assert io.rematrix_from_json(load(out)) == K_q


@pytest.mark.parametrize("name", ["I", "D", "Q"])
def test_fuse_then_verify_data(files, name):
    out = files["dir"] / f"fused_{name}.json"
    assert run(["fuse", "--R", files["R"], "--Ki", files[name], "--Kj", files[name], "--out", str(out)]) == 0
    assert run(["verify", "data", "--data", str(out)]) == 0
    assert run(["verify", "appendix", "--data", str(out), "--reps", "f", "f", "f*f"]) == 0
    assert run(["verify", "compat", "--data", str(out), "--i", "f", "--j", "f*f"]) == 0


def test_fuse_identity_output(files):
    out = files["dir"] / "fI.json"
    run(["fuse", "--R", files["R"], "--Ki", files["I"], "--Kj", files["I"], "--out", str(out)])
    K, _ = io.load_rematrix(load(out), "f*f")
    assert K.k == Mat.identity([4]) and K.dim == 4


def test_fuse_coeff_dim_mismatch(files):
    assert run(["fuse", "--R", files["R"], "--Ki", files["I"], "--Kj", files["Q"]]) == 2


def test_fuse_incompatible_pair(files, capsys):
    assert run(["fuse", "--R", files["R"], "--Ki", files["I"], "--Kj", files["D"]]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_project(files):
    d = files["dir"]
    run(["fuse", "--R", files["R"], "--Ki", files["I"], "--Kj", files["I"], "--out", str(d / "fI.json")])
    run(["fuse", "--R", files["R"], "--Ki", files["D"], "--Kj", files["D"], "--out", str(d / "fD.json")])
    assert run(["project", "--R", files["R"], "--K", str(d / "fI.json"), "--sector", "symmetric",
                "--out", str(d / "s.json")]) == 0
    assert io.rematrix_from_json(load(d / "s.json")).k == Mat.identity([3])
    assert run(["project", "--R", files["R"], "--K", str(d / "fD.json"), "--sector", "antisymmetric",
                "--out", str(d / "a.json"), "--family-out", str(d / "fam.json")]) == 0
    assert io.rematrix_from_json(load(d / "a.json")).k.shape == (1, 1)
    assert run(["verify", "re", "--family", str(d / "fam.json"), "--K", str(d / "a.json")]) == 0


def test_project_non_hecke(files):
    d = files["dir"]
    bad = write(d / "Rbad.json", io.mat_to_json(Mat.diag([2, 1, 1, 1]).with_legs((2, 2))))
    run(["fuse", "--R", files["R"], "--Ki", files["I"], "--Kj", files["I"], "--out", str(d / "fI.json")])
    assert run(["project", "--R", bad, "--K", str(d / "fI.json"), "--sector", "symmetric"]) == 2


def test_solve(files, capsys):
    out = files["dir"] / "sols.json"
    assert run(["solve", "--R", files["R"], "--ansatz", "diagonal", "--out", str(out)]) == 0
    assert len(load(out)["solutions"]) == 2
    assert "family:" in capsys.readouterr().out


def test_braid(files, capsys):
    assert run(["braid", "--R", files["R"], "--K", files["Q"], "--strands", "3"]) == 0
    assert run(["verify", "braid", "--R", files["R"], "--K", files["J"], "--strands", "3"]) == 1
    lines = capsys.readouterr().out.splitlines()
    assert any(l.startswith("s2 t1 s2 t1 = t1 s2 t1 s2: FAIL") for l in lines)
    assert run(["braid", "--R", files["R"], "--K", files["D"], "--strands", "3", "--tau", files["I"]]) == 0
    swap = write(files["dir"] / "swap.json", io.mat_to_json(Mat([[0, 1], [1, 0]])))
    assert run(["braid", "--R", files["R"], "--K", files["D"], "--strands", "3", "--tau", swap]) == 1


@pytest.mark.parametrize("text", ["{", "[]", '{"row_legs": [2]}', '{"rep": "f", "coeff_dim": 1, "matrix": 3}', ""])
def test_malformed_input(files, text):
    bad = files["dir"] / "bad.json"
    bad.write_text(text)
    assert run(["verify", "re", "--R", files["R"], "--K", str(bad)]) == 2
    assert run(["verify", "data", "--data", str(bad)]) == 2


def test_missing_file_and_bad_args(files):
    assert run(["verify", "re", "--R", files["R"], "--K", "/nonexistent.json"]) == 2
    assert run(["verify", "nonsense"]) == 2
    assert run([]) == 2


def test_q_eval_cross_check(files, capsys, monkeypatch):
    monkeypatch.setenv("QRE_Q_EVAL", "3/2")
    assert run(["verify", "re", "--R", files["R"], "--K", files["D"]]) == 0
    assert run(["verify", "re", "--R", files["R"], "--K", files["J"]]) == 1
    cap = capsys.readouterr()
    assert "[q0=3/2: zero]" in cap.out and "[q0=3/2: nonzero]" in cap.out
    assert "disagrees" not in cap.err


def test_q_eval_pole_and_bad_values(files, capsys, monkeypatch):
    # q0 = 1 kills lambda, so the J witness vanishes numerically: a warning, not a verdict change
    monkeypatch.setenv("QRE_Q_EVAL", "1")
    assert run(["verify", "re", "--R", files["R"], "--K", files["J"]]) == 1
    assert "disagrees" in capsys.readouterr().err
    monkeypatch.setenv("QRE_Q_EVAL", "0")
    assert run(["verify", "re", "--R", files["R"], "--K", files["I"]]) == 2
    monkeypatch.setenv("QRE_Q_EVAL", "two")
    assert run(["verify", "re", "--R", files["R"], "--K", files["I"]]) == 2


def test_session_rejects_zero():
    with pytest.raises(InputError):
        Session(q0=0)
