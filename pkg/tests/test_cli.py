import json

import pytest

from polyface.cli import main
from polyface.families import VertexSet


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_generate_phi3(tmp_path, capsys):
    path = tmp_path / "phi3.json"
    code, out, _ = run(["generate", "--family", "phi", "--n", "3", "--out", str(path)], capsys)
    assert code == 0
    data = json.loads(path.read_text())
    assert data["family"] == "phi"
    assert data["ambient_dim"] == 9
    assert len(data["vertices"]) == 6
    assert data["labels"] == ["123", "231", "312", "321", "213", "132"]


def test_generate_guard_and_force(tmp_path, capsys):
    path = tmp_path / "big.json"
    code, _, err = run(["generate", "--family", "qap", "--n", "8", "--out", str(path)], capsys)
    assert code == 2
    assert "--force" in err
    code, _, _ = run(["generate", "--family", "bqp", "--n", "2", "--out", str(path)], capsys)
    assert code == 0


def test_generate_bad_family_guarded_by_argparse(tmp_path, capsys):
    with pytest.raises(SystemExit):
        main(["generate", "--family", "tsp", "--n", "3", "--out", str(tmp_path / "x.json")])


def test_face_nonface_exit_codes_and_check(tmp_path, capsys):
    vpath = tmp_path / "phi3.json"
    run(["generate", "--family", "phi", "--n", "3", "--out", str(vpath)], capsys)

    cpath = tmp_path / "wit.json"
    code, out, _ = run(
        ["face", "--vertices", str(vpath), "--subset", "0,1,2", "--out", str(cpath)], capsys
    )
    assert code == 1
    wit = json.loads(cpath.read_text())
    assert wit["kind"] == "nonface"
    assert wit["alpha"] == ["1/3", "1/3", "1/3"]
    assert set(wit["point"]) == {"1/3"}

    code, _, _ = run(["check", "--vertices", str(vpath), "--certificate", str(cpath)], capsys)
    assert code == 0

    fpath = tmp_path / "cert.json"
    code, _, _ = run(
        ["face", "--vertices", str(vpath), "--subset", "0", "--out", str(fpath)], capsys
    )
    assert code == 0
    cert = json.loads(fpath.read_text())
    assert cert["kind"] == "face"
    code, _, _ = run(["check", "--vertices", str(vpath), "--certificate", str(fpath)], capsys)
    assert code == 0


def test_check_rejects_tampered_epsilon(tmp_path, capsys):
    vpath = tmp_path / "qap3.json"
    run(["generate", "--family", "qap", "--n", "3", "--out", str(vpath)], capsys)
    cpath = tmp_path / "cert.json"
    code, _, _ = run(
        ["face", "--vertices", str(vpath), "--subset", "0,1,2", "--out", str(cpath)], capsys
    )
    assert code == 0
    data = json.loads(cpath.read_text())
    data["epsilon"] = "-" + data["epsilon"]
    cpath.write_text(json.dumps(data))
    code, out, _ = run(["check", "--vertices", str(vpath), "--certificate", str(cpath)], capsys)
    assert code == 1


def test_check_mismatched_ambient_dim_is_an_error(tmp_path, capsys):
    v3 = tmp_path / "phi3.json"
    v4 = tmp_path / "phi4.json"
    run(["generate", "--family", "phi", "--n", "3", "--out", str(v3)], capsys)
    run(["generate", "--family", "phi", "--n", "4", "--out", str(v4)], capsys)
    cpath = tmp_path / "cert.json"
    run(["face", "--vertices", str(v3), "--subset", "0", "--out", str(cpath)], capsys)
    code, _, err = run(["check", "--vertices", str(v4), "--certificate", str(cpath)], capsys)
    assert code == 2
    assert "dimension" in err


def test_neighborly_exit_codes(tmp_path, capsys):
    vpath = tmp_path / "phi3.json"
    run(["generate", "--family", "phi", "--n", "3", "--out", str(vpath)], capsys)
    rpath = tmp_path / "report.json"
    code, _, _ = run(
        ["neighborly", "--vertices", str(vpath), "--k", "2", "--out", str(rpath)], capsys
    )
    assert code == 0
    report = json.loads(rpath.read_text())
    assert report["faces_certified"] == 15

    code, _, _ = run(
        ["neighborly", "--vertices", str(vpath), "--k", "3", "--stop-at-first"], capsys
    )
    assert code == 1

    bpath = tmp_path / "bqp2.json"
    run(["generate", "--family", "bqp", "--n", "2", "--out", str(bpath)], capsys)
    code, _, _ = run(["neighborly", "--vertices", str(bpath), "--k", "3"], capsys)
    assert code == 0


def test_neighborly_bad_k_is_error(tmp_path, capsys):
    vpath = tmp_path / "phi3.json"
    run(["generate", "--family", "phi", "--n", "3", "--out", str(vpath)], capsys)
    code, _, err = run(["neighborly", "--vertices", str(vpath), "--k", "9"], capsys)
    assert code == 2


def test_verify_scenarios_and_report_file(tmp_path, capsys):
    rpath = tmp_path / "report.json"
    code, out, _ = run(["verify", "prop1", "--n", "3", "--out", str(rpath)], capsys)
    assert code == 0
    assert "[PASS]" in out
    report = json.loads(rpath.read_text())
    assert report["passed"] is True
    assert report["scenario"] == "prop1"


def test_verify_guard(tmp_path, capsys):
    code, _, err = run(["verify", "nonisomorphism", "--n", "4"], capsys)
    assert code == 2
    assert "guard" in err


def test_verify_k_parameter(capsys):
    code, out, _ = run(["verify", "thm2", "--k", "2"], capsys)
    assert code == 0


def test_verify_default_parameter(capsys):
    code, _, _ = run(["verify", "thm1"], capsys)
    assert code == 0


def test_report_determinism_apart_from_duration(tmp_path, capsys):
    p1, p2 = tmp_path / "r1.json", tmp_path / "r2.json"
    run(["verify", "lemma1", "--n", "4", "--out", str(p1)], capsys)
    run(["verify", "lemma1", "--n", "4", "--out", str(p2)], capsys)
    d1 = json.loads(p1.read_text())
    d2 = json.loads(p2.read_text())
    d1.pop("duration_seconds")
    d2.pop("duration_seconds")
    assert d1 == d2


def test_missing_file_is_error(capsys):
    code, _, err = run(["face", "--vertices", "/nonexistent.json", "--subset", "0"], capsys)
    assert code == 2
