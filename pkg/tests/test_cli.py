import json
import math

from delforge.cli import main
from delforge.serialize import instance_from_dict, load_json


def run(args):
    return main(args)


def test_construct_pn6(tmp_path, capsys):
    out = tmp_path / "p6.json"
    assert run(["construct", "--family", "pn", "--dim", "6", "--out", str(out)]) == 0
    assert "27 vertices" in capsys.readouterr().out
    data = load_json(str(out))
    assert len(data["vertices"]) == 27


def test_construct_rejects_odd_dimension(tmp_path, capsys):
    out = tmp_path / "p7.json"
    code = run(["construct", "--family", "pn", "--dim", "7", "--out", str(out)])
    assert code == 2
    err = capsys.readouterr().err
    assert "even" in err
    assert not out.exists()


def test_construct_cross_polytope(tmp_path):
    out = tmp_path / "c3.json"
    assert run(["construct", "--family", "cross-polytope", "--dim", "3", "--out", str(out)]) == 0
    assert len(load_json(str(out))["vertices"]) == 6


def test_verify_delaunay_p6(tmp_path):
    inst = tmp_path / "p6.json"
    cert = tmp_path / "cert.json"
    run(["construct", "--family", "pn", "--dim", "6", "--out", str(inst), "--quiet"])
    assert run(["verify-delaunay", "--in", str(inst), "--out", str(cert), "--quiet"]) == 0
    data = load_json(str(cert))
    assert data["status"] == "verified"
    assert data["on_sphere_count"] == 27
    assert data["witness"] is None


def test_verify_delaunay_tampered_p6(tmp_path):
    inst = tmp_path / "p6.json"
    cert = tmp_path / "cert.json"
    run(["construct", "--family", "pn", "--dim", "6", "--out", str(inst), "--quiet"])
    data = load_json(str(inst))
    vertex = data["vertices"][5]
    vertex[0] = str(int(vertex[0]) + 1) if "/" not in vertex[0] else "3/2"
    with open(inst, "w") as fh:
        json.dump(data, fh)
    assert run(["verify-delaunay", "--in", str(inst), "--out", str(cert), "--quiet"]) == 1
    assert load_json(str(cert))["witness"] is not None


def test_certify_extreme_p6_and_half_cube(tmp_path):
    p6 = tmp_path / "p6.json"
    h5 = tmp_path / "h5.json"
    cert = tmp_path / "cert.json"
    run(["construct", "--family", "pn", "--dim", "6", "--out", str(p6), "--quiet"])
    assert run(["certify-extreme", "--in", str(p6), "--out", str(cert), "--quiet"]) == 0
    assert load_json(str(cert))["kernel_dim"] == 1
    run(["construct", "--family", "half-cube", "--dim", "5", "--out", str(h5), "--quiet"])
    assert run(["certify-extreme", "--in", str(h5), "--out", str(cert), "--quiet"]) == 1
    data = load_json(str(cert))
    assert data["kernel_dim"] == 5
    assert len(data["kernel_basis"]) >= 2
    assert data["is_extreme"] is False


def test_symmetry_command(tmp_path):
    h4 = tmp_path / "h4.json"
    rep = tmp_path / "sym.json"
    run(["construct", "--family", "half-cube", "--dim", "4", "--out", str(h4), "--quiet"])
    assert run(["symmetry", "--in", str(h4), "--out", str(rep), "--quiet"]) == 0
    data = load_json(str(rep))
    assert data["group_order"] == "384"
    assert data["orbit_count"] == 1


def test_report_dim6(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert run(["report", "--dim", "6", "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "(i)" in text and "(ii)" in text and "(iii)" in text
    assert "51840" in text
    assert "MISMATCH" in text
    data = load_json(str(out))
    assert data["all_passed"] is True
    assert data["checks"]["group_order"] is True
    assert data["stated_circumsphere"]["matches_computed"] is False
    assert data["symmetry"]["group_order"] == "51840"


def test_report_dim8(tmp_path):
    out = tmp_path / "report.json"
    assert run(["report", "--dim", "8", "--out", str(out), "--quiet"]) == 0
    data = load_json(str(out))
    assert data["all_passed"] is True
    assert data["symmetry"]["group_order"] == str(math.factorial(7) * 2**6)
    assert sorted(map(len, data["symmetry"]["orbits"])) == [1, 14, 64]


def test_report_odd_dimension_fails_with_partial_report(tmp_path, capsys):
    out = tmp_path / "report.json"
    assert run(["report", "--dim", "7", "--out", str(out), "--quiet"]) == 2
    data = load_json(str(out))
    assert "error" in data
    assert "even" in data["error"]


def test_malformed_input_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    cert = tmp_path / "cert.json"
    assert run(["verify-delaunay", "--in", str(bad), "--out", str(cert)]) == 2
    missing = tmp_path / "missing.json"
    assert run(["verify-delaunay", "--in", str(missing), "--out", str(cert)]) == 2


def test_enum_budget_env(tmp_path, monkeypatch, capsys):
    inst = tmp_path / "p6.json"
    cert = tmp_path / "cert.json"
    run(["construct", "--family", "pn", "--dim", "6", "--out", str(inst), "--quiet"])
    monkeypatch.setenv("DELFORGE_MAX_ENUM", "10")
    assert run(["verify-delaunay", "--in", str(inst), "--out", str(cert)]) == 2
    assert "node budget" in capsys.readouterr().err
    monkeypatch.setenv("DELFORGE_MAX_ENUM", "not-a-number")
    assert run(["verify-delaunay", "--in", str(inst), "--out", str(cert)]) == 2
    monkeypatch.delenv("DELFORGE_MAX_ENUM")
    assert run(["verify-delaunay", "--in", str(inst), "--out", str(cert), "--quiet"]) == 0


def test_written_instance_is_reingestible_and_byte_stable(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    run(["construct", "--family", "pn", "--dim", "6", "--out", str(a), "--quiet"])
    run(["construct", "--family", "pn", "--dim", "6", "--out", str(b), "--quiet"])
    assert a.read_bytes() == b.read_bytes()
    inst = instance_from_dict(load_json(str(a)))
    assert len(inst.vertices) == 27


def test_report_rerun_is_byte_identical(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    run(["report", "--dim", "6", "--out", str(a), "--quiet"])
    run(["report", "--dim", "6", "--out", str(b), "--quiet"])
    assert a.read_bytes() == b.read_bytes()
