import json

from toruslocus.cli import fixture_path, main

GAUSSIAN = str(fixture_path("gaussian_torus.json"))


def test_worked_example_matches_and_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["paper-example", "--out", str(a)]) == 0
    assert main(["paper-example", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    rep = json.loads(a.read_text())
    assert rep["basis_matches_fixture"] is True
    assert rep["fiber"]["degree"] == 2
    assert set(rep["fixtures"]) == {"worked_triple.json", "worked_generators.txt"}
    assert "basis matches fixture: True" in capsys.readouterr().out


def test_worked_example_reports_mismatch(tmp_path, capsys):
    lines = fixture_path("worked_generators.txt").read_text().splitlines()
    lines[0] = "t_7+3/5t_8+9/5t_9"
    bad = tmp_path / "gens.txt"
    bad.write_text("\n".join(lines) + "\n")
    assert main(["paper-example", "--generators", str(bad)]) == 1
    out = capsys.readouterr().out
    assert "missing:    t_7 + 3/5*t_8 + 9/5*t_9" in out
    assert "unexpected: t_7 + 3/5*t_8 + 8/5*t_9" in out


def test_rank_and_polarize(capsys):
    assert main(["rank", GAUSSIAN]) == 0
    assert "ns_rank: 9" in capsys.readouterr().out
    assert main(["polarize", GAUSSIAN, "--bound", "1", "--out", "-"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["polarization"]["verdict"] == "Polarized"
    assert rep["polarization"]["coefficients"] == [1, 0, 1, 0, 0, 1, 0, 0, 0]
    assert main(["polarize", GAUSSIAN, "--shortcut"]) == 0
    assert "MaximalRankShortcut" in capsys.readouterr().out


def test_locus_and_approximate(tmp_path, capsys):
    Z = [0, 0, 0]
    classes = [{"a": Z, "b": b, "c": Z} for b in
               ([1, 0, 0, 0, 1, 0, 0, 0, 1], [1, 0, 0, 0, 0, 0, 0, 0, 0], [0, 0, 0, 0, 1, 0, 0, 0, 0])]
    path = tmp_path / "classes.json"
    path.write_text(json.dumps({"classes": classes}))
    assert main(["locus", str(path), "--out", "-"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["fiber"]["dim"] > 0 and not rep["fiber"]["empty"]
    assert main(["approximate", str(path), GAUSSIAN, "-n", "3", "--out", "-"]) == 0
    pts = json.loads(capsys.readouterr().out)["points"]
    assert [p["distance"] for p in pts] == ["1", "1/2", "1/3"]


def test_sweep_zero_seeds(capsys):
    assert main(["sweep", "--seeds", "0", "--out", "-"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["rows"] == [] and rep["total"] == 0


def test_sweep_g3_is_deterministic(capsys):
    assert main(["sweep", "--g", "3", "--seeds", "2", "--out", "-"]) == 0
    first = capsys.readouterr().out
    assert main(["sweep", "--g", "3", "--seeds", "2", "--jobs", "2", "--out", "-"]) == 0
    second = json.loads(capsys.readouterr().out)
    first = json.loads(first)
    assert first["rows"] == second["rows"]


def test_family_check_needs_slow_flag(capsys):
    assert main(["family-check"]) == 2
    assert "--slow" in capsys.readouterr().err
    assert main(["family-check", "--slow", "--pair-limit", "31"]) == 0


def test_input_errors(tmp_path, capsys):
    assert main(["rank", str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["locus", str(bad)]) == 2
    dep = tmp_path / "dep.json"
    E = {"a": [1, 0, 0], "b": [0] * 9, "c": [0, 0, 0]}
    dep.write_text(json.dumps([E, E, E]))
    assert main(["locus", str(dep)]) == 2
    assert "dimension 1 < 3" in capsys.readouterr().err
