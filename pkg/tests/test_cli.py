import csv
import json
import subprocess
import sys

import numpy as np
import pytest

from gaussent import cli, io
from gaussent.states import two_mode_squeezed


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


@pytest.fixture
def tms_file(tmp_path):
    path = tmp_path / "tms.json"
    io.write_state(path, two_mode_squeezed(0.5))
    return str(path)


def test_gen_then_measure(tmp_path, capsys):
    path = tmp_path / "g.json"
    assert run(capsys, "gen", "ghzw", "--a", "2", "-o", str(path))[0] == 0
    code, out, _ = run(capsys, "measure", str(path), "--measure", "residual-contangle")
    assert code == 0
    from gaussent.tripartite import ghzw_residual

    assert float(out) == pytest.approx(ghzw_residual(2.0), rel=1e-11)


@pytest.mark.parametrize(
    "kind,extra",
    [
        ("vacuum", ["--n", "2"]),
        ("thermal", ["--nu", "1,2.5"]),
        ("tms", ["--r", "0.3"]),
        ("fsym-pure", ["--n", "4", "--b", "2", "--traced", "1"]),
        ("pure3", ["--a", "2,2,1.5"]),
        ("four-mode", ["--s", "0.5", "--a", "1"]),
    ],
)
def test_gen_kinds_produce_valid_documents(kind, extra, capsys):
    code, out, _ = run(capsys, "gen", kind, *extra)
    assert code == 0
    io.loads(out)


def test_measure_report_and_precision(tms_file, tmp_path, capsys):
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "measure", tms_file, "--measure", "logneg", "--partition", "1|2", "--report", str(report))
    assert code == 0 and out.strip() == "1"
    doc = json.loads(report.read_text())
    np.testing.assert_allclose(doc["pt_spectrum"], [np.exp(-1), np.exp(1)], rtol=1e-12)
    code, out, _ = run(capsys, "measure", tms_file, "--measure", "negativity", "--partition", "1|2")
    assert out.strip() == f"{(np.e - 1) / 2:.12g}"


@pytest.mark.parametrize("name", ["gaussian-eof", "contangle", "gaussian-tangle", "eof-symmetric", "entanglement-entropy"])
def test_measure_two_mode_names(name, tms_file, capsys):
    code, out, _ = run(capsys, "measure", tms_file, "--measure", name, "--partition", "2|1")
    assert code == 0 and float(out) > 0


def test_measure_entropies(tms_file, capsys):
    assert run(capsys, "measure", tms_file, "--measure", "purity")[1].strip() == "1"
    code, out, _ = run(capsys, "measure", tms_file, "--measure", "renyi", "--partition", "1|2", "--p", "2")
    assert float(out) == pytest.approx(np.log(np.cosh(1.0)))
    assert run(capsys, "measure", tms_file, "--measure", "renyi")[0] == cli.EXIT_USAGE


def test_one_vs_rest_measure(tmp_path, capsys):
    path = tmp_path / "f.json"
    run(capsys, "gen", "fsym-pure", "--n", "3", "--b", "2", "-o", str(path))
    code, out, _ = run(capsys, "measure", str(path), "--measure", "contangle", "--partition", "2,3|1")
    assert code == 0
    assert float(out) == pytest.approx(np.arccosh(2.0) ** 2, rel=1e-9)
    assert run(capsys, "measure", str(path), "--measure", "contangle", "--partition", "1,2|3,4")[0] == cli.EXIT_PARTITION


def test_exit_codes(tms_file, tmp_path, capsys):
    bad = tmp_path / "bad.json"
    io.write_state(bad, np.diag([0.5, 0.5, 1.0, 1.0]))
    code, _, err = run(capsys, "measure", str(bad), "--measure", "purity")
    assert code == cli.EXIT_UNPHYSICAL and "not a physical covariance matrix" in err
    assert run(capsys, "measure", tms_file, "--measure", "logneg", "--partition", "1|3")[0] == cli.EXIT_PARTITION
    assert run(capsys, "measure", tms_file, "--measure", "logneg", "--partition", "1,2")[0] == cli.EXIT_PARTITION
    assert run(capsys, "measure", tms_file, "--measure", "logneg")[0] == cli.EXIT_PARTITION
    assert run(capsys, "gen", "pure3", "--a", "1,1,3")[0] == cli.EXIT_UNPHYSICAL
    assert run(capsys, "gen", "tms")[0] == cli.EXIT_USAGE
    assert run(capsys, "measure", str(tmp_path / "missing.json"), "--measure", "purity")[0] == cli.EXIT_USAGE
    with pytest.raises(SystemExit) as exc:
        cli.main(["frobnicate"])
    assert exc.value.code == cli.EXIT_USAGE


def test_tolerance_override(tmp_path, capsys, monkeypatch):
    path = tmp_path / "slightly.json"
    io.write_state(path, np.diag([1 - 1e-6, 1 - 1e-6]))
    assert run(capsys, "measure", str(path), "--measure", "purity")[0] == cli.EXIT_UNPHYSICAL
    monkeypatch.setenv(cli.TOL_ENV, "1e-5")
    assert run(capsys, "measure", str(path), "--measure", "purity")[0] == 0
    monkeypatch.setenv(cli.TOL_ENV, "abc")
    assert run(capsys, "measure", str(path), "--measure", "purity")[0] == cli.EXIT_USAGE


def test_sweep_hierarchy_csv(tmp_path, capsys):
    out = tmp_path / "h.csv"
    code, _, err = run(capsys, "sweep", "hierarchy", "--n", "6", "--b-range", "1.5:3:4", "-o", str(out))
    assert code == 0 and json.loads(err)["rows_written"] == 20
    rows = read_csv(out)
    assert rows[0] == ["n", "K", "b", "E_N", "measure_name"]
    for b in {r[2] for r in rows[1:]}:
        vals = [float(r[3]) for r in rows[1:] if r[2] == b]
        assert np.all(np.diff(vals) >= -1e-12)


def test_sweep_other_kinds(tmp_path, capsys):
    for argv in (
        ["blocks", "--n", "6", "--traced", "2", "--b-range", "1:2:3"],
        ["scaling", "--b", "1.5", "--n-range", "2:10:9"],
        ["residual", "--a", "2", "--b-range", "1:3:5"],
        ["ordering", "--samples", "20", "--seed", "3"],
    ):
        out = tmp_path / f"{argv[0]}.csv"
        assert run(capsys, "sweep", *argv, "-o", str(out))[0] == 0
        assert len(read_csv(out)) > 1
    assert run(capsys, "sweep", "hierarchy", "--b-range", "3:1:5")[0] == cli.EXIT_USAGE
    assert run(capsys, "sweep", "hierarchy", "--b-range", "oops")[0] == cli.EXIT_USAGE


def test_sweeps_are_deterministic(tmp_path, capsys):
    paths = [tmp_path / f"o{i}.csv" for i in range(2)]
    for p in paths:
        run(capsys, "sweep", "ordering", "--samples", "10", "--seed", "9", "-o", str(p))
    assert paths[0].read_text() == paths[1].read_text()


def test_check_monogamy_csv_and_violations_file(tmp_path, capsys):
    out, bad = tmp_path / "m.csv", tmp_path / "v.csv"
    code, _, err = run(capsys, "check", "monogamy", "--samples", "10", "--seed", "4", "-o", str(out), "--violations", str(bad))
    assert code == 0
    rep = json.loads(err)
    assert rep["seed"] == 4 and rep["violations"] == 0
    rows = read_csv(out)
    assert rows[0] == ["seed", "a1", "a2", "a3", "lhs", "rhs", "slack"]
    assert len(rows) == 11
    assert read_csv(bad) == [rows[0]]


@pytest.mark.parametrize("kind", ["bona-fide", "ppt", "schmidt", "glems3m"])
def test_check_kinds_pass(kind, capsys):
    assert run(capsys, "check", kind, "--samples", "15")[0] == 0


def test_check_bona_fide_inputs_flags_violation(tmp_path, tms_file, capsys):
    bad = tmp_path / "bad.json"
    io.write_state(bad, np.diag([0.5, 0.5]))
    code, out, err = run(capsys, "check", "bona-fide", "--inputs", tms_file, str(bad))
    assert code == cli.EXIT_VIOLATION
    assert json.loads(err)["violations"] == 1


def test_check_mixed_monogamy_gaussian_tangle(capsys):
    assert run(capsys, "check", "monogamy", "--mixed", "--measure", "gaussian-tangle", "--samples", "3")[0] == 0
    assert run(capsys, "check", "monogamy", "--measure", "logneg", "--samples", "1")[0] == cli.EXIT_USAGE


def test_module_entry_point(tms_file):
    proc = subprocess.run(
        [sys.executable, "-m", "gaussent", "measure", tms_file, "--measure", "logneg", "--partition", "1|2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "1"


def test_spec_examples(tmp_path, capsys):
    tms1, vac = tmp_path / "t.json", tmp_path / "v.json"
    run(capsys, "gen", "tms", "--r", "1.0", "-o", str(tms1))
    run(capsys, "gen", "vacuum", "--n", "3", "-o", str(vac))
    np.testing.assert_array_equal(io.read_state(vac).cm, np.eye(6))
    assert run(capsys, "measure", str(tms1), "--measure", "logneg", "--partition", "1|2")[1].strip() == "2"
    assert run(capsys, "measure", str(vac), "--measure", "logneg", "--partition", "1|2,3")[1].strip() == "0"


def test_pure3_matches_ghzw_up_to_local_form(tmp_path, capsys):
    from gaussent.separability import log_negativity
    from gaussent.symplectic import symplectic_spectrum
    from gaussent.tripartite import local_mixednesses

    p, g = tmp_path / "p.json", tmp_path / "g.json"
    run(capsys, "gen", "pure3", "--a", "2,2,2", "-o", str(p))
    run(capsys, "gen", "ghzw", "--a", "2", "-o", str(g))
    sp, sg = io.read_state(p).cm, io.read_state(g).cm
    np.testing.assert_allclose(local_mixednesses(sp), local_mixednesses(sg))
    for cut in ([0], [1], [2]):
        assert log_negativity(sp, cut) == pytest.approx(log_negativity(sg, cut), rel=1e-10)
    for pair in ((0, 1), (1, 2)):
        sub = np.ix_([2 * pair[0], 2 * pair[0] + 1, 2 * pair[1], 2 * pair[1] + 1], [2 * pair[0], 2 * pair[0] + 1, 2 * pair[1], 2 * pair[1] + 1])
        np.testing.assert_allclose(symplectic_spectrum(sp[sub]), symplectic_spectrum(sg[sub]), rtol=1e-10)


def test_measure_matches_library_bit_for_bit(tmp_path, capsys):
    from gaussent.measures import gaussian_eof

    path = tmp_path / "s.json"
    run(capsys, "gen", "thermal", "--nu", "1,1", "-o", str(path))
    cm = two_mode_squeezed(0.7).cm + 0.3 * np.eye(4)
    io.write_state(path, cm)
    out = run(capsys, "measure", str(path), "--measure", "gaussian-eof", "--partition", "1|2")[1]
    assert out.strip() == f"{gaussian_eof(cm):.12g}"
