"""Every subcommand through ``main``: outputs, ordering and exit codes."""

import re

import pytest

from pcarr.cli import main
from pcarr.realizer import Certificate
from pcarr.geometry import CircleArrangement
from pcarr.store import format_cert, read_certs, read_records, load_arrs


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def body(text):
    return [ln for ln in text.splitlines() if ln and not ln.startswith("#")]


def krupp_cert():
    return Certificate.of_scene(CircleArrangement.from_params([0, 0, 5, 4, 0, 5, 2, 3, 5]))


def test_enumerate_writes_sorted_codes(capsys, tmp_path):
    out = tmp_path / "c4.arrs"
    status, stdout, _ = run(capsys, "enumerate", "--n", "4", "--out", str(out), "--stats")
    assert status == 0
    codes = [c for c, _ in load_arrs(out)]
    assert len(codes) == 21 and codes == sorted(codes)
    assert re.search(r"^intersecting\s+8$", stdout, re.M)


def test_enumerate_budget_gives_partial_output(capsys, tmp_path):
    out = tmp_path / "part.arrs"
    status, _, _ = run(capsys, "enumerate", "--n", "5", "--max-secs", "1e-6", "--out", str(out))
    assert status == 2
    assert out.exists() and len(load_arrs(out)) < 984


def test_enumerate_refuses_large_n(capsys):
    status, _, err = run(capsys, "enumerate", "--n", "7", "--class", "connected")
    assert status == 1 and "desk scale" in err


def test_flipgraph_reports_connectivity(capsys, tmp_path):
    out = tmp_path / "g.tsv"
    status, stdout, _ = run(capsys, "flipgraph", "--n", "5", "--check-connected", "--out", str(out))
    assert status == 0
    assert "nodes 14" in stdout and "connected yes" in stdout
    edges = [tuple(ln.split("\t")) for ln in body(out.read_text())]
    assert edges == sorted(edges) and all(a < b for a, b in edges)


def test_verify_accepts_good_and_rejects_bad(capsys, tmp_path):
    good = krupp_cert()
    path = tmp_path / "x.certs"
    path.write_text(format_cert(good) + "\n")
    assert run(capsys, "verify", "--certs", str(path))[0] == 0
    # same code, moved circle: the scene no longer realizes it
    path.write_text(format_cert(good).rsplit(";", 1)[0] + "; 40 40 5\n")
    status, stdout, _ = run(capsys, "verify", "--certs", str(path))
    assert status == 1 and ":1:" in stdout


def test_verify_reports_parse_errors(capsys, tmp_path):
    path = tmp_path / "bad.certs"
    path.write_text("not a certificate\n")
    assert run(capsys, "verify", "--certs", str(path))[0] == 1


def test_realize_and_classify(capsys, tmp_path):
    codes = tmp_path / "c3.arrs"
    run(capsys, "enumerate", "--n", "3", "--out", str(codes))
    certs = tmp_path / "c3.certs"
    status, stdout, _ = run(capsys, "--seed", "3", "realize", "--in", str(codes), "--certs", str(certs),
                            "--budget-secs", "60")
    assert status == 0 and stdout.count("CERTIFIED") == 3
    assert len(read_certs(certs.read_text().splitlines())) == 3
    recs = tmp_path / "r.tsv"
    status, stdout, _ = run(capsys, "classify", "--in", str(codes), "--certs", str(certs),
                            "--out", str(recs))
    assert status == 0 and "REALIZED 3" in stdout
    rows = read_records(recs.read_text().splitlines())
    assert [r.code for r in rows] == sorted(r.code for r in rows)


def test_classify_marks_fixture(capsys, tmp_path, fixtures):
    arrs = tmp_path / "f.arrs"
    arrs.write_text(fixtures["N5^2"].code.text + "\n")
    status, stdout, err = run(capsys, "classify", "--in", str(arrs))
    assert status == 0
    assert "NONCIRC" in stdout and "N5^2" in stdout and "NONCIRC 1" in err


def test_stats_on_empty_input(capsys, tmp_path):
    empty = tmp_path / "e.arrs"
    empty.write_text("# nothing\n")
    status, stdout, _ = run(capsys, "stats", "--in", str(empty))
    assert status == 0
    assert all(ln.split()[-1] == "0" for ln in stdout.splitlines()[1:])


def test_export_svg(capsys, tmp_path):
    certs = tmp_path / "k.certs"
    certs.write_text(format_cert(krupp_cert()) + "\n")
    out = tmp_path / "k.svg"
    assert run(capsys, "export-svg", "--certs", str(certs), "--out", str(out))[0] == 0
    svg = out.read_text()
    assert svg.count("<circle") == 3 and svg.startswith("<svg")


def test_export_svg_unknown_code(capsys, tmp_path, fixtures):
    certs = tmp_path / "k.certs"
    certs.write_text(format_cert(krupp_cert()) + "\n")
    status, _, _ = run(capsys, "export-svg", "--certs", str(certs), "--code",
                       fixtures["N5^1"].code.text, "--out", str(tmp_path / "o.svg"))
    assert status == 1


def test_pipeline_small(capsys, tmp_path):
    out = tmp_path / "p.tsv"
    status, _, _ = run(capsys, "pipeline", "--n", "3", "--out", str(out), "--budget-secs", "60")
    assert status == 0
    assert [r.status.value for r in read_records(out.read_text().splitlines())] == ["REALIZED"] * 3


def test_pipeline_budget_exit_code(capsys, tmp_path):
    out = tmp_path / "p.tsv"
    # far more targets than one batch of random scenes can certify
    status, _, _ = run(capsys, "pipeline", "--n", "5", "--class", "intersecting", "--out", str(out),
                       "--budget-secs", "1e-3")
    assert status == 2
    rows = read_records(out.read_text().splitlines())
    assert len(rows) == 278 and any(r.status.value == "OPEN" for r in rows)


@pytest.mark.parametrize("argv", [["verify", "--certs", "/nonexistent/x.certs"],
                                  ["classify", "--in", "/nonexistent/x.arrs"]])
def test_missing_files_are_contract_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 1
