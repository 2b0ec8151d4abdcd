import json

from abfree.cli import main
from abfree.oracle import corpus_path


def run(capsys, args):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_free(capsys):
    code, out, _ = run(capsys, [
        "check", str(corpus_path("c4.hg")), "--order", "1,2,3,4", "--pattern", "ab^2",
    ])
    assert code == 0
    assert out.strip() == "FREE"


def test_check_witness(capsys):
    code, out, _ = run(capsys, [
        "check", str(corpus_path("k4.hg")), "--order", "1,2,3,4", "--pattern", "ab^2",
    ])
    assert code == 1
    assert out.startswith("WITNESS")
    assert "{1 3},{2 4}" in out
    assert "vertices 1,2,3,4" in out


def test_check_bad_order(capsys):
    code, _, err = run(capsys, [
        "check", str(corpus_path("c4.hg")), "--order", "1,2,3", "--pattern", "ab^2",
    ])
    assert code == 2
    assert "permutation" in err


def test_check_bad_pattern(capsys):
    code, _, err = run(capsys, [
        "check", str(corpus_path("c4.hg")), "--order", "1,2,3,4", "--pattern", "zz",
    ])
    assert code == 2


def test_solve_count(capsys):
    code, out, _ = run(capsys, [
        "solve", str(corpus_path("circular-4.hg")), "--pattern", "ab^2", "--count",
    ])
    assert code == 0
    assert out.strip() == "8"


def test_solve_count_two_interval(capsys):
    code, out, _ = run(capsys, [
        "solve", str(corpus_path("two-interval-7.hg")), "--pattern", "ab^2a", "--count",
    ])
    assert code == 0
    assert out.strip() == "2"


def test_solve_unsat(capsys):
    code, out, _ = run(capsys, [
        "solve", str(corpus_path("k4.hg")), "--pattern", "ab^2",
    ])
    assert code == 1
    assert out.strip() == "UNSAT"


def test_solve_sat(capsys):
    code, out, _ = run(capsys, [
        "solve", str(corpus_path("c5.hg")), "--pattern", "ab^2",
    ])
    assert code == 0
    assert out.startswith("SAT ")


def test_solve_env_budget(capsys, monkeypatch):
    monkeypatch.setenv("ABFREE_BUDGET", "30")
    code, out, _ = run(capsys, [
        "solve", str(corpus_path("c3.hg")), "--pattern", "ab^2",
    ])
    assert code == 0


def test_reduce_and_certify(tmp_path, capsys):
    inst = tmp_path / "one.json"
    code, out, _ = run(capsys, [
        "reduce", str(corpus_path("one-triple.3hg")), "--target", "ab^2",
        "--out", str(inst),
    ])
    assert code == 0
    assert "N=10" in out and "edges=20" in out
    doc = json.loads(inst.read_text())
    assert doc["n_vertices"] == 10
    assert doc["lineage"] == ["2col→abab"]

    code, out, _ = run(capsys, [
        "certify", str(inst), "--from-coloring", "red,red,blue",
    ])
    assert code == 0
    assert "ordering 1,2,3,4,6,5,8,9,10,7" in out
    assert "FREE (verified)" in out

    code, out, _ = run(capsys, [
        "certify", str(inst), "--from-ordering", "1,2,3,4,6,5,8,9,10,7",
    ])
    assert code == 0
    assert "coloring red,red,blue" in out
    assert "PROPER (verified)" in out

    code, _, err = run(capsys, [
        "certify", str(inst), "--from-coloring", "red,red,red",
    ])
    assert code == 1
    assert "monochromatic" in err

    code, _, err = run(capsys, [
        "certify", str(inst), "--from-ordering", "1,3,2,4,5,6,7,8,9,10",
    ])
    assert code == 1

    # malformed permutation is a usage error, not a refused certificate
    code, _, err = run(capsys, [
        "certify", str(inst), "--from-ordering", "1,2,3",
    ])
    assert code == 2


def test_reduce_sizes(tmp_path, capsys):
    code, out, _ = run(capsys, [
        "reduce", str(corpus_path("one-triple.3hg")), "--target", "ab^3a",
    ])
    assert code == 0
    assert "N=22" in out

    code, _, err = run(capsys, [
        "reduce", str(corpus_path("one-triple.3hg")), "--target", "ab^1a",
    ])
    assert code == 2
    assert "unsupported" in err


def test_reduce_pseudodisk(tmp_path, capsys):
    outp = tmp_path / "pd.json"
    code, out, _ = run(capsys, [
        "reduce", str(corpus_path("c4.hg")), "--target", "pseudodisk",
        "--out", str(outp),
    ])
    assert code == 0
    assert "N=5" in out
    doc = json.loads(outp.read_text())
    assert doc["source"] is None
    assert doc["lineage"] == ["apex"]
    assert all(5 in e for e in doc["edges"])


def test_deterministic_output(capsys):
    args = ["solve", str(corpus_path("circular-5.hg")), "--pattern", "ab^2", "--deterministic"]
    code1, out1, _ = run(capsys, args)
    code2, out2, _ = run(capsys, args)
    assert (code1, out1) == (code2, out2)
