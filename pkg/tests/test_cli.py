import pytest

from knotlink import minor
from knotlink.classifier import reset_default_kb
from knotlink.cli import EXIT_FAIL, EXIT_INPUT, EXIT_LIMIT, EXIT_OK, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_classify_spec(capsys):
    code, out, _ = run(capsys, "classify", "3,3,1", "--linking")
    assert code == EXIT_OK
    assert "3,3,1: linking LINKED" in out


def test_classify_every_class_of_a_wildcard(capsys):
    code, out, _ = run(capsys, "classify", "3,3,1-e", "--porcelain")
    assert code == EXIT_OK
    rows = [line.split("\t") for line in out.splitlines()]
    assert {r[1] for r in rows} == {"linking", "knotting"}
    assert {r[2] for r in rows} == {"NOT_LINKED", "NOT_KNOTTED"}
    assert len(rows) == 4


def test_classify_named_and_witness(capsys):
    code, out, _ = run(capsys, "classify", "H8", "--knotting", "--witness")
    assert code == EXIT_OK
    assert "KNOTTED" in out and "seed-minor" in out
    assert "0: {" in out


def test_classify_edge_list_forms(capsys, tmp_path):
    f = tmp_path / "k6.txt"
    f.write_text("6\n" + "".join(f"{u} {v}\n" for u in range(6) for v in range(u + 1, 6)))
    code, out, _ = run(capsys, "classify", f"g:{f}", "--linking")
    assert code == EXIT_OK and "LINKED" in out
    code, out, _ = run(capsys, "classify", "g:4:0-1,1-2,2-3,0-3", "--porcelain")
    assert code == EXIT_OK and "NOT_KNOTTED" in out


def test_symbolic_spec_needs_n(capsys):
    code, _, err = run(capsys, "classify", "n,2,2")
    assert code == EXIT_INPUT and "--n" in err
    code, out, _ = run(capsys, "classify", "n,2,2", "--n", "3", "--knotting")
    assert code == EXIT_OK and "NOT_KNOTTED" in out


@pytest.mark.parametrize("argv", [
    ["classify", "3,x"],
    ["classify", "g:3:0-7"],
    ["classify", "g:/nonexistent/file"],
    ["bounds", "--rule", "k6", "--n", "9"],
    ["bounds", "--rule", "k6", "--n", "8..7"],
    ["bounds", "--rule", "k7", "--n", "6"],
])
def test_bad_input_exits_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_INPUT
    assert err.startswith("knotlink:")


def test_unknown_exits_1(capsys, tmp_path, monkeypatch):
    kb = tmp_path / "kb.tsv"
    kb.write_text("NOT_KNOTTED\ta\t6\t[x]\n")
    monkeypatch.setenv("KNOTLINK_KB", str(kb))
    reset_default_kb()
    try:
        code, out, _ = run(capsys, "classify", "H8", "--knotting")
    finally:
        monkeypatch.delenv("KNOTLINK_KB")
        reset_default_kb()
    assert code == EXIT_FAIL and "UNKNOWN" in out and "attempted" in out


def test_search_limit_exits_3(capsys, monkeypatch):
    monkeypatch.setenv("KNOTLINK_NODE_LIMIT", "1")
    minor.clear_cache()
    try:
        code, _, err = run(capsys, "classify", "4,4,1", "--linking")
    finally:
        minor.clear_cache()
    assert code == EXIT_LIMIT and "limit" in err


def test_table_report(capsys):
    code, out, _ = run(capsys, "table", "3", "--porcelain")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0].startswith("table\t3\tlinking")
    assert lines[-1].startswith("summary\t")
    assert all(ln.split("\t")[4] == "MATCH" for ln in lines if ln.startswith("entry\t"))


def test_table_certificates(capsys):
    code, out, _ = run(capsys, "table", "4", "--certificates")
    assert code == EXIT_OK
    assert "axioms:" in out and "MISMATCH" not in out


def test_family_and_bounds(capsys):
    code, out, _ = run(capsys, "family", "--seed", "k6", "--dy", "--yd", "--porcelain")
    assert code == EXIT_OK and out.splitlines()[-1] == "count\t7"
    code, out, _ = run(capsys, "family", "--seed", "k7")
    assert "14 members" in out
    code, out, _ = run(capsys, "bounds", "--rule", "k6", "--n", "6..7")
    assert code == EXIT_OK
    assert "0 violations" in out and "14 edges" in out


def test_porcelain_is_deterministic(capsys):
    outs = []
    for _ in range(2):
        outs.append(run(capsys, "table", "5", "--porcelain")[1])
    assert outs[0] == outs[1]
