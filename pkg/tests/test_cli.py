import json
import subprocess
import sys

import pytest

from tclab.cli import main
from tclab.hypergraph import complete, format_hypergraph, parse_hypergraph

K43 = format_hypergraph(complete(3, 4))

# key sets of the --json reports; changing one is a breaking change
SCHEMAS = {
    "check-homfree": {"command", "status", "k", "homfree", "witness_length", "witness_path"},
    "min-codegree": {"command", "status", "r", "n", "min_codegree"},
    "extremal": {"command", "status", "n", "r", "k", "ell", "best_codegree", "exact",
                 "nodes_explored", "ratio", "threads", "witness_path"},
    "available-colors": {"command", "status", "r", "k", "mode", "colors", "unavailable_young"},
}


@pytest.fixture
def k43(tmp_path):
    path = tmp_path / "k43.txt"
    path.write_text(K43)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_homfree_k43(capsys, k43, tmp_path):
    code, out, _ = run(capsys, "check-homfree", "--k", "1", k43)
    assert code == 1
    assert out.splitlines()[-1] == "1 2 3 4"
    wpath = tmp_path / "w.txt"
    code, out, _ = run(capsys, "--json", "check-homfree", "--k", "1", "--witness", str(wpath), k43)
    report = json.loads(out)
    assert code == 1 and report["homfree"] is False
    assert report["witness_path"] == str(wpath)
    assert wpath.read_text() == "1 2 3 4\n"
    assert set(report) == SCHEMAS["check-homfree"]


def test_json_reports_are_stable(capsys, k43):
    for argv in (["min-codegree", k43], ["extremal", "--n", "5", "--r", "3", "--k", "2"],
                 ["available-colors", "--r", "6", "--k", "2"]):
        first = run(capsys, "--json", *argv)[1]
        second = run(capsys, "--json", *argv)[1]
        assert first == second
        assert set(json.loads(first)) == SCHEMAS[argv[0]]


def test_available_colors_flags_unavailable(capsys):
    code, out, _ = run(capsys, "available-colors", "--r", "6", "--k", "2")
    assert code == 0
    assert out.splitlines()[0] == "6 2 2"
    assert "# i=3 unavailable" in out
    code, out, _ = run(capsys, "--json", "available-colors", "--r", "6", "--k", "2")
    report = json.loads(out)
    assert [c["young_i"] for c in report["colors"]] == [1, 2]
    assert report["unavailable_young"] == [3]


def test_gen_construction_round_trip(capsys, tmp_path):
    path = tmp_path / "c.txt"
    assert run(capsys, "gen-construction", "--r", "3", "--p", "3", "--n", "9", "-o", str(path))[0] == 0
    text = path.read_text()
    assert text.startswith("# construction r=3 p=3 n=9\n")
    assert "# parts 1..3 | 4..6 | 7..9" in text
    H = parse_hypergraph(text)
    body = text[text.index("3 9 27"):]
    assert format_hypergraph(H) == body
    code, out, _ = run(capsys, "gen-construction", "--r", "3", "--p", "3", "--n", "9")
    assert out == text


def test_coloring_commands(capsys, tmp_path):
    graph = tmp_path / "g.txt"
    col = tmp_path / "col.txt"
    run(capsys, "gen-construction", "--r", "4", "--p", "2", "--n", "8", "-o", str(graph))
    assert run(capsys, "find-coloring", "--k", "2", str(graph), "-o", str(col))[0] == 0
    code, out, _ = run(capsys, "verify-coloring", str(graph), str(col))
    assert code == 0 and out.strip() == "accordant"
    lines = col.read_text().splitlines()
    # the only color for r=4, k=2 is S_1 x S_3 with four cosets
    c = lines[1].split()[-1]
    lines[1] = " ".join(lines[1].split()[:-1] + [str((int(c) + 1) % 4)])
    col.write_text("\n".join(lines) + "\n")
    vpath = tmp_path / "v.txt"
    code, out, _ = run(capsys, "verify-coloring", str(graph), str(col), "--violations", str(vpath))
    assert code == 1 and "violations" in out
    assert "|" in vpath.read_text()


def test_find_coloring_unsat(capsys, k43):
    code, out, _ = run(capsys, "find-coloring", "--k", "1", k43)
    assert code == 1 and out.startswith("UNSAT")


def test_contains_cycle(capsys, k43):
    assert run(capsys, "contains-cycle", "--ell", "4", k43)[0] == 1
    assert run(capsys, "contains-cycle", "--ell", "5", k43)[0] == 0
    assert run(capsys, "contains-cycle", "--ell", "5", "--injective", k43)[0] == 0


def test_exit_codes(capsys, k43):
    assert run(capsys, "check-homfree", "--k", "3", k43)[0] == 2
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "min-codegree", "/nonexistent/file")[0] == 2
    assert run(capsys, "extremal", "--n", "9", "--r", "3", "--k", "1", "--exact")[0] == 3
    code, out, _ = run(capsys, "extremal", "--n", "9", "--r", "3", "--k", "1")
    assert code == 0 and "lower bound" in out
    assert run(capsys, "available-colors", "--r", "7", "--k", "1", "--full")[0] == 3


def test_bad_input_is_usage_error(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("3 4 2\n1 2 3\n")
    code, _, err = run(capsys, "min-codegree", str(bad))
    assert code == 2 and "announces" in err


def test_certificates(capsys, tmp_path, k43):
    graph = tmp_path / "g.txt"
    run(capsys, "gen-construction", "--r", "3", "--p", "3", "--n", "9", "-o", str(graph))
    cert = tmp_path / "cert"
    assert run(capsys, "certify", "--k", "1", "-d", str(cert), str(graph))[0] == 0
    code, out, _ = run(capsys, "verify-cert", str(cert))
    assert code == 0 and out.startswith("certificate valid")
    assert run(capsys, "certify", "--k", "1", "-d", str(tmp_path / "no"), k43)[0] == 1
    (cert / "meta.txt").write_text("9 3 1 5\n")
    assert run(capsys, "verify-cert", str(cert))[0] == 1


def test_pipeline_through_stdin():
    gen = subprocess.run([sys.executable, "-m", "tclab", "gen-construction", "--r", "3", "--p", "3", "--n", "9"],
                         capture_output=True, text=True, check=True)
    check = subprocess.run([sys.executable, "-m", "tclab", "check-homfree", "--k", "1"],
                           input=gen.stdout, capture_output=True, text=True)
    assert check.returncode == 0
    assert check.stdout.strip() == "hom-free for k=1"
    check = subprocess.run([sys.executable, "-m", "tclab", "check-homfree", "--k", "1", "-"],
                           input=K43, capture_output=True, text=True)
    assert check.returncode == 1 and check.stdout.splitlines()[-1] == "1 2 3 4"


def test_selfcheck(capsys):
    code, out, _ = run(capsys, "selfcheck", "--samples", "20", "--max-r", "5")
    assert code == 0 and out.strip().endswith("selfcheck passed")
