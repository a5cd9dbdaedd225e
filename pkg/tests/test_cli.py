import io
import json

from charpair.cli import run_cli
from charpair.io import load_builtin, parse_document


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = run_cli(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_condition_m2(capsys):
    code, out, _ = run(capsys, "check-condition", "m2_n5.json")
    assert code == 0
    assert "condition trivial: yes" in out


def test_check_condition_cp2(capsys):
    code, out, _ = run(capsys, "check-condition", "cp2.json", "--json")
    assert code == 3
    report = json.loads(out)
    assert report["image_order"] == 6 and report["kernel_order"] == 2 and report["order"] == 12


def test_construct_then_classify(capsys, monkeypatch):
    code, doc, _ = run(capsys, "construct", "m2", "--n", "5", "--k", "2,3,4")
    assert code == 0
    assert doc == load_builtin("m2_n5.json")
    code, out, _ = run(capsys, "classify-facets", "--refs", "table1", "--json", stdin=doc, monkeypatch=monkeypatch)
    assert code == 0
    assert [e["count"] for e in json.loads(out)["histogram"]] == [1, 1, 2, 2, 3]


def test_classify_human_output_uses_alpha_notation(capsys):
    code, out, _ = run(capsys, "classify-facets", "m2_n5.json", "--refs", "blowup_refs_n5.json")
    assert code == 0
    assert "(0,1,2,3,4)" in out and "Δ^4" in out


def test_validate(capsys, tmp_path):
    code, out, _ = run(capsys, "validate", "cp2.json")
    assert code == 0 and out.startswith("valid pair")
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"schema_version": "1.0", "dim": 2, "vertices": [[0, 1], [0, 2], [1, 2]],
                               "lambda": [[1, 0], [0, 1], [1, 2]]}))
    code, out, _ = run(capsys, "validate", str(bad), "--json")
    assert code == 2
    assert json.loads(out)["offending_vertices"] == [{"vertex": 1, "facets": [0, 2], "det": 2}]


def test_validate_polytope_only(capsys, tmp_path):
    f = tmp_path / "p.json"
    f.write_text(json.dumps({"schema_version": "1.0", "dim": 2, "vertices": [[0, 1, 2]]}))
    code, out, _ = run(capsys, "validate", str(f))
    assert code == 2 and "NotSimple" in out


def test_aut(capsys):
    code, out, _ = run(capsys, "aut", "hirzebruch2.json", "--json")
    assert code == 0
    assert json.loads(out)["order"] == 8


def test_construct_variants(capsys, tmp_path):
    code, out, _ = run(capsys, "construct", "simplex", "--n", "3")
    assert code == 0 and parse_document(out).to_pair().dim == 3
    target = tmp_path / "prod.json"
    code, _, _ = run(capsys, "construct", "product", "cp2.json", "cp2.json", "-o", str(target))
    assert code == 0 and parse_document(target.read_text()).to_pair().facet_count == 6
    code, out, _ = run(capsys, "construct", "vertex-cut", "cp2.json", "--vertex", "0")
    assert code == 0 and parse_document(out).to_pair().lambdas[-1] == (1, 1)
    code, out, _ = run(capsys, "construct", "bott", "--k", "2,3")
    assert code == 0 and parse_document(out).dim == 3


def test_errors(capsys):
    assert run(capsys, "construct", "m2", "--n", "5", "--k", "2,2,3")[0] == 2
    assert run(capsys, "construct", "bott", "--k", "x")[0] == 1
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys, "aut", "does-not-exist.json")[0] == 2
    assert run(capsys, "search", "cp2.json", "--budget", "2")[0] == 2


def test_search_seeded(capsys):
    a = run(capsys, "search", "m2_n5.json", "--mode", "random", "--samples", "30", "--bound", "3",
            "--seed", "42", "--json")
    b = run(capsys, "search", "m2_n5.json", "--mode", "random", "--samples", "30", "--bound", "3",
            "--seed", "42", "--json")
    assert a == b and a[0] == 0


def test_iso(capsys):
    code, out, _ = run(capsys, "iso", "cp1xcp1.json", "hirzebruch2.json", "--json")
    assert code == 0 and json.loads(out)["isomorphic"] is False
    code, out, _ = run(capsys, "iso", "cp2.json", "cp2.json")
    assert out.startswith("isomorphic")


def test_iso_polytopes(capsys):
    code, out, _ = run(capsys, "iso", "blowup_refs_n5.json", "cp2.json")
    assert code == 2
