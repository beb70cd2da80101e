import io
import json

import pytest

from stacked_sr import cli

from conftest import branching_tree, heptagon_tree, heptagon_triangulation


def run(*argv):
    out = io.StringIO()
    code = cli.main([str(a) for a in argv], out=out)
    return code, out.getvalue()


@pytest.fixture
def files(tmp_path):
    def write(name, data):
        f = tmp_path / name
        f.write_text(data if isinstance(data, str) else json.dumps(data))
        return f

    return write


@pytest.fixture
def hept_file(files):
    return files("hept.json", heptagon_tree().to_dict())


def test_tree_ideal(hept_file):
    code, out = run("tree-ideal", hept_file)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "# generators (10)"
    assert "x_a_1*x_b_1" in lines and "x_c_1*x_d_0" in lines
    assert "F_5: x_a_0 x_b_0 x_c_0 x_d_0" in lines


def test_tree_ideal_json(hept_file):
    code, out = run("tree-ideal", hept_file, "--format", "json")
    data = json.loads(out)
    assert len(data["generators"]) == 10 and len(data["facets"]) == 5


def test_single_edge(files):
    f = files("e.json", {"vertices": ["1", "2"], "edges": [{"id": "e", "ends": ["1", "2"]}]})
    code, out = run("tree-ideal", f)
    assert code == 0 and out.splitlines()[:2] == ["# generators (1)", "x_e_0*x_e_1"]


def test_malformed_json(files, capsys):
    f = files("bad.json", '{"vertices": ["1", "2"\n "edges": []}')
    code, _ = run("tree-ideal", f)
    assert code == cli.EXIT_PARSE
    assert "bad.json:2:2:" in capsys.readouterr().err


def test_schema_error(files):
    f = files("bad.json", {"vertices": ["1"]})
    assert run("tree-ideal", f)[0] == cli.EXIT_PARSE


def test_quotient_with_boundary(hept_file, files):
    p = files("p.json", [["a", "d"], ["b"], ["c"]])
    code, out = run("quotient", hept_file, p, "--boundary")
    assert code == 0
    assert "# quotient facets (5), dimension 2" in out
    assert "# boundary facets (7)" in out
    assert len(out.split("# boundary cycle: ")[1].split()) == 7


def test_quotient_by_whole_vertex_set(hept_file, files):
    q = files("q.json", [["1", "2", "3", "4", "5"]])
    code, out = run("quotient", hept_file, q, "--vertex-partition", "--format", "json")
    data = json.loads(out)
    assert code == 0 and not data["squarefree"]
    assert len(data["generators"]) == 10
    assert sum("^2" in g for g in data["generators"]) == 4


def test_quotient_adjacent_block(hept_file, files, capsys):
    p = files("p.json", [["a", "b"], ["c"], ["d"]])
    code, _ = run("quotient", hept_file, p, "--boundary")
    assert code == cli.EXIT_PRECONDITION
    assert "{a,b}" in capsys.readouterr().err


def test_quotient_partition_must_cover(hept_file, files):
    p = files("p.json", [["a", "d"], ["b"]])
    assert run("quotient", hept_file, p)[0] == cli.EXIT_PRECONDITION


def test_separate(files):
    x = files("x.json", heptagon_triangulation().to_dict())
    code, out = run("separate", x, "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["joins"] == [["5.0", "5.1"]]
    assert len(data["tree"]["edges"]) == 4


def test_separate_rejects_cone(files):
    x = files("x.json", {"facets": [["1", "2"], ["1", "3"]]})
    assert run("separate", x)[0] == cli.EXIT_PRECONDITION


def test_bijection_v2e(files):
    t = branching_tree()
    tf = files("t.json", {"vertices": t.vertices,
                          "edges": [{"id": e, "ends": list(t.ends(e))} for e in t.edge_ids]})
    q = files("q.json", [["1", "3", "5", "8", "10"], ["2", "4", "7"], ["6", "9"]])
    code, out = run("bijection", "v2e", tf, q, "--format", "json")
    blocks = [{tuple(t.ends(e)) for e in b} for b in json.loads(out)]
    assert code == 0
    assert {("5", "6"), ("8", "9"), ("9", "10")} in blocks and len(blocks) == 2


def test_bijection_dependent_block(hept_file, files, capsys):
    q = files("q.json", [["1", "2"], ["3", "4", "5"]])
    assert run("bijection", "v2e", hept_file, q)[0] == cli.EXIT_PRECONDITION
    assert "{1,2}" in capsys.readouterr().err


def test_enumerate_polygon():
    code, out = run("enumerate", "--polygon", 6)
    records = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and len(records) == 14
    assert all(r["n"] == 6 and len(r["facets"]) == 4 for r in records)


def test_enumerate_trees():
    assert len(run("enumerate", "--trees", 5)[1].splitlines()) == 125
    assert len(run("enumerate", "--trees", 7, "--shapes")[1].splitlines()) == 11


def test_cap_exceeded(monkeypatch):
    assert run("enumerate", "--trees", 12)[0] == cli.EXIT_CAP
    assert run("enumerate", "--polygon", 13)[0] == cli.EXIT_CAP
    monkeypatch.setenv("STACKED_SR_MAX_SIZE", "4")
    assert run("enumerate", "--trees", 5)[0] == cli.EXIT_CAP


def test_verify_pass_and_fail():
    code, out = run("verify", "--suite", "partitions", "--max-size", 5)
    assert code == 0 and out.count(": pass") == 3
    code, out = run("verify", "--suite", "boolean_interval", "--max-size", 4)
    assert code == cli.EXIT_FAILED
    assert "interval below {1} | {2,3,4} has 5" in out


def test_verify_regular_suite_reports_only_interval_claim():
    code, out = run("verify", "--suite", "regular", "--max-size", 5)
    failing = [line for line in out.splitlines() if "FAIL" in line]
    assert code == cli.EXIT_FAILED
    assert [line.split(":")[0] for line in failing] == ["boolean_interval"]


def test_verify_unknown_suite():
    assert run("verify", "--suite", "nope")[0] == cli.EXIT_PARSE


def test_verify_cap_and_sampling(monkeypatch):
    monkeypatch.setenv("STACKED_SR_MAX_SIZE", "4")
    assert run("verify", "--suite", "path_reversal", "--max-size", 6)[0] == cli.EXIT_CAP
    code, out = run("verify", "--suite", "path_reversal", "--max-size", 6, "--samples", 2, "--seed", 9)
    assert code == 0 and out == "path_reversal: pass\n"


def test_export_formats(hept_file, files):
    assert run("export", hept_file, "--format", "dot")[1].startswith("digraph T {")
    assert run("export", hept_file, "--format", "algebra")[1].startswith("ring R = QQ[x_a_0")
    assert len(run("export", hept_file, "--format", "text")[1].splitlines()) == 10
    x = files("x.json", heptagon_triangulation().to_dict())
    assert run("export", x, "--format", "text")[1].splitlines()[0] == "1 2 7"
    assert '"1,2,7" -- ' not in run("export", x, "--format", "dot")[1]
    assert json.loads(run("export", x)[1])["facets"][0] == ["1", "2", "7"]


def test_output_is_deterministic(hept_file, files):
    p = files("p.json", [["a", "d"], ["b"], ["c"]])
    for argv in (("quotient", hept_file, p, "--boundary"), ("enumerate", "--polygon", 7)):
        assert run(*argv) == run(*argv)


def test_help_documents_exit_codes(capsys):
    with pytest.raises(SystemExit):
        cli.main(["--help"])
    text = capsys.readouterr().out
    assert "2 parse error" in text and "3 precondition failure" in text and "4 size cap exceeded" in text
