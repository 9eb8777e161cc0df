import json

import pytest

from lindef.builtins import ngon
from lindef.cli import main
from lindef.io import complex_to_json, complex_to_text


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_compute_ngon(capsys):
    code, data = run_json(capsys, "compute", "--builtin", "ngon:6")
    assert code == 0 and data["ld"] == 4 and data["flags"]["is_ngon"]
    assert data["routes"]["ext"] is None
    code, data = run_json(capsys, "compute", "--builtin", "ngon:6", "--oracle")
    assert data["routes"] == {"lin": 4, "ext": 4}


def test_compute_several_chars(capsys):
    code, data = run_json(capsys, "compute", "--builtin", "rp2_6", "--char", "0", "--char", "2")
    assert code == 0
    assert data["0"]["ld"] == 1 and data["2"]["ld"] == 3


def test_compute_text_output(capsys):
    code, out, _ = run(capsys, "compute", "--builtin", "sharp_family:6,3")
    assert code == 0 and "ld = 3" in out and "indeg = 3" in out


def test_betti(capsys):
    code, data = run_json(capsys, "betti", "--builtin", "sharp_family:6,3")
    assert code == 0 and data["routes_agree"]
    entries = {(r["i"], tuple(r["F"])): r["mult"] for r in data["betti"]}
    assert entries[(3, (1, 2, 3, 4, 5, 6))] == 1
    assert all(not (i == 2 and len(F) == 5) for (i, F) in entries)


def test_dual(capsys):
    code, data = run_json(capsys, "dual", "--builtin", "ngon:4")
    assert code == 0 and data["facets"] == [[1, 3], [2, 4]]
    code, out, _ = run(capsys, "dual", "--builtin", "ngon:4")
    assert out.split("\n")[:2] == ["1 3", "2 4"]


def test_resolve(capsys):
    code, data = run_json(capsys, "resolve", "--builtin", "boundary:3")
    assert code == 0
    assert data["terms"] == [[[]], [[1, 2, 3]]]
    assert data["differentials"][0]["i"] == 1


def test_file_matches_builtin(capsys, tmp_path):
    js = tmp_path / "c.json"
    js.write_text(json.dumps(complex_to_json(ngon(5))))
    txt = tmp_path / "c.txt"
    txt.write_text(complex_to_text(ngon(5)))
    _, a = run_json(capsys, "betti", "--builtin", "ngon:5")
    _, b = run_json(capsys, "betti", "--file", str(js))
    _, c = run_json(capsys, "betti", "--file", str(txt))
    assert a == b == c


def test_verify(capsys):
    code, data = run_json(capsys, "verify", "--suite", "all", "--n", "4", "--chars", "0,2")
    assert code == 0 and data["ok"]
    assert set(data["suites"]) == {"bounds", "ngon", "cone", "duality", "topology"}


def test_scan(capsys):
    code, data = run_json(capsys, "scan", "--n", "4", "--up-to-symmetry")
    assert code == 0 and len(data) == 28
    assert sum(r["ld"] == 2 for r in data) == 1
    code, out, _ = run(capsys, "scan", "--n", "3")
    assert "18 complexes" in out


def test_builtin_list(capsys):
    code, data = run_json(capsys, "builtin-list")
    assert code == 0 and data["ngon"] == 1 and data["rp2_6"] == 0


@pytest.mark.parametrize("argv", [
    ["compute", "--builtin", "nosuch:3"],
    ["compute", "--builtin", "ngon:1,2"],
    ["compute", "--builtin", "ngon:x"],
    ["compute"],
    ["compute", "--builtin", "ngon:4", "--file", "x.json"],
    ["compute", "--file", "/nonexistent/file.json"],
    ["compute", "--builtin", "ngon:4", "--char", "two"],
    ["verify"],
])
def test_exit_parse(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_exit_parse_on_bad_file(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{oops")
    assert run(capsys, "compute", "--file", str(p))[0] == 2


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["nosuch-command"])
    assert exc.value.code == 2


@pytest.mark.parametrize("argv", [
    ["compute", "--builtin", "ngon:2"],
    ["compute", "--builtin", "ngon:4", "--char", "4"],
    ["scan", "--n", "7"],
    ["scan", "--n", "6"],
    ["verify", "--n", "9"],
])
def test_exit_invalid(capsys, argv):
    assert run(capsys, *argv)[0] == 3


def test_exit_invalid_void(capsys, tmp_path):
    p = tmp_path / "void.json"
    p.write_text(json.dumps({"n": 3, "facets": []}))
    assert run(capsys, "compute", "--file", str(p))[0] == 3
    assert run(capsys, "betti", "--file", str(p))[0] == 3


def test_exit_check(capsys, monkeypatch):
    import lindef.cli as cli
    monkeypatch.setitem(cli.SUITES, "cone", lambda n, f: (0, 1))
    assert run(capsys, "verify", "--suite", "cone", "--n", "3")[0] == 4
    monkeypatch.setattr(cli, "hochster_betti", lambda d, f: None)
    assert run(capsys, "betti", "--builtin", "ngon:4")[0] == 4
