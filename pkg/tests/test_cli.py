import io
import json

import pytest

from preorderspace.cli import main

SQRT2_FIELD = json.dumps({"min_poly": [-2, 0, 1], "isolating": ["1", "2"]})


def run_cli(capsys, monkeypatch, args, stdin=""):
    monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(args)
    return code, capsys.readouterr().out


def test_canon_scaling(capsys, monkeypatch):
    code, out = run_cli(capsys, monkeypatch, ["canon"],
                        '{"n": 2, "rows": [["2", "0"]]}')
    assert code == 0
    blob = json.loads(out)
    assert blob["rows"] == [["1", "0"]]
    assert blob["rank"] == 1 and blob["degree"] == 1


def test_canon_empty_rows(capsys, monkeypatch):
    code, out = run_cli(capsys, monkeypatch, ["canon"], '{"n": 3, "rows": []}')
    blob = json.loads(out)
    assert code == 0 and blob["degree"] == 3 and blob["type"] == []


def test_canon_round_trip_stable(capsys, monkeypatch):
    code, out = run_cli(capsys, monkeypatch, ["canon", "--field", SQRT2_FIELD],
                        '{"n": 2, "rows": [[["1","0"],["0","1"]],[["0","0"],["0","1"]]]}')
    assert code == 0
    code2, out2 = run_cli(capsys, monkeypatch, ["canon", "--field", SQRT2_FIELD], out)
    assert code2 == 0 and out2 == out
    assert json.loads(out)["rank"] == 1


def test_compare(capsys, monkeypatch):
    payload = json.dumps({"p": {"n": 2, "rows": [["1", "0"], ["0", "1"]]},
                          "u": [0, -3], "v": [0, 0]})
    code, out = run_cli(capsys, monkeypatch, ["compare"], payload)
    assert code == 0 and json.loads(out) == {"result": "<"}
    payload = json.dumps({"p": {"n": 2, "rows": []}, "u": [5, 1], "v": [0, 0]})
    code, out = run_cli(capsys, monkeypatch, ["compare"], payload)
    assert json.loads(out) == {"result": "~"}


def test_meet_and_refines(capsys, monkeypatch):
    p = {"n": 2, "rows": [["1", "0"], ["0", "1"]]}
    q = {"n": 2, "rows": [["1", "0"], ["0", "-1"]]}
    code, out = run_cli(capsys, monkeypatch, ["meet"], json.dumps({"p": p, "q": q}))
    assert code == 0 and json.loads(out)["rows"] == [["1", "0"]]
    code, out = run_cli(capsys, monkeypatch, ["refines"],
                        json.dumps({"p": {"n": 2, "rows": [["1", "0"]]}, "q": p}))
    assert code == 0 and json.loads(out) == {"refines": True}


def test_distance(capsys, monkeypatch):
    p = {"n": 2, "rows": [["1", "0"]]}
    code, out = run_cli(capsys, monkeypatch, ["distance", "--m-max", "5"],
                        json.dumps({"p": p, "q": p}))
    assert code == 0 and json.loads(out) == {"distance": "0"}
    q = {"n": 2, "rows": [["-1", "0"]]}
    code, out = run_cli(capsys, monkeypatch, ["distance", "--m-max", "5"],
                        json.dumps({"p": p, "q": q}))
    assert json.loads(out) == {"distance": "1/1"}


def test_witness_isolated_exit_code(capsys, monkeypatch):
    code, out = run_cli(capsys, monkeypatch, ["witness", "--m", "3"],
                        '{"n": 2, "rows": [["1", "0"]]}')
    assert code == 3
    assert json.loads(out)["error"] == "isolated"


def test_witness_found(capsys, monkeypatch):
    payload = json.dumps({"n": 2, "rows": [[["1", "0"], ["0", "1"]]]})
    code, out = run_cli(capsys, monkeypatch,
                        ["witness", "--field", SQRT2_FIELD, "--m", "3", "--count", "2",
                         "--same-type"], payload)
    assert code == 0
    blob = json.loads(out)
    assert len(blob["neighbors"]) == 2
    assert all(w["rank"] == 1 and w["degree"] == 0 for w in blob["neighbors"])


def test_fragment_dot(capsys, monkeypatch):
    payload = json.dumps({"n": 1, "candidates": [["1"], ["-1"]]})
    code, out = run_cli(capsys, monkeypatch, ["fragment"], payload)
    assert code == 0
    assert out.count("->") == 2 and out.startswith("digraph fragment {")


def test_act(capsys, monkeypatch):
    payload = json.dumps({"phi": {"matrix": [["0", "1"], ["1", "0"]]},
                          "p": {"n": 2, "rows": [["1", "0"]]}})
    code, out = run_cli(capsys, monkeypatch, ["act"], payload)
    assert code == 0 and json.loads(out)["rows"] == [["0", "1"]]


def test_valuate(capsys, monkeypatch):
    payload = json.dumps({
        "p": {"n": 2, "rows": [["1", "0"], ["0", "1"]]},
        "f": {"n": 2, "field": "Q", "terms": [{"e": [1, 0], "c": "1"},
                                              {"e": [0, 1], "c": "1"}]},
    })
    code, out = run_cli(capsys, monkeypatch, ["valuate"], payload)
    assert code == 0
    assert json.loads(out) == {"value": {"infinite": False, "tuple": ["0", "1"]}}


def test_check_suite(capsys, monkeypatch):
    code, out = run_cli(capsys, monkeypatch,
                        ["check", "axioms", "--seed", "3", "--cases", "10"])
    assert code == 0
    blob = json.loads(out)
    assert blob["passed"] and blob["suite"] == "axioms"


def test_check_unknown_suite(capsys, monkeypatch):
    code, _ = run_cli(capsys, monkeypatch, ["check", "nonsense"])
    assert code == 1


def test_malformed_json_exit_1(capsys, monkeypatch):
    code, _ = run_cli(capsys, monkeypatch, ["canon"], "{not json")
    assert code == 1


def test_domain_error_exit_2(capsys, monkeypatch):
    bad_field = json.dumps({"min_poly": [-4, 0, 1], "isolating": ["1", "3"]})
    code, out = run_cli(capsys, monkeypatch, ["canon", "--field", bad_field],
                        '{"n": 2, "rows": []}')
    assert code == 2
    code, _ = run_cli(capsys, monkeypatch, ["canon"], '{"n": 2, "rows": [["1","0","0"]]}')
    assert code == 2


def test_out_file(tmp_path, capsys, monkeypatch):
    target = tmp_path / "out.json"
    code, out = run_cli(capsys, monkeypatch, ["canon", "--out", str(target)],
                        '{"n": 1, "rows": [["4"]]}')
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["rows"] == [["1"]]
