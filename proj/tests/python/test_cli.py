"""End-to-end tests of the command line tool."""

import json
import os
import pathlib
import subprocess

CLI = os.environ["DGLIFT_CLI"]
FIX = pathlib.Path(os.environ["DGLIFT_FIXTURES"])


def run(*args, stdin=None):
    return subprocess.run(
        [CLI, *args], input=stdin, capture_output=True, text=True, timeout=60
    )


def test_help():
    r = run("--help")
    assert r.returncode == 0
    for sub in ("check", "homology", "ext", "lift", "lift-iterated",
                "unique", "semidualizing", "resolve"):
        assert sub in r.stdout


def test_check():
    r = run("check", str(FIX / "three_step.json"))
    assert r.returncode == 0
    assert "algebra: ok" in r.stdout
    assert "module: valid" in r.stdout


def test_lift_json_is_deterministic():
    a = run("lift", str(FIX / "three_step.json"), "--json", "-")
    b = run("lift", str(FIX / "three_step.json"), "--json", "-")
    assert a.returncode == 0 and b.returncode == 0
    assert a.stdout == b.stdout
    rep = json.loads(a.stdout)
    assert rep["status"] == "lifted"
    assert [s["n"] for s in rep["transcript"]] == [1, 2]


def test_lift_obstruction_exit_code():
    r = run("lift", str(FIX / "unliftable.json"))
    assert r.returncode == 2
    assert "obstruction" in r.stdout


def test_malformed_input_exit_code():
    r = run("check", "-", stdin="{")
    assert r.returncode == 1
    assert "error:" in r.stderr
    r2 = run("homology", str(FIX / "no_such_file.json"))
    assert r2.returncode == 1


def test_ring_override():
    r = run("homology", str(FIX / "three_step.json"),
            "--ring", "F3[t]", "--precision", "2", "--json", "-")
    assert r.returncode == 0
    assert json.loads(r.stdout)["homology"]["0"] == [1]


def test_transcript_jsonl(tmp_path):
    out = tmp_path / "stages.jsonl"
    r = run("lift", str(FIX / "three_step.json"), "--transcript", str(out))
    assert r.returncode == 0
    lines = [json.loads(l) for l in out.read_text().splitlines()]
    assert [l["n"] for l in lines] == [1, 2]
    for l in lines:
        assert set(l) == {"n", "solved", "delta_valuation", "params"}
        assert l["solved"] is True


def test_stdin_matches_file():
    text = (FIX / "three_step.json").read_text()
    a = run("homology", "-", stdin=text)
    b = run("homology", str(FIX / "three_step.json"))
    assert a.returncode == 0
    assert a.stdout == b.stdout
    assert "H_0" in a.stdout


def test_window():
    r = run("homology", str(FIX / "three_step.json"), "--window", "0..2",
            "--json", "-")
    assert r.returncode == 0
    assert sorted(json.loads(r.stdout)["homology"]) == ["0", "1", "2"]
    bad = run("homology", str(FIX / "three_step.json"), "--window", "2..0")
    assert bad.returncode == 1


def test_ext_exit_codes():
    zero = run("ext", str(FIX / "b_over_b.json"), "--degree", "1")
    assert zero.returncode == 0
    assert "zero" in zero.stdout
    nonzero = run("ext", str(FIX / "three_step.json"), "--degree", "2")
    assert nonzero.returncode == 2
    assert "nonzero" in nonzero.stdout


def test_semidualizing_exit_codes(tmp_path):
    yes = run("semidualizing", str(FIX / "b_over_b.json"))
    assert yes.returncode == 0
    assert "semidualizing: yes" in yes.stdout
    a2 = tmp_path / "a2.json"
    a2.write_text(json.dumps({
        "ring": {"field": {"Fp": 2}, "precision": 2},
        "algebra": {"koszul": []},
        "module": {"semibasis": {"0": 2}},
    }))
    no = run("semidualizing", str(a2))
    assert no.returncode == 2
    assert "semidualizing: no" in no.stdout


def test_lift_iterated_cli():
    doc = json.dumps({
        "ring": {"field": {"Fp": 2}, "precision": 2},
        "algebra": {"koszul": [[0, 1], [0, 1]]},
        "module": {"semibasis": {"0": 1}},
    })
    r = run("lift-iterated", "-", "--json", "-", stdin=doc)
    assert r.returncode == 0
    rep = json.loads(r.stdout)
    assert rep["status"] == "lifted"
    assert [s["variable"] for s in rep["stages"]] == [2, 1]
