"""Library-level smoke tests against the shipped fixtures."""

import json
import os
import pathlib

import pytest

import dglift

FIX = pathlib.Path(os.environ["DGLIFT_FIXTURES"])

RING = {"field": {"Fp": 2}, "precision": 2}


def load(name):
    return json.loads((FIX / name).read_text())


def test_check_fixtures():
    for name in ("three_step.json", "b_over_b.json", "unliftable.json"):
        rep = dglift.check(load(name))
        assert rep["ok"] is True
        assert rep["algebra"] == "ok"
        assert rep["module"] == "valid"


def test_accepts_dict_and_string():
    doc = load("b_over_b.json")
    assert dglift.check(doc) == dglift.check(json.dumps(doc))


def test_homology_three_step():
    rep = dglift.homology(load("three_step.json"))
    assert rep["homology"] == {
        "-1": [],
        "0": [1],
        "1": [1, 1],
        "2": [1, 1],
        "3": [1],
        "4": [],
    }


def test_lift_three_step_and_reingest():
    prob = load("three_step.json")
    rep = dglift.lift(prob)
    assert rep["status"] == "lifted"
    assert rep["transcript"] == [
        {"n": 1, "solved": True, "delta_valuation": 1, "params": 3},
        {"n": 2, "solved": True, "delta_valuation": 2, "params": 0},
    ]
    lifted = rep["lifted"]
    assert lifted["algebra"] == {"koszul": []}
    assert dglift.check(lifted)["ok"] is True
    h = dglift.homology(lifted)["homology"]
    assert h["0"] == [2] and h["1"] == [1] and h["2"] == [1]
    assert dglift.verify_quasilift(prob, lifted) == {"quasilift": True}


def test_lift_obstruction():
    rep = dglift.lift(load("unliftable.json"))
    assert rep["status"] == "obstruction"
    assert rep["stage"] == 2
    assert "stage 2" in rep["message"]


def test_ext_three_way():
    nz = dglift.ext(load("three_step.json"), 2)
    assert nz["status"] == "nonzero"
    assert nz["witness"]["degree"] == -2
    z = dglift.ext(load("b_over_b.json"), 1)
    assert z == {"status": "zero", "witness": None, "window": [0, 0]}


def test_semidualizing():
    assert dglift.semidualizing(load("b_over_b.json")) == {"status": "semidualizing"}
    a2 = {"ring": RING, "algebra": {"koszul": []}, "module": {"semibasis": {"0": 2}}}
    rep = dglift.semidualizing(a2)
    assert rep["status"] == "no"
    assert rep["degree"] == 0
    assert rep["invariants"] == [2, 2, 2]


def test_lift_iterated_two_variables():
    doc = {
        "ring": RING,
        "algebra": {"koszul": [[0, 1], [0, 1]]},
        "module": {"semibasis": {"0": 1}},
    }
    rep = dglift.lift_iterated(doc)
    assert rep["status"] == "lifted"
    assert rep["resolved"] is False
    assert [s["variable"] for s in rep["stages"]] == [2, 1]
    assert rep["lifted"]["algebra"] == {"koszul": []}
    assert rep["complex"] == {"lo": 0, "ranks": [1], "differentials": []}


def test_resolve():
    t = [0, 1]
    over_b = {
        "ring": RING,
        "algebra": {"koszul": [t]},
        "complex": {
            "lo": 0,
            "ranks": [1, 1],
            "differentials": [[[t]]],
            "action": [{"gamma": [1, 0], "from_degree": 0, "matrix": [[[1]]]}],
        },
    }
    rep = dglift.resolve(over_b)
    assert rep["complete"] is True
    assert rep["resolution"]["module"]["semibasis"] == {"0": 1}
    assert dglift.check(rep["resolution"])["ok"] is True

    plain = {
        "ring": RING,
        "algebra": {"koszul": []},
        "complex": {"lo": 0, "ranks": [1, 1], "differentials": [[[t]]]},
    }
    rep2 = dglift.resolve(plain)
    assert rep2["complete"] is True
    h = dglift.homology(plain)["homology"]
    assert h["0"] == [1] and h["1"] == [1]


def test_unique_identity_descends():
    mod = {
        "semibasis": {"0": 1, "1": 1},
        "alpha": {"1,0": [{"coeff": [0, 1], "gamma": [0, 0], "target": [0, 0]}]},
    }
    ident = {
        "degree": 0,
        "values": {
            "0,0": [{"coeff": [1], "gamma": [0, 0], "target": [0, 0]}],
            "1,0": [{"coeff": [1], "gamma": [0, 0], "target": [1, 0]}],
        },
    }
    doc = {
        "ring": RING,
        "algebra": {"koszul": [[0, 1]]},
        "modules_over": "inner",
        "module": mod,
        "module2": mod,
        "map": ident,
    }
    rep = dglift.unique(doc)
    assert rep["status"] == "isomorphic"
    assert rep["correction_stages"] == 0
    assert rep["iso"]["values"] == ident["values"]


def test_schema_errors():
    with pytest.raises(dglift.SchemaError):
        dglift.check("not json at all")
    with pytest.raises(dglift.SchemaError):
        dglift.check({"ring": {"field": "R", "precision": 2}})
    with pytest.raises(dglift.SchemaError):
        dglift.lift({"ring": RING, "algebra": {"koszul": []}})
