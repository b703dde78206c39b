import json
import pathlib

import pytest

import tropical

FIXTURES = pathlib.Path(__file__).resolve().parents[2] / "fixtures"


def load(name):
    return json.loads((FIXTURES / f"{name}.json").read_text())


def test_genus0_realizable_with_certificate():
    inst = load("g0_tree")
    report, cert = tropical.certify(inst)
    assert report["verdict"] == "REALIZABLE"
    assert report["exit_code"] == 0
    assert cert["instance_sha256"] == tropical.instance_hash(inst)
    assert tropical.verify(inst, cert)["verdict"] == "ACCEPT"


def test_lone_minimal_leg_not_realizable():
    report, cert = tropical.certify(load("g1_one_leg"))
    assert report["verdict"] == "NOT_REALIZABLE"
    assert report["exit_code"] == 1
    assert cert is None


def test_threshold_fail_carries_bounds():
    report = tropical.check(load("g2_theta_frame_short"))
    assert report["verdict"] == "THRESHOLD_FAIL"
    assert report["exit_code"] == 2
    assert any(b["edge"] == 19 and b["bound"] == "3/2" for b in report["bounds"])


def test_rank2_report():
    report = tropical.check(load("r2_two_legs"))
    assert report["verdict"] == "CONDITIONALLY_REALIZABLE"
    assert len(report["characters"]) == 2


def test_certificate_bound_to_its_instance():
    _, cert = tropical.certify(load("g1_two_legs_equal"))
    other = load("g1_y_equal_arms")
    res = tropical.verify(other, cert)
    assert res["verdict"] == "REJECT"
    assert "base mismatch" in res["diagnostic"]


def test_hurwitz():
    assert tropical.hurwitz({"degree": 2, "profiles": [[2], [2]]})["result"] == "SOLVABLE"
    assert tropical.hurwitz({"degree": 2, "profiles": [[2], [2], [2]]})["result"] == "UNSOLVABLE"
    assert tropical.hurwitz({"degree": 9, "profiles": [[9], [9]]})["result"] == "LIMIT"


def test_dot_export():
    assert tropical.to_dot(load("g2_dumbbell")).startswith("graph ")


def test_bad_input_raises():
    with pytest.raises(ValueError):
        tropical.check(  # a single ray of slope 1: not balanced
            {"vertices": [0], "edges": [], "rays": [{"id": 1, "base": 0}], "values": {"0": "0"}, "slopes": {"1:0": 1}}
        )
    with pytest.raises(ValueError):
        tropical.check("{not json")
