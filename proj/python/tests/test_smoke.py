import os
from fractions import Fraction

import pytest

import curvtree


def test_algebra_basics():
    a = curvtree.Algebra("sl:4")
    assert a.dim == 15
    assert len(a.roots) == 12
    assert a.simple_roots == ["e1-e2", "e2-e3", "e3-e4"]
    assert Fraction(a.killing("E12", "E21")) == 8
    assert a.bracket("E12", "E21") == "H1"
    assert Fraction(a.inner("4e2", "4e2")) == Fraction(3, 2)
    assert [Fraction(x) for x in a.dual("4e2")] == [Fraction(-1, 8), Fraction(3, 8), Fraction(-1, 8), Fraction(-1, 8)]


def test_quaternionic_pairings():
    a = curvtree.Algebra("qc:2,2")
    assert a.dim == 78
    assert Fraction(a.inner("e0-e1", "2e0-4e1")) == Fraction(6, 56)
    assert Fraction(a.inner("e0+e1", "2e0-4e1")) == Fraction(-2, 56)


def test_fixtures_listed():
    assert set(curvtree.list_fixtures()) >= {
        "grassmannian_k2_m4",
        "borel_pgl4_neg",
        "quaternionic_m2_n2",
    }


def test_certify_grassmannian():
    r = curvtree.certify("grassmannian_k2_m4")
    assert r["result"] == "PASS"
    a0 = curvtree.check(r, "a0")["witness"]
    assert a0["alpha"] == "e1-e4" and a0["nu0"] == "e2-e3"
    c0 = curvtree.check(r, "c0")["witness"]
    assert Fraction(c0["ratio"]) == Fraction(3, 4)
    assert c0["c0"] == "e1=2/3, e2=0, e3=-1/3, e4=-1/3"


def test_certify_scaling_weight_fails():
    r = curvtree.certify("borel_pgl4_neg")
    assert r["result"] == "FAIL"
    assert r["failed"] == "weight is scaling element"


def test_inline_seed_and_enumeration():
    r = curvtree.enumerate_seeds("sl:4", "1,2,3")
    cands = [c for c in r["checks"] if c["name"].startswith("candidate")]
    assert len(cands) == 5
    s = curvtree.certify(algebra="sl:5", cross=[1, 2], seed="e2-e3,e1-e3,e5-e3")
    assert curvtree.check(s, "c0")["witness"]["strategy"] == "feasibility"


def test_audit_and_errors():
    assert curvtree.audit("sl:3", 1)["result"] == "PASS"
    broken = os.path.join(os.environ.get("CURVTREE_TEST_DATA", ""), "broken.sc")
    if os.path.exists(broken):
        r = curvtree.audit("file:" + broken, 1, hodge=False)
        assert r["result"] == "FAIL"
    with pytest.raises(ValueError):
        curvtree.Algebra("so:5")
    with pytest.raises(ValueError):
        curvtree.certify("no_such_fixture")
    with pytest.raises(ValueError):
        curvtree.enumerate_seeds("sl:4", [9])


def test_cartan_round_trip():
    vals = curvtree._core.cartan_from_epsilon("sl:5", ["2", "1", "0", "0", "-3"])
    assert vals == ["2", "1", "0", "0", "-3"]
