import json
import pathlib

import pytest

import tstruct

FX = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def load(name):
    return json.loads((FX / name).read_text())


def test_cousin_witness():
    r = tstruct.weak_cousin(load("cousin_violation.json"))
    assert r == {"weak": False, "witnesses": [[1, "(2)", "0"]]}


def test_census_counts():
    assert len(tstruct.census("Z", -3, 3)) == 1304
    assert len(tstruct.census("Z", -3, 3, weak_only=True)) == 51
    assert len(tstruct.census(load("chain2.json"), 0, 1)) == 8


def test_truncation_of_z():
    t = tstruct.truncate(load("cousin_violation.json"), load("z0_complex.json"))
    assert t["determinate"]
    assert [d["degree"] for d in t["lower"]["degrees"]] == [1]
    assert t["lower"]["degrees"][0]["atoms"][0]["kind"] == "prufer"


def test_duality_round_trip():
    x = load("koszul_6.json")
    h = tstruct.homology(x)
    assert tstruct.dualize(tstruct.dualize(h)) == h
    assert tstruct.cm_membership(h) == {"byHom": True, "byAisle": True}


def test_kashiwara():
    z, x = load("subset_2.json"), load("z0_complex.json")
    assert tstruct.kashiwara1(z, x, 0) == {"c1": True, "c2": True, "c3": True}
    assert tstruct.kashiwara2(z, x, 1) == {"c1": False, "c2": False}


def test_dual_of_canonical_is_cm():
    canonical = load("canonical_minus1.json")
    cm = tstruct.cm_filtration("Z")
    d = tstruct.dual_filtration(canonical)
    assert d["levels"] == cm["levels"]
    assert d["window"]["start"] == cm["window"]["start"] + 1


def test_suite_runs():
    r = tstruct.run_suite("spectrum")
    assert r["pass"] and r["seed"] == tstruct.DEFAULT_SEED


def test_bad_input():
    with pytest.raises(ValueError):
        tstruct.weak_cousin("{not json")
