import itertools

import pytest

from sphere_mcg.errors import NotAdmissible
from sphere_mcg.fpgroup import table_to_permgroup, todd_coxeter
from sphere_mcg.hyperelliptic import (
    LIFT_NAMES,
    base_of,
    catalog_json,
    count_maximal_classes,
    is_admissible,
    lift_catalog,
    presentation_of,
    smallest_admissible_genus,
    verify_lift,
)
from sphere_mcg.permgroup import are_isomorphic
from sphere_mcg.sphere_actions import maximal_types


def names(g):
    return [rec.name for rec in lift_catalog(g)]


def test_catalog_examples():
    assert names(2) == ["Z4g2", "V2g2", "W1"]
    assert names(5) == ["Z4g2", "V2g2", "U2g", "W2", "Z2xA5"]
    assert names(3) == ["Z4g2", "V2g2", "U2g", "Z2xS4"]


def test_expected_orders():
    g = 12
    orders = {rec.name: rec.expected_order for rec in lift_catalog(g)}
    assert orders["Z4g2"] == 4 * g + 2
    assert orders["V2g2"] == 8 * g + 8
    assert orders["U2g"] == 8 * g
    assert orders["W3"] == 48


def test_presentations():
    assert str(presentation_of("U2g", 3)) == "<x,y | x^2, y^12, x*y*x*y^7>"
    assert str(presentation_of("V2g2", 2)) == "<x,y | x^4, y^6, (x*y)^2, (x^-1*y)^2>"
    assert str(presentation_of("Z4g2", 2)) == "<x | x^10>"
    u = presentation_of("U2g", 3)
    assert u.relators == ((1, 1), (2,) * 12, (1, 2, 1) + (2,) * 7)
    with pytest.raises(NotAdmissible):
        presentation_of("U2g", 2)
    with pytest.raises(NotAdmissible):
        presentation_of("SL23", 5)


@pytest.mark.parametrize("name, g, base", [("SL23", 4, "A4"), ("W2", 5, "S4"), ("Z2xA5", 5, "A5")])
def test_verify_examples(name, g, base):
    rec = verify_lift(name, g)
    v = rec.verification
    assert rec.base.label == base
    assert v.enumerated_order == rec.expected_order == 2 * rec.base.order
    assert v.quotient_isomorphic
    assert v.center_order == 2


def test_verify_with_larger_center():
    rec = verify_lift("V2g2", 3)
    assert rec.verification.center_order == 4
    assert rec.verification.quotient_order == 16


@pytest.mark.parametrize("g, expected", [(2, 3), (5, 5), (7, 4), (30, 5), (3, 4)])
def test_counts(g, expected):
    assert count_maximal_classes(g, "catalog") == count_maximal_classes(g, "closed_form") == expected


def test_counts_agree_and_bases_match_sphere_types():
    for g in range(2, 1001):
        assert count_maximal_classes(g, "catalog") == count_maximal_classes(g, "closed_form")
        bases = sorted(rec.base.label for rec in lift_catalog(g))
        assert bases == sorted(x.label for x in maximal_types(2 * g + 2, "congruence")), g


def test_polyhedral_residues_partition():
    for g in range(2, 400):
        small = [n for n in ("Z2xA4", "SL23", "Z2xS4", "W1", "W2", "W3") if is_admissible(n, g)]
        large = [n for n in ("Z2xA5", "SL25") if is_admissible(n, g)]
        assert len(small) == 1 and len(large) <= 1


def test_smallest_admissible():
    assert {n: smallest_admissible_genus(n) for n in LIFT_NAMES} == {
        "Z4g2": 2, "V2g2": 2, "U2g": 3, "Z2xA4": 7, "SL23": 4, "Z2xS4": 3,
        "W1": 2, "W2": 5, "W3": 8, "Z2xA5": 5, "SL25": 14,
    }


def _model(name):
    order, table = todd_coxeter(presentation_of(name, smallest_admissible_genus(name)))
    return table_to_permgroup(table)


def test_pairwise_non_isomorphic():
    models = {n: _model(n) for n in ("Z2xS4", "W1", "W2", "W3", "Z2xA4", "SL23", "Z2xA5", "SL25")}
    for a, b in itertools.combinations(["Z2xS4", "W1", "W2", "W3"], 2):
        assert not are_isomorphic(models[a], models[b]), (a, b)
    assert not are_isomorphic(models["Z2xA4"], models["SL23"])
    assert not are_isomorphic(models["Z2xA5"], models["SL25"])


def test_base_correspondence():
    g = 4
    assert base_of("Z4g2", g).label == "Z9"
    assert base_of("V2g2", g).label == "D10"
    assert base_of("U2g", g).label == "D8"


def test_catalog_json():
    data = catalog_json(5)
    assert data["g"] == 5
    w2 = [x for x in data["lifts"] if x["name"] == "W2"][0]
    assert w2 == {"name": "W2", "base": "S4", "order": 48,
                  "presentation": "<x,y | x^4, y^3, y*x^2*y^-1*x^2, (x*y)^4>", "verified": False}
    verified = catalog_json(2, verify=True)
    assert all(x["verified"] for x in verified["lifts"])
