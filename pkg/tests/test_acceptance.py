"""Exit criteria. Each test carries an ``acceptance`` marker; the summary prints one line per criterion.

Run just these with ``pytest tests/test_acceptance.py``.
"""
import itertools
import random
import time

import pytest

from sphere_mcg.checks import embedding_certified, realization_matches
from sphere_mcg.classification import class_counts
from sphere_mcg.fpgroup import table_to_permgroup, todd_coxeter
from sphere_mcg.hyperelliptic import (
    LIFT_NAMES,
    count_maximal_classes,
    presentation_of,
    smallest_admissible_genus,
    verify_lift,
)
from sphere_mcg.permgroup import are_isomorphic
from sphere_mcg.sphere_actions import (
    RotationType,
    enumerate_descriptors,
    is_maximal,
    maximal_extension,
    maximal_types,
    order_n_element_exists,
)

R_MAX = 5000


@pytest.mark.acceptance(1, "maximal types: derived == congruence for r in 4..5000, r=3 divergence reported")
def test_maximal_types_equivalence():
    start = time.perf_counter()
    bad = [r for r in range(4, R_MAX + 1) if maximal_types(r, "derived") != maximal_types(r, "congruence")]
    elapsed = time.perf_counter() - start
    assert bad == []
    assert elapsed < 10, f"{elapsed:.1f}s"
    assert {x.label for x in maximal_types(3, "derived")} == {"D3"}
    assert {x.label for x in maximal_types(3, "congruence")} == {"Z2", "D3"}


def expected_class_count(r, iso):
    if iso.tag == "Cyclic" and iso.n == 2 and r % 2 == 0:
        return 2
    if iso.tag == "Dihedral" and (r % (2 * iso.n) == 0 or (r - 2) % (2 * iso.n) == 0):
        return 2
    return 1


@pytest.mark.acceptance(2, "class counts equal the closed form for every feasible type, r in 3..5000")
def test_class_counts():
    mismatches = [(r, iso.label, n) for r in range(3, R_MAX + 1)
                  for iso, n in class_counts(r).items() if n != expected_class_count(r, iso)]
    assert mismatches == []


@pytest.mark.acceptance(3, "polyhedral spot values at r = 26, 62, 14, 4")
def test_polyhedral_spot_values():
    def rows(r, tag):
        return [(d.table_row, d.k) for d in enumerate_descriptors(r, RotationType(tag))]

    assert rows(26, "octahedral") == [("h", 0)]
    assert rows(62, "icosahedral") == [("h", 0)]
    assert rows(14, "tetrahedral") == [("h", 0)]
    assert rows(4, "tetrahedral") == [("b", 0), ("e", 0)]


@pytest.mark.acceptance(4, "order-n elements exist iff n divides r, r-1 or r-2 (r in 3..5000)")
def test_order_n_elements():
    bad = [(r, n) for r in range(3, R_MAX + 1) for n in range(2, r + 1)
           if order_n_element_exists(r, n) != (r % n == 0 or (r - 1) % n == 0 or (r - 2) % n == 0)]
    assert bad == []


@pytest.mark.acceptance(5, "hyperelliptic maximal class counts, g in 2..1000")
def test_hyperelliptic_counts():
    bad = [g for g in range(2, 1001)
           if count_maximal_classes(g, "catalog") != count_maximal_classes(g, "closed_form")]
    assert bad == []
    assert count_maximal_classes(2) == 3
    assert count_maximal_classes(7) == 4
    for g in (5, 9, 14, 15, 20, 24, 29, 30):
        assert count_maximal_classes(g) == 5, g


def expected_lift_order(name, g):
    return {"Z4g2": 4 * g + 2, "V2g2": 8 * g + 8, "U2g": 8 * g, "Z2xA4": 24, "SL23": 24,
            "Z2xA5": 120, "SL25": 120}.get(name, 48)


@pytest.mark.acceptance(6, "enumerated lift orders at the smallest admissible genus, each under 1s")
def test_lift_orders():
    for name in LIFT_NAMES:
        g = smallest_admissible_genus(name)
        start = time.perf_counter()
        order, _ = todd_coxeter(presentation_of(name, g))
        elapsed = time.perf_counter() - start
        assert order == expected_lift_order(name, g), name
        assert elapsed < 1, f"{name}: {elapsed:.2f}s"


@pytest.mark.acceptance(7, "lifts are central extensions of their bases; same-order lifts non-isomorphic")
def test_lift_structure():
    models = {}
    for name in LIFT_NAMES:
        g = smallest_admissible_genus(name)
        rec = verify_lift(name, g)
        assert rec.verification.quotient_isomorphic, name
        models[name] = table_to_permgroup(todd_coxeter(presentation_of(name, g))[1])
    for a, b in itertools.combinations(["Z2xS4", "W1", "W2", "W3"], 2):
        assert not are_isomorphic(models[a], models[b]), (a, b)
    assert not are_isomorphic(models["Z2xA4"], models["SL23"])
    assert not are_isomorphic(models["Z2xA5"], models["SL25"])


@pytest.mark.acceptance(8, "every non-maximal action embeds in its maximal extension, r in 3..30, under 60s")
def test_embeddings():
    start = time.perf_counter()
    checked = 0
    for r in range(3, 31):
        for d in enumerate_descriptors(r):
            if is_maximal(d):
                continue
            assert maximal_extension(d) is not None, d
            assert embedding_certified(d), d
            checked += 1
    assert checked > 0
    assert time.perf_counter() - start < 60


@pytest.mark.acceptance(9, "200 random descriptors (r <= 120) realize with the right orbit profile")
def test_random_realizations():
    rnd = random.Random(20260)
    for _ in range(200):
        r = rnd.randint(3, 120)
        d = rnd.choice(enumerate_descriptors(r))
        assert realization_matches(d), d
