import json
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from sphere_mcg.checks import divides_one_of, embedding_certified, realization_matches
from sphere_mcg.errors import InfeasibleDescriptor
from sphere_mcg.permgroup import GroupName, orbits_and_stabilizers
from sphere_mcg.sphere_actions import (
    ActionDescriptor,
    RotationType,
    descriptor,
    enumerate_descriptors,
    enumerate_descriptors_bruteforce,
    exceptional_orbit_profile,
    extension_chain,
    extension_step,
    from_json,
    is_maximal,
    maximal_extension,
    maximal_types,
    order_n_element_exists,
    realize,
    to_json,
)

TET = RotationType("tetrahedral")
OCT = RotationType("octahedral")
ICO = RotationType("icosahedral")


def profile(rot):
    return [(s.kind, s.length, s.stabilizer_order) for s in exceptional_orbit_profile(rot)]


def test_profiles():
    assert profile(OCT) == [("faces", 6, 4), ("edges", 12, 2), ("vertices", 8, 3)]
    assert profile(RotationType.cyclic(7)) == [("pole", 1, 7), ("pole", 1, 7)]
    assert profile(ICO) == [("faces", 12, 5), ("edges", 30, 2), ("vertices", 20, 3)]
    assert profile(TET) == [("faces", 4, 3), ("edges", 6, 2), ("vertices", 4, 3)]
    assert profile(RotationType.dihedral(5)) == [("poles", 2, 5), ("vertices", 5, 2), ("edges", 5, 2)]
    assert profile(RotationType.dihedral(2)) == [(f"axis{i}", 2, 2) for i in range(3)]
    for rot in [OCT, ICO, TET, RotationType.dihedral(9), RotationType.cyclic(4), RotationType.dihedral(2)]:
        assert all(s.length * s.stabilizer_order == rot.order for s in exceptional_orbit_profile(rot))


def test_rotation_type_validation():
    with pytest.raises(ValueError):
        RotationType.cyclic(1)
    with pytest.raises(ValueError):
        RotationType.dihedral(1)
    with pytest.raises(ValueError):
        RotationType("octahedral", 3)


def test_enumerate_examples():
    (d,) = enumerate_descriptors(26, OCT)
    assert (d.table_row, d.k) == ("h", 0)
    tets = enumerate_descriptors(4, TET)
    assert [(d.table_row, d.k) for d in tets] == [("b", 0), ("e", 0)]
    (d,) = enumerate_descriptors(3, RotationType.cyclic(2))
    assert (d.n_marked_slots, d.k) == (1, 1)


def test_enumeration_matches_bruteforce():
    for r in range(3, 151):
        assert enumerate_descriptors(r) == enumerate_descriptors_bruteforce(r)


def test_enumeration_is_canonical_and_duplicate_free():
    for r in (3, 4, 12, 60, 61):
        ds = enumerate_descriptors(r)
        assert len(set(ds)) == len(ds)
        assert ds == sorted(ds, key=ActionDescriptor.sort_key)


def test_descriptor_validation():
    with pytest.raises(InfeasibleDescriptor):
        ActionDescriptor(5, OCT, 0, 0)
    with pytest.raises(InfeasibleDescriptor):
        ActionDescriptor(2, RotationType.cyclic(2), 0, 1)
    with pytest.raises(InfeasibleDescriptor):
        ActionDescriptor(3, RotationType.cyclic(2), 2, 1)  # south pole alone is not canonical
    with pytest.raises(InfeasibleDescriptor):
        descriptor(7, TET, ["faces"])


def test_realize_examples():
    g, labels = realize(descriptor(26, OCT, ["faces", "edges", "vertices"]))
    assert g.order == 24
    assert sorted((len(o), s) for o, s in orbits_and_stabilizers(g)) == [(6, 4), (8, 3), (12, 2)]
    assert Counter(lab for lab, _ in labels) == {"faces": 6, "edges": 12, "vertices": 8}

    g, _ = realize(descriptor(6, RotationType.cyclic(5), ["pole"]))
    assert g.order == 5
    assert sorted((len(o), s) for o, s in orbits_and_stabilizers(g)) == [(1, 5), (5, 1)]

    g, _ = realize(descriptor(5, RotationType.dihedral(3), ["poles", "vertices"]))
    assert g.order == 6
    assert sorted((len(o), s) for o, s in orbits_and_stabilizers(g)) == [(2, 3), (3, 2)]


def test_octahedral_edge_stabilizers_are_edge_half_turns():
    g, labels = realize(descriptor(12, OCT, ["edges"]))
    # an edge half-turn fixes exactly its own two edge midpoints; stabilizing
    # with a double transposition instead would give involutions with 4 fixed edges
    for e in g.elements:
        fixed = [p for p in range(12) if e(p) == p]
        if e.order() == 2 and fixed:
            assert len(fixed) == 2


@pytest.mark.parametrize(
    "d, expected",
    [
        (descriptor(4, TET, ["vertices"]), True),
        (descriptor(12, TET, []), False),
        (descriptor(4, RotationType.cyclic(3), ["pole"]), False),
        (descriptor(5, RotationType.cyclic(4), ["pole"]), True),
        (descriptor(3, RotationType.cyclic(2), ["pole"]), False),
        (descriptor(6, RotationType.dihedral(4), ["poles", "vertices"]), False),
        (descriptor(7, RotationType.dihedral(5), ["poles", "edges"]), True),
        (descriptor(9, RotationType.dihedral(9), ["edges"]), True),
        (descriptor(4, RotationType.dihedral(2), ["axis0", "axis1"]), False),
        (descriptor(62, ICO, ["faces", "edges", "vertices"]), True),
    ],
)
def test_is_maximal(d, expected):
    assert is_maximal(d) is expected


def test_maximal_extension_examples():
    # independent oracle: the octahedral markings that fit r=12, by brute force
    fits = [m for m in range(8) if (12 - sum(L for i, L in enumerate((6, 12, 8)) if m >> i & 1)) % 24 == 0
            and 12 >= sum(L for i, L in enumerate((6, 12, 8)) if m >> i & 1)]
    assert fits == [2]
    ext = maximal_extension(descriptor(12, TET, []))
    assert (ext.rot, ext.mask, ext.k) == (OCT, 2, 0)

    ext = maximal_extension(descriptor(6, RotationType.dihedral(4), ["poles", "vertices"]))
    assert (ext.rot, ext.table_row, ext.k) == (OCT, "b", 0)

    assert maximal_extension(descriptor(26, OCT, ["faces", "edges", "vertices"])) is None


def test_klein_extension_at_4():
    d = descriptor(4, RotationType.dihedral(2), ["axis0", "axis1"])
    assert maximal_extension(d) == descriptor(4, RotationType.dihedral(4), ["vertices"])
    chain = extension_chain(descriptor(4, RotationType.cyclic(2), ["pole", "pole"]))
    assert [c.rot.label for c in chain] == ["Z2", "D2", "D4"]


def test_extension_step_none_for_maximal():
    assert extension_step(descriptor(5, RotationType.cyclic(4), ["pole"])) is None


@pytest.mark.parametrize(
    "r, labels",
    [
        (5, {"Z4", "D5", "D3"}),
        (12, {"Z11", "D12", "D10", "S4", "A5"}),
        (4, {"D4", "A4"}),
        (6, {"Z5", "D6", "S4"}),
    ],
)
def test_maximal_types_examples(r, labels):
    for mode in ("derived", "congruence"):
        assert {x.label for x in maximal_types(r, mode)} == labels


def test_r3_divergence():
    assert {x.label for x in maximal_types(3, "derived")} == {"D3"}
    assert {x.label for x in maximal_types(3, "congruence")} == {"Z2", "D3"}


def test_maximal_types_agree_small_range():
    for r in range(4, 400):
        assert maximal_types(r, "derived") == maximal_types(r, "congruence"), r


def test_order_n_examples():
    assert order_n_element_exists(7, 6)
    assert not order_n_element_exists(7, 4)
    for n in range(3, 40):
        assert order_n_element_exists(n, n)


def test_order_n_agrees_with_divisibility_small():
    for r in range(3, 300):
        for n in range(2, r + 1):
            assert order_n_element_exists(r, n) == divides_one_of(n, r)


def test_json_format():
    d = descriptor(26, OCT, ["faces", "edges", "vertices"])
    assert json.dumps(to_json(d), separators=(",", ":")) == (
        '{"r":26,"type":"octahedral","marked":["faces","edges","vertices"],'
        '"free_orbits":0,"group_order":24,"maximal":true}'
    )
    for r in (3, 4, 12, 26):
        for d in enumerate_descriptors(r):
            assert from_json(to_json(d)) == d


def test_realizations_exhaustive_small():
    for r in range(3, 41):
        for d in enumerate_descriptors(r):
            assert realization_matches(d), d


def test_embeddings_small():
    for r in range(3, 16):
        for d in enumerate_descriptors(r):
            assert embedding_certified(d), d


def test_cyclic_chains_small():
    for r in range(3, 200):
        allowed = {r - 1, 2 * r, 2 * (r - 2), 12, 24, 60}
        for d in enumerate_descriptors(r):
            if d.rot.tag != "cyclic":
                continue
            chain = extension_chain(d)
            assert len(chain) <= 4
            assert chain[-1].rot.order in allowed
            first = chain[1] if len(chain) > 1 else chain[0]
            if first.rot.tag == "cyclic":
                assert first.rot.n in (r, r - 1, r - 2)


@settings(max_examples=200, deadline=None)
@given(st.integers(3, 5000), st.data())
def test_point_count_equation(r, data):
    ds = enumerate_descriptors(r)
    d = data.draw(st.sampled_from(ds))
    assert r == d.rot.order * d.k + sum(s.length for s in d.marked_slots)
    if d.rot.order * r <= 200_000:
        assert realization_matches(d)
    assert maximal_extension(d) is None or is_maximal(maximal_extension(d))


@settings(max_examples=100, deadline=None)
@given(st.integers(3, 5000), st.integers(2, 5000))
def test_order_n_property(r, n):
    n = min(n, r)
    assert order_n_element_exists(r, n) == any(n <= r - a and (r - a) % n == 0 for a in (0, 1, 2))


def test_group_name_roundtrip():
    for rot in (TET, OCT, ICO, RotationType.cyclic(3), RotationType.dihedral(2)):
        assert RotationType.from_group_name(rot.group_name) == rot
    assert RotationType.from_group_name(GroupName("Alternating4")) == TET
    with pytest.raises(ValueError):
        RotationType.from_group_name(GroupName("SL2", 3))
