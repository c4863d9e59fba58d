"""Conjugacy classes of finite subgroups of the sphere mapping class group."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import MismatchedR
from .permgroup import GroupName
from .sphere_actions import (
    ActionDescriptor,
    RotationType,
    enumerate_descriptors,
    is_maximal,
    to_json,
)


@dataclass(frozen=True, order=True)
class ConjugacyInvariant:
    iso_label: GroupName
    marked_profile: tuple[tuple[int, int], ...]
    free_count: int

    def __str__(self):
        prof = " ".join(f"{n}/{s}" for n, s in self.marked_profile) or "-"
        return f"{self.iso_label.label} [{prof}] k={self.free_count}"


def conjugacy_invariant(d: ActionDescriptor) -> ConjugacyInvariant:
    # comparing (length, stabilizer) pairs instead of slot kinds identifies
    # dual tetrahedral vertices/faces, dihedral vertices/edges and the
    # three Klein axes, and nothing else
    profile = tuple(sorted((s.length, s.stabilizer_order) for s in d.marked_slots))
    return ConjugacyInvariant(d.rot.group_name, profile, d.k)


def are_conjugate(d1: ActionDescriptor, d2: ActionDescriptor) -> bool:
    if d1.r != d2.r:
        raise MismatchedR(f"descriptors live on r={d1.r} and r={d2.r}")
    return conjugacy_invariant(d1) == conjugacy_invariant(d2)


def _rotation(iso: GroupName) -> RotationType:
    return RotationType.from_group_name(iso)


def count_classes(r: int, iso: GroupName, mode: str = "enumerative") -> int:
    if r < 3:
        raise ValueError(f"need r >= 3, got {r}")
    rot = _rotation(iso)
    if mode == "enumerative":
        return len({conjugacy_invariant(d) for d in enumerate_descriptors(r, rot)})
    if mode == "closed_form":
        return closed_form_count(r, iso)
    raise ValueError(f"unknown mode {mode!r}")


def closed_form_count(r: int, iso: GroupName) -> int:
    iso = iso.polyhedral()
    if iso.tag == "Cyclic" and iso.n == 2 and r % 2 == 0:
        return 2
    if iso.tag == "Dihedral" and (r % (2 * iso.n) == 0 or (r - 2) % (2 * iso.n) == 0):
        return 2
    return 1 if enumerate_descriptors(r, _rotation(iso)) else 0


def class_counts(r: int) -> Counter:
    """Number of conjugacy classes per isomorphism type at ``r`` (enumerative)."""
    seen = {conjugacy_invariant(d) for d in enumerate_descriptors(r)}
    return Counter(inv.iso_label for inv in seen)


@dataclass(frozen=True)
class ClassRow:
    invariant: ConjugacyInvariant
    representative: ActionDescriptor
    maximal: bool


def class_table(r: int) -> list[ClassRow]:
    """One row per conjugacy class at ``r``; the representative is the first descriptor in canonical order."""
    rows: dict[ConjugacyInvariant, ClassRow] = {}
    for d in enumerate_descriptors(r):
        inv = conjugacy_invariant(d)
        if inv not in rows:
            rows[inv] = ClassRow(inv, d, is_maximal(d))
    return list(rows.values())


def class_table_json(r: int, iso: GroupName | None = None) -> list[dict]:
    """Every descriptor at ``r`` with its class id and the index of its class representative."""
    descs = enumerate_descriptors(r, _rotation(iso) if iso is not None else None)
    out = []
    class_ids: dict[ConjugacyInvariant, tuple[int, int]] = {}
    for i, d in enumerate(descs):
        inv = conjugacy_invariant(d)
        if inv not in class_ids:
            class_ids[inv] = (len(class_ids), i)
        cid, rep = class_ids[inv]
        obj = to_json(d)
        obj["class_id"] = cid
        obj["conjugate_to"] = rep
        out.append(obj)
    return out
