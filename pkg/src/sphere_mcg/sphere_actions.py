"""Finite rotation groups acting on the sphere with r marked points.

An action is recorded combinatorially by an :class:`ActionDescriptor`: the
rotation type, which exceptional orbits (points with nontrivial stabilizer)
are marked, and how many free orbits of marked points there are.  The
point count ``r = |G| * k + sum(marked orbit lengths)`` ties them together.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .errors import InfeasibleDescriptor
from .permgroup import (
    GroupName,
    Permutation,
    PermGroup,
    coset_action,
    generate,
    model_generators,
)

ROTATION_TAGS = ("cyclic", "dihedral", "tetrahedral", "octahedral", "icosahedral")
_POLYHEDRAL_ORDER = {"tetrahedral": 12, "octahedral": 24, "icosahedral": 60}
_POLYHEDRAL_NAME = {"tetrahedral": "Tetrahedral", "octahedral": "Octahedral", "icosahedral": "Icosahedral"}
# (faces, edges, vertices) orbit lengths
_POLYHEDRAL_LENGTHS = {
    "tetrahedral": (4, 6, 4),
    "octahedral": (6, 12, 8),
    "icosahedral": (12, 30, 20),
}
TABLE_ROWS = "abcdefgh"  # row letter == marked-slot bitmask over (faces, edges, vertices)


@dataclass(frozen=True, order=True)
class RotationType:
    tag: str
    n: int | None = None

    def __post_init__(self):
        if self.tag not in ROTATION_TAGS:
            raise ValueError(f"unknown rotation type {self.tag!r}")
        if self.tag in ("cyclic", "dihedral"):
            if self.n is None or self.n < 2:
                raise ValueError(f"{self.tag} rotation group needs n >= 2")
        elif self.n is not None:
            raise ValueError(f"{self.tag} takes no n")

    @classmethod
    def cyclic(cls, n: int) -> "RotationType":
        return cls("cyclic", n)

    @classmethod
    def dihedral(cls, n: int) -> "RotationType":
        return cls("dihedral", n)

    @property
    def order(self) -> int:
        if self.tag == "cyclic":
            return self.n
        if self.tag == "dihedral":
            return 2 * self.n
        return _POLYHEDRAL_ORDER[self.tag]

    @property
    def group_name(self) -> GroupName:
        if self.tag == "cyclic":
            return GroupName.cyclic(self.n)
        if self.tag == "dihedral":
            return GroupName.dihedral(self.n)
        return GroupName(_POLYHEDRAL_NAME[self.tag])

    @property
    def label(self) -> str:
        return self.group_name.label

    @classmethod
    def from_group_name(cls, name: GroupName) -> "RotationType":
        name = name.polyhedral()
        if name.tag == "Cyclic":
            return cls.cyclic(name.n)
        if name.tag == "Dihedral":
            return cls.dihedral(name.n)
        for tag, pname in _POLYHEDRAL_NAME.items():
            if name.tag == pname:
                return cls(tag)
        raise ValueError(f"{name.label} is not a rotation group of the sphere")

    def sort_key(self) -> tuple:
        return (self.order, self.tag)


@dataclass(frozen=True)
class OrbitSlot:
    kind: str
    length: int
    stabilizer_order: int
    marked: bool = False


@lru_cache(maxsize=None)
def exceptional_orbit_profile(rot: RotationType) -> tuple[OrbitSlot, ...]:
    """Exceptional orbits of ``rot`` (all unmarked), in canonical slot order."""
    if rot.tag == "cyclic":
        return (OrbitSlot("pole", 1, rot.n), OrbitSlot("pole", 1, rot.n))
    if rot.tag == "dihedral":
        if rot.n == 2:
            return tuple(OrbitSlot(f"axis{i}", 2, 2) for i in range(3))
        return (
            OrbitSlot("poles", 2, rot.n),
            OrbitSlot("vertices", rot.n, 2),
            OrbitSlot("edges", rot.n, 2),
        )
    order = rot.order
    return tuple(
        OrbitSlot(kind, length, order // length)
        for kind, length in zip(("faces", "edges", "vertices"), _POLYHEDRAL_LENGTHS[rot.tag])
    )


def _canonical_masks(rot: RotationType) -> tuple[int, ...]:
    # the two cyclic poles and the three Klein axes are interchangeable,
    # so only the number of marked ones is recorded
    if rot.tag == "cyclic":
        return (0, 1, 3)
    if rot.tag == "dihedral" and rot.n == 2:
        return (0, 1, 3, 7)
    return tuple(range(8))


def _marked_points(profile: tuple[OrbitSlot, ...], mask: int) -> int:
    return sum(s.length for i, s in enumerate(profile) if mask >> i & 1)


@dataclass(frozen=True)
class ActionDescriptor:
    r: int
    rot: RotationType
    mask: int
    k: int

    def __post_init__(self):
        if self.r < 3:
            raise InfeasibleDescriptor(f"need r >= 3, got {self.r}")
        if self.k < 0:
            raise InfeasibleDescriptor("negative free-orbit count")
        if self.mask not in _canonical_masks(self.rot):
            raise InfeasibleDescriptor(f"non-canonical marking {self.mask:#b} for {self.rot.label}")
        total = self.rot.order * self.k + _marked_points(exceptional_orbit_profile(self.rot), self.mask)
        if total != self.r:
            raise InfeasibleDescriptor(
                f"{self.rot.label} with mask {self.mask:#b} and k={self.k} covers {total} points, not {self.r}"
            )

    @property
    def slots(self) -> tuple[OrbitSlot, ...]:
        return tuple(
            OrbitSlot(s.kind, s.length, s.stabilizer_order, bool(self.mask >> i & 1))
            for i, s in enumerate(exceptional_orbit_profile(self.rot))
        )

    @property
    def marked_slots(self) -> tuple[OrbitSlot, ...]:
        return tuple(s for s in self.slots if s.marked)

    def is_marked(self, kind: str) -> bool:
        return any(s.kind == kind and s.marked for s in self.slots)

    @property
    def n_marked_slots(self) -> int:
        return bin(self.mask).count("1")

    @property
    def table_row(self) -> str | None:
        """Letter of the polyhedral marking case, ``a`` (nothing) to ``h`` (everything)."""
        if self.rot.tag in _POLYHEDRAL_ORDER:
            return TABLE_ROWS[self.mask]
        return None

    def sort_key(self) -> tuple:
        return (self.rot.order, self.rot.tag, self.mask)

    def __str__(self):
        marked = ",".join(s.kind for s in self.marked_slots) or "-"
        return f"{self.rot.label}[{marked}; k={self.k}] @ r={self.r}"


def descriptor(r: int, rot: RotationType, marked: tuple[str, ...] | list[str] = ()) -> ActionDescriptor:
    """Build a descriptor from slot kinds, solving the point count for k."""
    profile = exceptional_orbit_profile(rot)
    mask = 0
    taken = set()
    for kind in marked:
        for i, s in enumerate(profile):
            if s.kind == kind and i not in taken:
                taken.add(i)
                mask |= 1 << i
                break
        else:
            raise InfeasibleDescriptor(f"{rot.label} has no free slot {kind!r}")
    k, rem = divmod(r - _marked_points(profile, mask), rot.order)
    if rem or k < 0:
        raise InfeasibleDescriptor(f"{rot.label} marked {list(marked)} does not fit r={r}")
    return ActionDescriptor(r, rot, mask, k)


def _solutions(r: int, rot: RotationType) -> Iterator[tuple[int, int]]:
    profile = exceptional_orbit_profile(rot)
    order = rot.order
    for mask in _canonical_masks(rot):
        rest = r - _marked_points(profile, mask)
        if rest >= 0 and rest % order == 0:
            yield mask, rest // order


def _divisors(m: int) -> set[int]:
    out = set()
    d = 1
    while d * d <= m:
        if m % d == 0:
            out.add(d)
            out.add(m // d)
        d += 1
    return out


def candidate_rotation_types(r: int) -> list[RotationType]:
    """Every rotation type that could satisfy the point count at ``r``.

    A cyclic group of order n fixes 0, 1 or 2 marked poles and has the rest in
    free orbits, so n divides r, r-1 or r-2; a dihedral D_n has every non-pole
    orbit of length n or 2n, so n divides r or r-2.
    """
    cyc = set()
    dih = set()
    for a in (0, 1, 2):
        if r - a > 0:
            cyc |= _divisors(r - a)
    for a in (0, 2):
        if r - a > 0:
            dih |= _divisors(r - a)
    types = [RotationType.cyclic(n) for n in sorted(cyc) if 2 <= n <= r]
    types += [RotationType.dihedral(n) for n in sorted(dih) if 2 <= n <= r]
    types += [RotationType(t) for t in _POLYHEDRAL_ORDER]
    return types


def enumerate_descriptors(r: int, rot: RotationType | None = None) -> list[ActionDescriptor]:
    """All feasible descriptors at ``r`` (for one rotation type, or all), canonically sorted."""
    if r < 3:
        raise ValueError(f"need r >= 3, got {r}")
    types = [rot] if rot is not None else candidate_rotation_types(r)
    out = [ActionDescriptor(r, t, mask, k) for t in types for mask, k in _solutions(r, t)]
    out.sort(key=ActionDescriptor.sort_key)
    return out


def enumerate_descriptors_bruteforce(r: int) -> list[ActionDescriptor]:
    """Same as :func:`enumerate_descriptors` without divisor pruning (for cross-checks)."""
    types = [RotationType.cyclic(n) for n in range(2, r + 1)]
    types += [RotationType.dihedral(n) for n in range(2, r + 1)]
    types += [RotationType(t) for t in _POLYHEDRAL_ORDER]
    out = [ActionDescriptor(r, t, mask, k) for t in types for mask, k in _solutions(r, t)]
    out.sort(key=ActionDescriptor.sort_key)
    return out


# ---------------------------------------------------------------------------
# Realization


@lru_cache(maxsize=None)
def _polyhedral_blocks(tag: str) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Generator images for the face/edge/vertex coset actions and the regular action."""
    name = RotationType(tag).group_name
    gens = model_generators(name)
    g = generate(gens)
    deg = gens[0].degree
    # stabilizers of a face centre, edge midpoint and vertex in the standard model
    if tag == "tetrahedral":
        stabs = [Permutation.from_cycles(deg, (0, 1, 2)),
                 Permutation.from_cycles(deg, (0, 1), (2, 3)),
                 Permutation.from_cycles(deg, (1, 2, 3))]
    elif tag == "octahedral":
        # edge half-turns of the cube are the transpositions of S4
        stabs = [Permutation.from_cycles(deg, (0, 1, 2, 3)),
                 Permutation.from_cycles(deg, (0, 1)),
                 Permutation.from_cycles(deg, (0, 1, 2))]
    else:
        stabs = [Permutation.from_cycles(deg, (0, 1, 2, 3, 4)),
                 Permutation.from_cycles(deg, (0, 1), (2, 3)),
                 Permutation.from_cycles(deg, (0, 1, 2))]
    blocks = []
    for h in stabs + [None]:
        sub = generate([h]) if h is not None else generate([], degree=deg)
        action = coset_action(g, sub)
        blocks.append(tuple(p.images for p in action.generators))
    return tuple(blocks)


def _cyclic_blocks(n: int, mask: int) -> list[tuple[tuple[int, ...], ...]]:
    blocks = [((0,),)] * bin(mask).count("1")
    blocks.append((tuple((i + 1) % n for i in range(n)),))
    return blocks


def _dihedral_blocks(n: int, mask: int) -> list[tuple[tuple[int, ...], ...]]:
    if n == 2:
        # generators a, b; axis i is fixed pointwise by the i-th involution a, b, ab
        axes = [((0, 1), (1, 0)), ((1, 0), (0, 1)), ((1, 0), (1, 0))]
        blocks = [axes[i] for i in range(3) if mask >> i & 1]
        blocks.append(((1, 0, 3, 2), (2, 3, 0, 1)))
        return blocks
    rot = tuple((i + 1) % n for i in range(n))
    blocks = []
    if mask & 1:
        blocks.append(((0, 1), (1, 0)))
    if mask & 2:  # vertices: even corners of the 2n-gon, flip i -> -i
        blocks.append((rot, tuple((-i) % n for i in range(n))))
    if mask & 4:  # edges: odd corners 2i+1 -> -(2i+1)
        blocks.append((rot, tuple(n - 1 - i for i in range(n))))
    # regular action on rho^a tau^b, indexed a + n*b, acted on from the right
    right_rho = tuple((a + 1) % n for a in range(n)) + tuple(n + (a - 1) % n for a in range(n))
    right_tau = tuple(n + a for a in range(n)) + tuple(range(n))
    blocks.append((right_rho, right_tau))
    return blocks


def realize(d: ActionDescriptor) -> tuple[PermGroup, list[tuple[str, int]]]:
    """Permutation action of ``d.rot`` on the r marked points.

    Marked exceptional orbits come first in slot order, then the ``k`` free
    orbits (each a copy of the regular action).  ``labeling[p]`` is
    ``(slot kind or 'free<j>', index within that orbit)``.
    """
    rot = d.rot
    marked = d.marked_slots
    if rot.tag == "cyclic":
        blocks = _cyclic_blocks(rot.n, d.mask)
    elif rot.tag == "dihedral":
        blocks = _dihedral_blocks(rot.n, d.mask)
    else:
        poly = _polyhedral_blocks(rot.tag)
        blocks = [poly[i] for i in range(3) if d.mask >> i & 1] + [poly[3]]
    exceptional, regular = blocks[:-1], blocks[-1]
    labels = [s.kind for s in marked] + [f"free{j}" for j in range(d.k)]
    parts = list(exceptional) + [regular] * d.k
    ngens = len(regular)
    images: list[list[int]] = [[] for _ in range(ngens)]
    labeling: list[tuple[str, int]] = []
    offset = 0
    for label, block in zip(labels, parts):
        size = len(block[0])
        for gi in range(ngens):
            images[gi].extend(offset + j for j in block[gi])
        labeling.extend((label, i) for i in range(size))
        offset += size
    if offset != d.r:
        raise InfeasibleDescriptor(f"realization of {d} has {offset} points")
    group = generate([Permutation(im) for im in images], order_cap=rot.order)
    return group, labeling


# ---------------------------------------------------------------------------
# Maximality


def is_maximal(d: ActionDescriptor) -> bool:
    rot, r = d.rot, d.r
    if rot.tag == "cyclic":
        return d.k == 1 and d.mask == 1 and r not in (3, 4)
    if rot.tag == "dihedral":
        if rot.n == 2 or d.k:
            return False
        poles = d.is_marked("poles")
        one_side = d.is_marked("vertices") != d.is_marked("edges")
        if not one_side:
            return False
        if not poles:
            return rot.n == r
        return rot.n == r - 2 and (r == 5 or r >= 7)
    if rot.tag == "tetrahedral":
        return d.is_marked("vertices") != d.is_marked("faces")
    return True


def _first_maximal(r: int, rot: RotationType) -> ActionDescriptor:
    found = [d for d in enumerate_descriptors(r, rot) if is_maximal(d)]
    assert found, (r, rot)
    return found[0]


def extension_step(d: ActionDescriptor) -> ActionDescriptor | None:
    """One step up the containment chain; None when ``d`` is maximal."""
    if is_maximal(d):
        return None
    rot, r = d.rot, d.r
    if rot.tag == "cyclic":
        poles = d.n_marked_slots
        if d.k > 1:
            # free points as one regular polygon: Z_n sits in Z_{nk}
            return ActionDescriptor(r, RotationType.cyclic(rot.n * d.k), d.mask, 1)
        if poles == 0:
            return descriptor(r, RotationType.dihedral(r), ["vertices"])
        if poles == 1:
            if r == 4:
                return _first_maximal(4, RotationType("tetrahedral"))
            return descriptor(r, RotationType.dihedral(r), ["vertices"])  # r == 3
        s = r - 2
        if s == 2:
            return descriptor(r, RotationType.dihedral(2), ["axis0", "axis1"])
        return descriptor(r, RotationType.dihedral(s), ["poles", "vertices"])
    if rot.tag == "dihedral":
        if rot.n == 2:
            if d.n_marked_slots < 3:
                return descriptor(r, RotationType.dihedral(r), ["vertices"])
            return descriptor(r, RotationType.dihedral(r - 2), ["poles", "vertices"])
        if not d.is_marked("poles"):
            return descriptor(r, RotationType.dihedral(r), ["vertices"])
        s = r - 2
        if s == rot.n and d.k == 0 and d.n_marked_slots == 2:
            return descriptor(r, RotationType("octahedral"), ["faces"])  # r == 6
        return descriptor(r, RotationType.dihedral(s), ["poles", "vertices"])
    if rot.tag == "tetrahedral":
        # tetrahedron inside the cube: vertices and face centres become cube
        # vertices, edge midpoints become face centres, each free A4-orbit
        # of 12 is half an S4-orbit, and cube edge midpoints are A4-free
        marked = []
        if d.is_marked("edges"):
            marked.append("faces")
        if d.k % 2:
            marked.append("edges")
        if d.is_marked("vertices"):
            marked.append("vertices")
        ext = descriptor(r, RotationType("octahedral"), marked)
        assert ext.k == d.k // 2
        return ext
    raise AssertionError(f"{d} should be maximal")


def extension_chain(d: ActionDescriptor) -> list[ActionDescriptor]:
    """``d`` followed by every step up to a maximal descriptor."""
    chain = [d]
    while (nxt := extension_step(chain[-1])) is not None:
        chain.append(nxt)
        if len(chain) > 8:
            raise AssertionError(f"extension chain from {d} does not terminate")
    return chain


def maximal_extension(d: ActionDescriptor) -> ActionDescriptor | None:
    if is_maximal(d):
        return None
    return extension_chain(d)[-1]


# ---------------------------------------------------------------------------
# Classification of maximal types


def _in(r: int, modulus: int, residues: tuple[int, ...]) -> bool:
    return r % modulus in residues


def maximal_types_congruence(r: int) -> set[GroupName]:
    out = {GroupName.dihedral(r)}
    if r != 4:
        out.add(GroupName.cyclic(r - 1))
    if r == 5 or r >= 7:
        out.add(GroupName.dihedral(r - 2))
    if _in(r, 12, (4, 10)):
        out.add(GroupName("Tetrahedral"))
    if _in(r, 24, (0, 2, 6, 8, 12, 14, 18, 20)):
        out.add(GroupName("Octahedral"))
    if _in(r, 60, (0, 2, 12, 20, 30, 32, 42, 50)):
        out.add(GroupName("Icosahedral"))
    return out


def maximal_types_derived(r: int) -> set[GroupName]:
    return {d.rot.group_name for d in enumerate_descriptors(r) if is_maximal(d)}


def maximal_types(r: int, mode: str = "derived") -> set[GroupName]:
    if r < 3:
        raise ValueError(f"need r >= 3, got {r}")
    if mode == "derived":
        return maximal_types_derived(r)
    if mode == "congruence":
        return maximal_types_congruence(r)
    raise ValueError(f"unknown mode {mode!r}")


def sorted_names(names) -> list[GroupName]:
    return sorted(names, key=lambda g: (g.order, RotationType.from_group_name(g).tag))


def order_n_element_exists(r: int, n: int) -> bool:
    """Whether some cyclic action of order ``n`` fits ``r`` marked points."""
    if r < 3 or n < 2:
        raise ValueError("need r >= 3 and n >= 2")
    # a marked poles, the remaining points split into free orbits of length n
    for a in (0, 1, 2):
        rest = r - a
        if rest >= n and rest % n == 0:
            return True
    return False


# ---------------------------------------------------------------------------
# JSON


def to_json(d: ActionDescriptor) -> dict:
    return {
        "r": d.r,
        "type": d.rot.tag,
        "marked": [s.kind for s in d.marked_slots],
        "free_orbits": d.k,
        "group_order": d.rot.order,
        "maximal": is_maximal(d),
    }


def from_json(obj: dict) -> ActionDescriptor:
    tag = obj["type"]
    order = obj["group_order"]
    if tag == "cyclic":
        rot = RotationType.cyclic(order)
    elif tag == "dihedral":
        rot = RotationType.dihedral(order // 2)
    else:
        rot = RotationType(tag)
    d = descriptor(obj["r"], rot, obj["marked"])
    if d.k != obj["free_orbits"] or rot.order != order:
        raise InfeasibleDescriptor(f"inconsistent descriptor object {obj}")
    return d
