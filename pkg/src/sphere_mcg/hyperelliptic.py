"""Maximal finite subgroups of the hyperelliptic mapping class group in genus g.

Each one is the full preimage of a maximal finite subgroup of the sphere
group with r = 2g + 2 marked points, so it has twice the order and a central
involution whose quotient is the base.  :func:`verify_lift` checks exactly
that, by coset enumeration and an isomorphism search.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NotAdmissible, VerificationFailed
from .fpgroup import Presentation, parse_presentation, todd_coxeter, table_to_permgroup
from .permgroup import (
    GroupName,
    Permutation,
    are_isomorphic,
    center,
    construct,
    quotient_by_central,
)

LIFT_NAMES = ("Z4g2", "V2g2", "U2g", "Z2xA4", "SL23", "Z2xS4", "W1", "W2", "W3", "Z2xA5", "SL25")

# residues of g for the polyhedral families; None means "always"
_ADMISSIBLE = {
    "Z2xA4": (6, (1,)),
    "SL23": (6, (4,)),
    "Z2xS4": (12, (3, 11)),
    "W1": (12, (2, 6)),
    "W2": (12, (5, 9)),
    "W3": (12, (0, 8)),
    "Z2xA5": (30, (5, 9, 15, 29)),
    "SL25": (30, (0, 14, 20, 24)),
}

# the direct products come with a central generator z of order 2
_PRESENTATIONS = {
    "Z4g2": "<x | x^{m}>",
    "V2g2": "<x,y | x^4, y^{n}, (x*y)^2, (x^-1*y)^2>",
    "U2g": "<x,y | x^2, y^{m}, x*y*x*y^{e}>",
    "Z2xA4": "<x,y,z | x^2, y^3, (x*y)^3, z^2, z^-1*x^-1*z*x, z^-1*y^-1*z*y>",
    "SL23": "<x,y | x^4, y^3, (x*y)^3, y*x^2*y^-1*x^2>",
    "Z2xS4": "<x,y,z | x^2, y^3, (x*y)^4, z^2, z^-1*x^-1*z*x, z^-1*y^-1*z*y>",
    "W1": "<x,y | x^2, y^3, (x*y)^4*(y*x)^4, (x*y)^8>",
    "W2": "<x,y | x^4, y^3, y*x^2*y^-1*x^2, (x*y)^4>",
    "W3": "<x,y | x^4, y^3, (x*y)^8, x^2*(x*y)^4>",
    "Z2xA5": "<x,y,z | x^2, y^3, (x*y)^5, z^2, z^-1*x^-1*z*x, z^-1*y^-1*z*y>",
    "SL25": "<x,y | x^4, y^3, (x*y)^5, y*x^2*y^-1*x^2>",
}


def is_admissible(name: str, g: int) -> bool:
    if name not in LIFT_NAMES:
        raise NotAdmissible(f"unknown lift {name!r}")
    if g < 2:
        return False
    if name in ("Z4g2", "V2g2"):
        return True
    if name == "U2g":
        return g >= 3
    modulus, residues = _ADMISSIBLE[name]
    return g % modulus in residues


def base_of(name: str, g: int) -> GroupName:
    """The quotient type in the sphere group with 2g+2 marked points."""
    r = 2 * g + 2
    if name == "Z4g2":
        return GroupName.cyclic(r - 1)
    if name == "V2g2":
        return GroupName.dihedral(r)
    if name == "U2g":
        return GroupName.dihedral(r - 2)
    if name in ("Z2xA4", "SL23"):
        return GroupName("Tetrahedral")
    if name in ("Z2xA5", "SL25"):
        return GroupName("Icosahedral")
    return GroupName("Octahedral")


def presentation_of(name: str, g: int) -> Presentation:
    if not is_admissible(name, g):
        raise NotAdmissible(f"{name} is not a maximal lift at g={g}")
    text = _PRESENTATIONS[name].format(m=4 * g + 2 if name == "Z4g2" else 4 * g, n=2 * g + 2, e=2 * g + 1)
    return parse_presentation(text)


@dataclass
class LiftVerification:
    enumerated_order: int
    center_order: int
    central_involution: tuple[int, ...]  # image list on the enumerated cosets
    quotient_order: int
    quotient_isomorphic: bool
    notes: list[str] = field(default_factory=list)


@dataclass
class LiftRecord:
    name: str
    g: int
    base: GroupName
    expected_order: int
    presentation: Presentation
    verification: LiftVerification | None = None

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "base": self.base.label,
            "order": self.expected_order,
            "presentation": str(self.presentation),
            "verified": self.verification is not None,
        }


def lift_record(name: str, g: int) -> LiftRecord:
    base = base_of(name, g)
    return LiftRecord(name, g, base, 2 * base.order, presentation_of(name, g))


def lift_catalog(g: int) -> list[LiftRecord]:
    if g < 2:
        raise ValueError(f"need g >= 2, got {g}")
    return [lift_record(name, g) for name in LIFT_NAMES if is_admissible(name, g)]


def smallest_admissible_genus(name: str) -> int:
    g = 2
    while not is_admissible(name, g):
        g += 1
    return g


def enumerated_order(name: str, g: int, max_cosets: int | None = None) -> int:
    order, _ = todd_coxeter(presentation_of(name, g), max_cosets)
    return order


def verify_lift(name: str, g: int, max_cosets: int | None = None) -> LiftRecord:
    """Enumerate the lift and check it is a central Z2-extension of its base.

    Every central involution is tried (in element order); the center is
    expected to be Z2 except for the cyclic family, and a larger center is
    recorded in the notes rather than failing.
    """
    rec = lift_record(name, g)
    order, table = todd_coxeter(rec.presentation, max_cosets)
    if order != rec.expected_order:
        raise VerificationFailed(f"{name} at g={g}: enumerated order {order}, expected {rec.expected_order}")
    group = table_to_permgroup(table)
    if group.order != order:
        raise VerificationFailed(f"{name} at g={g}: permutation model has order {group.order}")
    z_group = center(group)
    involutions = [z for z in z_group.elements if z.order() == 2]
    if not involutions:
        raise VerificationFailed(f"{name} at g={g}: no central involution")
    notes = []
    if name != "Z4g2" and z_group.order != 2:
        notes.append(f"center has order {z_group.order}")
    base_group = construct(rec.base)
    chosen: Permutation | None = None
    quotient_order = 0
    for z in involutions:
        quotient = quotient_by_central(group, z)
        quotient_order = quotient.order
        if are_isomorphic(quotient, base_group):
            chosen = z
            break
    if len(involutions) > 1:
        notes.append(f"{len(involutions)} central involutions")
    if chosen is None:
        raise VerificationFailed(f"{name} at g={g}: no central quotient is isomorphic to {rec.base.label}")
    rec.verification = LiftVerification(
        enumerated_order=order,
        center_order=z_group.order,
        central_involution=chosen.images,
        quotient_order=quotient_order,
        quotient_isomorphic=True,
        notes=notes,
    )
    return rec


def count_maximal_classes(g: int, mode: str = "catalog") -> int:
    if g < 2:
        raise ValueError(f"need g >= 2, got {g}")
    if mode == "catalog":
        return len(lift_catalog(g))
    if mode == "closed_form":
        if g % 30 in (0, 5, 9, 14, 15, 20, 24, 29):
            return 5
        return 3 if g == 2 else 4
    raise ValueError(f"unknown mode {mode!r}")


def catalog_json(g: int, verify: bool = False) -> dict:
    records = [verify_lift(rec.name, g) if verify else rec for rec in lift_catalog(g)]
    out = {"g": g, "lifts": [rec.to_json() for rec in records]}
    if verify:
        for obj, rec in zip(out["lifts"], records):
            v = rec.verification
            obj["evidence"] = {
                "enumerated_order": v.enumerated_order,
                "center_order": v.center_order,
                "quotient_order": v.quotient_order,
                "quotient_isomorphic": v.quotient_isomorphic,
                "notes": v.notes,
            }
    return out
