"""Small finite permutation groups.

Groups are stored with their complete element list, which is fine for
everything this package touches (orders up to a few hundred).  Products
compose left to right: ``(p * q)(i) == q(p(i))``, so a word ``x1 x2 ... xk``
evaluates to ``X1 * X2 * ... * Xk`` and a coset table's generator columns
are a homomorphic image of the presented group.
"""
from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import CapExceeded, InvalidName, NotASubgroup, NotCentralInvolution

DEFAULT_ORDER_CAP = 10_000
DEFAULT_ISOMORPHISM_CAP = 1000

Perm = tuple  # raw image tuple, used by the hot loops


def _mul(a: Perm, b: Perm) -> Perm:
    return tuple([b[i] for i in a])


def _inv(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j] = i
    return tuple(out)


def _order(a: Perm) -> int:
    seen = [False] * len(a)
    result = 1
    for start in range(len(a)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = a[i]
            length += 1
        result = result * length // math.gcd(result, length)
    return result


def _cycle_type(a: Perm) -> tuple[int, ...]:
    seen = [False] * len(a)
    lengths = []
    for start in range(len(a)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = a[i]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths))


class Permutation:
    """A bijection of ``{0, ..., degree-1}`` given by its image list."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images!r}")
        self.images = images

    @classmethod
    def _raw(cls, images: Perm) -> "Permutation":
        p = object.__new__(cls)
        p.images = images
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._raw(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> "Permutation":
        images = list(range(degree))
        for cycle in cycles:
            for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
                images[a] = b
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation._raw(_mul(self.images, other.images))

    def __pow__(self, n: int) -> "Permutation":
        base = self if n >= 0 else self.inverse()
        result = Permutation.identity(self.degree)
        for _ in range(abs(n)):
            result = result * base
        return result

    def inverse(self) -> "Permutation":
        return Permutation._raw(_inv(self.images))

    def order(self) -> int:
        return _order(self.images)

    def cycle_type(self) -> tuple[int, ...]:
        return _cycle_type(self.images)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cycle = [start]
            seen.add(start)
            i = self.images[start]
            while i != start:
                cycle.append(i)
                seen.add(i)
                i = self.images[i]
            out.append(tuple(cycle))
        return out

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        cyc = "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles())
        return f"Permutation({cyc or '()'}, degree={self.degree})"


@dataclass(frozen=True)
class PermGroup:
    degree: int
    generators: tuple[Permutation, ...]
    elements: tuple[Permutation, ...] = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def __contains__(self, p: Permutation) -> bool:
        return p.images in self._image_set

    @property
    def _image_set(self) -> frozenset:
        cached = self.__dict__.get("_images_cache")
        if cached is None:
            cached = frozenset(e.images for e in self.elements)
            object.__setattr__(self, "_images_cache", cached)
        return cached

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for a in gens for b in gens)


def generate(
    generators: Sequence[Permutation],
    order_cap: int = DEFAULT_ORDER_CAP,
    degree: int | None = None,
) -> PermGroup:
    """Close ``generators`` under multiplication.

    ``degree`` is only needed for the trivial group given as ``[]``.
    """
    generators = tuple(generators)
    if not generators:
        if degree is None:
            raise ValueError("degree required for the trivial group")
    else:
        degrees = {g.degree for g in generators}
        if len(degrees) != 1:
            raise ValueError(f"generators of mixed degree {sorted(degrees)}")
        (found,) = degrees
        if degree is not None and degree != found:
            raise ValueError(f"degree {degree} does not match generators ({found})")
        degree = found
    gens = [g.images for g in generators]
    identity = tuple(range(degree))
    seen = {identity}
    queue = deque([identity])
    while queue:
        e = queue.popleft()
        for g in gens:
            p = _mul(e, g)
            if p not in seen:
                seen.add(p)
                if len(seen) > order_cap:
                    raise CapExceeded(f"closure exceeded order cap {order_cap}")
                queue.append(p)
    elements = tuple(Permutation._raw(p) for p in sorted(seen))
    return PermGroup(degree, generators, elements)


def orbits(degree: int, generators: Sequence[Permutation]) -> list[list[int]]:
    seen = [False] * degree
    out = []
    for start in range(degree):
        if seen[start]:
            continue
        seen[start] = True
        orbit = [start]
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for g in generators:
                j = g.images[i]
                if not seen[j]:
                    seen[j] = True
                    orbit.append(j)
                    queue.append(j)
        out.append(sorted(orbit))
    return out


def orbits_and_stabilizers(g: PermGroup) -> list[tuple[frozenset[int], int]]:
    """Orbits ordered by least point, each with the order of a point stabilizer.

    The stabilizer is counted directly from the element list, so the
    orbit-stabilizer identity is something callers can check, not assume.
    """
    out = []
    for orbit in orbits(g.degree, g.generators):
        base = orbit[0]
        stab = sum(1 for e in g.elements if e.images[base] == base)
        out.append((frozenset(orbit), stab))
    return out


def is_subgroup(h: PermGroup, g: PermGroup) -> bool:
    return h.degree == g.degree and all(e in g for e in h.elements)


def coset_action(g: PermGroup, h: PermGroup) -> PermGroup:
    """Action of ``g`` on the right cosets ``h*x`` of ``h``.

    Cosets are numbered in breadth-first order from ``h`` itself, and the
    returned generators line up with ``g.generators``.
    """
    if not is_subgroup(h, g):
        raise NotASubgroup("h is not contained in g")
    h_elems = [e.images for e in h.elements]

    def key(x: Perm) -> Perm:
        return min(_mul(a, x) for a in h_elems)

    identity = tuple(range(g.degree))
    index = {key(identity): 0}
    reps = [identity]
    images: list[list[int]] = [[] for _ in g.generators]
    i = 0
    while i < len(reps):
        x = reps[i]
        for gi, gen in enumerate(g.generators):
            y = _mul(x, gen.images)
            k = key(y)
            if k not in index:
                index[k] = len(reps)
                reps.append(y)
            images[gi].append(index[k])
        i += 1
    degree = len(reps)
    assert degree * h.order == g.order
    if not g.generators:
        return generate([], degree=degree)
    return generate([Permutation._raw(tuple(im)) for im in images])


def center(g: PermGroup) -> PermGroup:
    gens = [x.images for x in g.generators]
    central = [
        e for e in g.elements
        if all(_mul(e.images, x) == _mul(x, e.images) for x in gens)
    ]
    return PermGroup(g.degree, tuple(c for c in central if not c.is_identity()), tuple(central))


def quotient_by_central(g: PermGroup, z: Permutation) -> PermGroup:
    """Faithful model of ``g / <z>``: the action on cosets of ``<z>``."""
    if z not in g or z.is_identity() or not (z * z).is_identity():
        raise NotCentralInvolution("z is not an involution of g")
    if any(z * x != x * z for x in g.generators):
        raise NotCentralInvolution("z is not central in g")
    return coset_action(g, generate([z]))


def derived_subgroup(g: PermGroup) -> PermGroup:
    """Normal closure of the commutators of the generators."""
    gens = [x.images for x in g.generators]
    comms = set()
    for a in gens:
        for b in gens:
            c = _mul(_mul(_inv(a), _inv(b)), _mul(a, b))
            comms.add(c)
    identity = tuple(range(g.degree))
    comms.discard(identity)
    if not comms:
        return generate([], degree=g.degree)
    sub = generate([Permutation._raw(c) for c in sorted(comms)])
    while True:
        members = sub._image_set
        extra = set()
        for c in (x.images for x in sub.generators):
            for a in gens:
                conj = _mul(_mul(_inv(a), c), a)
                if conj not in members:
                    extra.add(conj)
        if not extra:
            return sub
        sub = generate(list(sub.generators) + [Permutation._raw(c) for c in sorted(extra)])


def fingerprint(g: PermGroup) -> tuple:
    orders = Counter(e.order() for e in g.elements)
    return (
        g.order,
        tuple(sorted(orders.items())),
        center(g).order,
        derived_subgroup(g).order,
    )


def greedy_generators(g: PermGroup) -> list[Permutation]:
    """A generating sequence picked highest element order first."""
    ranked = sorted(g.elements, key=lambda e: (-e.order(), e.images))
    chosen: list[Permutation] = []
    members = {g.identity.images}
    for e in ranked:
        if len(members) == g.order:
            break
        if e.images in members:
            continue
        chosen.append(e)
        members = generate(chosen)._image_set
    return chosen


def _extend_homomorphism(
    g_gens: list[Perm], h_gens: list[Perm], degree: int
) -> dict[Perm, Perm] | None:
    """Walk the Cayley graph of ``<g_gens>`` sending ``g_gens[i] -> h_gens[i]``.

    Returns the element map when it is well defined, else None.
    """
    identity = tuple(range(degree))
    h_identity = tuple(range(len(h_gens[0])))
    phi = {identity: h_identity}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        fx = phi[x]
        for a, b in zip(g_gens, h_gens):
            y = _mul(x, a)
            fy = _mul(fx, b)
            known = phi.get(y)
            if known is None:
                phi[y] = fy
                queue.append(y)
            elif known != fy:
                return None
    return phi


def find_isomorphism(
    g: PermGroup,
    h: PermGroup,
    cap: int = DEFAULT_ISOMORPHISM_CAP,
    prefilter: bool = True,
) -> dict[Permutation, Permutation] | None:
    """Images of a generating sequence of ``g`` defining an isomorphism onto ``h``.

    With ``prefilter=False`` the fingerprint comparison is skipped and the
    answer rests on the backtracking search alone.
    """
    if max(g.order, h.order) > cap:
        raise CapExceeded(f"isomorphism search limited to order {cap}")
    if g.order != h.order:
        return None
    if g.order == 1:
        return {}
    if prefilter and fingerprint(g) != fingerprint(h):
        return None
    gens = greedy_generators(g)
    g_raw = [x.images for x in gens]
    by_order: dict[int, list[Perm]] = {}
    for e in h.elements:
        by_order.setdefault(e.order(), []).append(e.images)
    candidates = [by_order.get(x.order(), []) for x in gens]
    pair_orders = {
        (i, j): _order(_mul(g_raw[i], g_raw[j]))
        for i in range(len(gens)) for j in range(i)
    }
    chosen: list[Perm] = []

    def search(depth: int) -> dict[Perm, Perm] | None:
        if depth == len(gens):
            phi = _extend_homomorphism(g_raw, chosen, g.degree)
            if phi is not None and len(set(phi.values())) == g.order:
                return phi
            return None
        for c in candidates[depth]:
            if any(_order(_mul(chosen[j], c)) != pair_orders[depth, j] for j in range(depth)):
                continue
            chosen.append(c)
            found = search(depth + 1)
            chosen.pop()
            if found is not None:
                return found
        return None

    phi = search(0)
    if phi is None:
        return None
    return {x: Permutation._raw(phi[x.images]) for x in gens}


def are_isomorphic(
    g: PermGroup, h: PermGroup, cap: int = DEFAULT_ISOMORPHISM_CAP, prefilter: bool = True
) -> bool:
    return find_isomorphism(g, h, cap, prefilter) is not None


def find_relabeling(small: PermGroup, big: PermGroup) -> list[int] | None:
    """Search for a point bijection ``s`` with ``s^-1 * x * s`` in ``big`` for all x in ``small``.

    Returned as the image list of ``s``.  Backtracks over generator images
    of matching cycle type, then over base-point images orbit by orbit.
    """
    if small.degree != big.degree:
        return None
    n = small.degree
    gens = [x.images for x in greedy_generators(small)] if small.order > 1 else []
    if not gens:
        return list(range(n))
    by_type: dict[tuple, list[Perm]] = {}
    for e in big.elements:
        by_type.setdefault(_cycle_type(e.images), []).append(e.images)
    candidates = [by_type.get(_cycle_type(x), []) for x in gens]
    pair_types = {
        (i, j): _cycle_type(_mul(gens[i], gens[j]))
        for i in range(len(gens)) for j in range(i)
    }
    small_orbits = sorted(orbits(n, [Permutation._raw(x) for x in gens]), key=len, reverse=True)
    chosen: list[Perm] = []

    def place(orbit_idx: int, sigma: list[int], used: list[bool]) -> list[int] | None:
        if orbit_idx == len(small_orbits):
            return list(sigma)
        base = small_orbits[orbit_idx][0]
        for q in range(n):
            if used[q]:
                continue
            assigned = []
            ok = True
            sigma[base] = q
            used[q] = True
            assigned.append(base)
            queue = deque([base])
            while queue and ok:
                x = queue.popleft()
                for a, b in zip(gens, chosen):
                    y = a[x]
                    target = b[sigma[x]]
                    if sigma[y] == -1:
                        if used[target]:
                            ok = False
                            break
                        sigma[y] = target
                        used[target] = True
                        assigned.append(y)
                        queue.append(y)
                    elif sigma[y] != target:
                        ok = False
                        break
            if ok:
                found = place(orbit_idx + 1, sigma, used)
                if found is not None:
                    return found
            for x in assigned:
                used[sigma[x]] = False
                sigma[x] = -1
        return None

    def search(depth: int) -> list[int] | None:
        if depth == len(gens):
            return place(0, [-1] * n, [False] * n)
        for c in candidates[depth]:
            if any(_cycle_type(_mul(chosen[j], c)) != pair_types[depth, j] for j in range(depth)):
                continue
            chosen.append(c)
            found = search(depth + 1)
            chosen.pop()
            if found is not None:
                return found
        return None

    return search(0)


# ---------------------------------------------------------------------------
# Named groups

_POLYHEDRAL_ALIASES = {
    "Tetrahedral": "Alternating4",
    "Octahedral": "Symmetric4",
    "Icosahedral": "Alternating5",
}
_ABSTRACT_TO_POLYHEDRAL = {v: k for k, v in _POLYHEDRAL_ALIASES.items()}
_LABELS = {
    "Tetrahedral": "A4", "Alternating4": "A4",
    "Octahedral": "S4", "Symmetric4": "S4",
    "Icosahedral": "A5", "Alternating5": "A5",
}
_FIXED_ORDERS = {"Alternating4": 12, "Symmetric4": 24, "Alternating5": 60}


@dataclass(frozen=True, order=True)
class GroupName:
    """Isomorphism-type tag.

    ``Tetrahedral``/``Alternating4`` (and the cube and icosahedron pairs)
    name the same type; :meth:`polyhedral` and :meth:`abstract` move
    between the two vocabularies.
    """

    tag: str
    n: int | None = None
    inner: "GroupName | None" = None

    def __post_init__(self):
        tags = {"Cyclic", "Dihedral", "DirectProductZ2", "SL2", *_LABELS}
        if self.tag not in tags:
            raise InvalidName(f"unknown group tag {self.tag!r}")
        if self.tag in ("Cyclic", "Dihedral") and (self.n is None or self.n < 2):
            raise InvalidName(f"{self.tag} needs n >= 2, got {self.n}")
        if self.tag == "SL2" and self.n not in (3, 5):
            raise InvalidName(f"SL2 only over p in (3, 5), got {self.n}")
        if self.tag == "DirectProductZ2" and self.inner is None:
            raise InvalidName("DirectProductZ2 needs an inner group")

    @classmethod
    def cyclic(cls, n: int) -> "GroupName":
        return cls("Cyclic", n)

    @classmethod
    def dihedral(cls, n: int) -> "GroupName":
        return cls("Dihedral", n)

    @property
    def order(self) -> int:
        if self.tag == "Cyclic":
            return self.n
        if self.tag == "Dihedral":
            return 2 * self.n
        if self.tag == "SL2":
            p = self.n
            return p * (p * p - 1)
        if self.tag == "DirectProductZ2":
            return 2 * self.inner.order
        return _FIXED_ORDERS[self.abstract().tag]

    def abstract(self) -> "GroupName":
        if self.tag in _POLYHEDRAL_ALIASES:
            return GroupName(_POLYHEDRAL_ALIASES[self.tag])
        if self.inner is not None:
            return GroupName(self.tag, self.n, self.inner.abstract())
        return self

    def polyhedral(self) -> "GroupName":
        if self.tag in _ABSTRACT_TO_POLYHEDRAL:
            return GroupName(_ABSTRACT_TO_POLYHEDRAL[self.tag])
        return self

    @property
    def label(self) -> str:
        if self.tag == "Cyclic":
            return f"Z{self.n}"
        if self.tag == "Dihedral":
            return f"D{self.n}"
        if self.tag == "SL2":
            return f"SL(2,{self.n})"
        if self.tag == "DirectProductZ2":
            return f"Z2x{self.inner.label}"
        return _LABELS[self.tag]

    @classmethod
    def parse(cls, label: str) -> "GroupName":
        """Inverse of :attr:`label` (polyhedral vocabulary for A4/S4/A5)."""
        s = label.strip()
        try:
            if s.startswith("Z2x"):
                return cls("DirectProductZ2", inner=cls.parse(s[3:]).abstract())
            if s[0] in "ZD" and s[1:].isdigit():
                return cls("Cyclic" if s[0] == "Z" else "Dihedral", int(s[1:]))
            if s.replace(" ", "") in ("SL(2,3)", "SL(2,5)"):
                return cls("SL2", int(s.replace(" ", "")[5]))
        except (IndexError, ValueError) as exc:
            raise InvalidName(f"cannot parse group label {label!r}") from exc
        for tag, lab in (("Tetrahedral", "A4"), ("Octahedral", "S4"), ("Icosahedral", "A5")):
            if s == lab:
                return cls(tag)
        raise InvalidName(f"cannot parse group label {label!r}")

    def __str__(self):
        return self.label


def _cyclic_model(n: int) -> list[Permutation]:
    return [Permutation._raw(tuple((i + 1) % n for i in range(n)))]


def _dihedral_model(n: int) -> list[Permutation]:
    if n == 2:
        return [
            Permutation.from_cycles(4, (0, 1), (2, 3)),
            Permutation.from_cycles(4, (0, 2), (1, 3)),
        ]
    rot = Permutation._raw(tuple((i + 1) % n for i in range(n)))
    flip = Permutation._raw(tuple((-i) % n for i in range(n)))
    return [rot, flip]


def _sl2_model(p: int) -> list[Permutation]:
    vectors = [(a, b) for a in range(p) for b in range(p) if (a, b) != (0, 0)]
    index = {v: i for i, v in enumerate(vectors)}

    def act(m):
        (a, b), (c, d) = m
        return Permutation._raw(tuple(
            index[((a * x + b * y) % p, (c * x + d * y) % p)] for x, y in vectors
        ))

    return [act(((1, 1), (0, 1))), act(((0, p - 1), (1, 0)))]


def model_generators(name: GroupName) -> list[Permutation]:
    """Generators of the standard permutation model of ``name``."""
    tag = name.abstract().tag
    if tag == "Cyclic":
        return _cyclic_model(name.n)
    if tag == "Dihedral":
        return _dihedral_model(name.n)
    if tag == "Alternating4":
        return [Permutation.from_cycles(4, (0, 1, 2)), Permutation.from_cycles(4, (0, 1), (2, 3))]
    if tag == "Symmetric4":
        return [Permutation.from_cycles(4, (0, 1, 2, 3)), Permutation.from_cycles(4, (0, 1))]
    if tag == "Alternating5":
        return [Permutation.from_cycles(5, (0, 1, 2, 3, 4)), Permutation.from_cycles(5, (0, 1, 2))]
    if tag == "SL2":
        return _sl2_model(name.n)
    if tag == "DirectProductZ2":
        inner = model_generators(name.inner)
        d = inner[0].degree
        swap = Permutation._raw((1, 0) + tuple(range(2, d + 2)))
        shifted = [Permutation._raw((0, 1) + tuple(i + 2 for i in g.images)) for g in inner]
        return [swap] + shifted
    raise InvalidName(f"no model for {name!r}")


def construct(name: GroupName) -> PermGroup:
    if not isinstance(name, GroupName):
        raise InvalidName(f"not a GroupName: {name!r}")
    group = generate(model_generators(name))
    assert group.order == name.order, (name, group.order)
    return group
