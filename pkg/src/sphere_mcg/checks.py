"""Sweeps that test the classification results against independent computations.

Each ``check_*`` function returns a :class:`CheckResult`; ``failures`` holds
human-readable counterexamples in the order they were found.
"""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .classification import class_counts, class_table, closed_form_count
from .hyperelliptic import (
    LIFT_NAMES,
    base_of,
    count_maximal_classes,
    enumerated_order,
    lift_catalog,
    smallest_admissible_genus,
    verify_lift,
)
from .errors import VerificationFailed
from .permgroup import find_relabeling, orbits_and_stabilizers
from .sphere_actions import (
    ActionDescriptor,
    enumerate_descriptors,
    extension_chain,
    is_maximal,
    maximal_extension,
    maximal_types,
    order_n_element_exists,
    realize,
)

R3_DIVERGENCE = "r=3: derived {D3} vs congruence {Z2, D3} (Z2 fixing a marked point sits inside D3)"


@dataclass
class CheckResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def merge(self, other: "CheckResult") -> None:
        self.checked += other.checked
        self.failures.extend(other.failures)
        self.warnings.extend(other.warnings)


def divides_one_of(n: int, r: int) -> bool:
    return any((r - a) % n == 0 for a in (0, 1, 2))


def realization_matches(d: ActionDescriptor) -> bool:
    """Orbit lengths and stabilizer orders of ``realize(d)`` are exactly those of ``d``; action faithful."""
    group, labeling = realize(d)
    if group.order != d.rot.order or group.degree != d.r:
        return False
    expected = Counter((s.length, s.stabilizer_order) for s in d.marked_slots)
    expected[(d.rot.order, 1)] += d.k
    found = Counter((len(orb), stab) for orb, stab in orbits_and_stabilizers(group))
    if found != expected:
        return False
    # each orbit carries a single label
    return all(len({labeling[p][0] for p in orb}) == 1 for orb, _ in orbits_and_stabilizers(group))


def embedding_certified(d: ActionDescriptor) -> bool:
    ext = maximal_extension(d)
    if ext is None:
        return True
    small, _ = realize(d)
    big, _ = realize(ext)
    return find_relabeling(small, big) is not None


# ---------------------------------------------------------------------------
# per-r and per-g units (picklable for process pools)


def _r_unit(r: int) -> dict[str, CheckResult]:
    out = {}

    res = CheckResult("maximal-types")
    derived = maximal_types(r, "derived")
    congruence = maximal_types(r, "congruence")
    res.checked = 1
    if derived != congruence:
        msg = (f"r={r}: derived {sorted(x.label for x in derived)} "
               f"vs congruence {sorted(x.label for x in congruence)}")
        (res.warnings if r == 3 else res.failures).append(R3_DIVERGENCE if r == 3 else msg)
    out[res.name] = res

    res = CheckResult("class-counts")
    for iso, count in sorted(class_counts(r).items()):
        res.checked += 1
        expected = closed_form_count(r, iso)
        if count != expected:
            res.failures.append(f"r={r} {iso.label}: enumerated {count}, closed form {expected}")
    out[res.name] = res

    res = CheckResult("maximal-classes-injective")
    labels = [row.invariant.iso_label for row in class_table(r) if row.maximal]
    res.checked = 1
    if len(labels) != len(set(labels)):
        res.failures.append(f"r={r}: two maximal classes share a type: {[x.label for x in labels]}")
    out[res.name] = res

    res = CheckResult("order-n-elements")
    for n in range(2, r + 1):
        res.checked += 1
        if order_n_element_exists(r, n) != divides_one_of(n, r):
            res.failures.append(f"r={r} n={n}: descriptor feasibility disagrees with divisibility")
    out[res.name] = res

    res = CheckResult("cyclic-chains")
    allowed = {r - 1, 2 * r, 2 * (r - 2), 12, 24, 60}
    for d in enumerate_descriptors(r):
        if d.rot.tag != "cyclic":
            continue
        res.checked += 1
        chain = extension_chain(d)
        if len(chain) - 1 > 3 or chain[-1].rot.order not in allowed or not is_maximal(chain[-1]):
            res.failures.append(f"r={r}: chain from {d} ends at {chain[-1]} after {len(chain) - 1} steps")
        elif len(chain) > 1 and chain[1].rot.tag == "cyclic" and chain[1].rot.n not in (r, r - 1, r - 2):
            res.failures.append(f"r={r}: first step from {d} is not a cyclic group of order r, r-1 or r-2")
    out[res.name] = res
    return out


def _r_unit_realize(r: int) -> dict[str, CheckResult]:
    out = {}
    res = CheckResult("realization")
    for d in enumerate_descriptors(r):
        res.checked += 1
        if not realization_matches(d):
            res.failures.append(f"realization of {d} has the wrong orbit profile or is unfaithful")
    out[res.name] = res
    return out


def _r_unit_embed(r: int) -> dict[str, CheckResult]:
    res = CheckResult("embedding")
    for d in enumerate_descriptors(r):
        if is_maximal(d):
            continue
        res.checked += 1
        if not embedding_certified(d):
            res.failures.append(f"{d} does not embed in {maximal_extension(d)}")
    return {res.name: res}


def _g_unit(g: int) -> dict[str, CheckResult]:
    out = {}
    res = CheckResult("hyperelliptic-count")
    res.checked = 1
    a, b = count_maximal_classes(g, "catalog"), count_maximal_classes(g, "closed_form")
    if a != b:
        res.failures.append(f"g={g}: catalog has {a} classes, closed form {b}")
    out[res.name] = res

    res = CheckResult("hyperelliptic-bases")
    res.checked = 1
    bases = sorted(rec.base.label for rec in lift_catalog(g))
    expected = sorted(x.label for x in maximal_types(2 * g + 2, "congruence"))
    if bases != expected:
        res.failures.append(f"g={g}: lift bases {bases} vs maximal types at r={2 * g + 2} {expected}")
    out[res.name] = res

    res = CheckResult("lift-orders")
    for rec in lift_catalog(g):
        res.checked += 1
        found = enumerated_order(rec.name, g)
        if found != rec.expected_order:
            res.failures.append(f"g={g} {rec.name}: enumerated {found}, expected {rec.expected_order}")
    out[res.name] = res
    return out


def _verify_unit(job: tuple[str, int]) -> dict[str, CheckResult]:
    name, g = job
    res = CheckResult("lift-structure", checked=1)
    try:
        rec = verify_lift(name, g)
        res.warnings.extend(f"g={g} {name}: {note}" for note in rec.verification.notes)
    except VerificationFailed as exc:
        res.failures.append(exc.detail)
    return {res.name: res}


def _gather(unit: Callable, items: Iterable, jobs: int) -> dict[str, CheckResult]:
    items = list(items)
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(unit, items, chunksize=max(1, len(items) // (4 * jobs))))
    else:
        parts = [unit(x) for x in items]
    merged: dict[str, CheckResult] = {}
    for part in parts:
        for name, res in part.items():
            merged.setdefault(name, CheckResult(name)).merge(res)
    return merged


def verify_range(
    r_min: int,
    r_max: int,
    g_min: int,
    g_max: int,
    jobs: int = 1,
    realize_max: int = 60,
    embed_max: int = 30,
    verify_g: Iterable[int] = (),
) -> list[CheckResult]:
    """Run every sweep; results in a fixed order regardless of ``jobs``.

    Realizations are checked for ``r <= realize_max`` and embeddings for
    ``r <= embed_max``; the structural lift check runs at each family's
    smallest admissible genus inside ``[g_min, g_max]`` plus ``verify_g``.
    """
    results: dict[str, CheckResult] = {}
    rs = range(max(3, r_min), r_max + 1)
    if len(rs):
        results.update(_gather(_r_unit, rs, jobs))
        results.update(_gather(_r_unit_realize, [r for r in rs if r <= realize_max], jobs))
        results.update(_gather(_r_unit_embed, [r for r in rs if r <= embed_max], jobs))
    gs = range(max(2, g_min), g_max + 1)
    if len(gs):
        results.update(_gather(_g_unit, gs, jobs))
        targets = set()
        for name in LIFT_NAMES:
            g = smallest_admissible_genus(name)
            while g < gs.start:
                g += _period(name)
            if g in gs:
                targets.add((name, g))
        for g in verify_g:
            targets.update((rec.name, g) for rec in lift_catalog(g))
        results.update(_gather(_verify_unit, sorted(targets, key=lambda t: (t[1], LIFT_NAMES.index(t[0]))), jobs))
    order = ["maximal-types", "class-counts", "maximal-classes-injective", "order-n-elements",
             "cyclic-chains", "realization", "embedding", "hyperelliptic-count",
             "hyperelliptic-bases", "lift-orders", "lift-structure"]
    return [results[name] for name in order if name in results]


def _period(name: str) -> int:
    # admissibility of every family is periodic in g with period dividing 60
    return 1 if name in ("Z4g2", "V2g2", "U2g") else 60


def first_failure(results: list[CheckResult]) -> str | None:
    for res in results:
        if res.failures:
            return f"{res.name}: {res.failures[0]}"
    return None
