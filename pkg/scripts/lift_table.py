"""Tabulate hyperelliptic lifts: catalog per genus, and verified structure of every family.

    python3 scripts/lift_table.py --g-max 30
"""
from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from sphere_mcg.hyperelliptic import LIFT_NAMES, lift_catalog, smallest_admissible_genus, verify_lift


@dataclass
class TableConfig:
    g_min: int = 2
    g_max: int = 30
    verify_extra: int = 2  # admissible genera checked per family beyond the smallest


def family_rows(cfg: TableConfig):
    for name in LIFT_NAMES:
        g0 = smallest_admissible_genus(name)
        genera = [g0]
        g = g0 + 1
        while len(genera) <= cfg.verify_extra and g < 200:
            if any(rec.name == name for rec in lift_catalog(g)):
                genera.append(g)
            g += 1
        for g in genera:
            start = time.perf_counter()
            rec = verify_lift(name, g)
            v = rec.verification
            yield (name, g, rec.base.label, v.enumerated_order, v.center_order,
                   f"{time.perf_counter() - start:.3f}", "; ".join(v.notes))


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--g-min", type=int, default=TableConfig.g_min)
    parser.add_argument("--g-max", type=int, default=TableConfig.g_max)
    parser.add_argument("--verify-extra", type=int, default=TableConfig.verify_extra)
    cfg = TableConfig(**vars(parser.parse_args()))

    print("genus  classes  lifts")
    for g in range(cfg.g_min, cfg.g_max + 1):
        cat = lift_catalog(g)
        print(f"{g:5d}  {len(cat):7d}  " + ", ".join(f"{r.name}({r.base.label})" for r in cat))

    print()
    print(f"{'family':7s} {'g':>3s} {'base':6s} {'|G|':>5s} {'|Z|':>4s} {'sec':>6s}  notes")
    for name, g, base, order, zord, sec, notes in family_rows(cfg):
        print(f"{name:7s} {g:3d} {base:6s} {order:5d} {zord:4d} {sec:>6s}  {notes}")


if __name__ == "__main__":
    main()
