"""Run the invariant sweeps over a range of r and g and print a timing summary.

    python3 scripts/sweep.py --r-max 5000 --g-max 1000 --jobs 4
"""
from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, field, fields

from sphere_mcg.checks import first_failure, verify_range


@dataclass
class SweepConfig:
    r_min: int = 3
    r_max: int = 1000
    g_min: int = 2
    g_max: int = 500
    jobs: int = 1
    realize_max: int = 60
    embed_max: int = 30
    verify_g: list[int] = field(default_factory=list)


def parse_config() -> SweepConfig:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f in fields(SweepConfig):
        flag = "--" + f.name.replace("_", "-")
        if f.name == "verify_g":
            parser.add_argument(flag, type=int, action="append", default=[])
        else:
            parser.add_argument(flag, type=int, default=f.default)
    return SweepConfig(**vars(parser.parse_args()))


def main() -> int:
    cfg = parse_config()
    start = time.perf_counter()
    results = verify_range(cfg.r_min, cfg.r_max, cfg.g_min, cfg.g_max, jobs=cfg.jobs,
                           realize_max=cfg.realize_max, embed_max=cfg.embed_max, verify_g=cfg.verify_g)
    elapsed = time.perf_counter() - start
    for res in results:
        status = "ok" if res.ok else f"FAIL x{len(res.failures)}"
        print(f"{res.name:32s} {res.checked:>9d}  {status}")
        for w in res.warnings:
            print(f"{'':32s} warning: {w}")
    print(f"total {elapsed:.1f}s with {cfg.jobs} job(s)")
    failure = first_failure(results)
    if failure:
        print("first counterexample:", failure)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
