"""Sweep the d/s table of a kernel and report identity checks and line data.

    python3 scripts/sweep_table.py --max 21,21 --workers 4 --out table.csv
"""

import argparse
import json
import time
from dataclasses import asdict, dataclass

from convlat.count import line_max, line_period, table_build
from convlat.ff import make_field
from convlat.lattice import KernelSpec


@dataclass
class SweepConfig:
    bounds: tuple[int, ...] = (21, 21)
    kernel: str | None = None
    workers: int = 1
    out: str | None = None
    lines: tuple[int, ...] = (1, 3, 5, 7, 9)


def load_kernel(path: str | None) -> KernelSpec:
    if path is None:
        return KernelSpec.a_plus(2, make_field(2, 1))
    with open(path) as fh:
        return KernelSpec.from_json(json.load(fh))


def sweep(cfg: SweepConfig) -> dict:
    a = load_kernel(cfg.kernel)
    t0 = time.perf_counter()
    T = table_build(a, cfg.bounds, workers=cfg.workers, out=cfg.out)
    elapsed = time.perf_counter() - t0
    report = {
        "config": asdict(cfg),
        "seconds": round(elapsed, 2),
        "cells": len(T.entries),
        "problems": T.check(),
        "max_d": max(d for d, _ in T.entries.values()),
        "exact": sorted([list(n), s] for n, (_, s) in T.entries.items() if s),
    }
    if a.rank == 2:
        report["lines"] = {n: {"period": line_period(a, (n,)), "max": line_max(a, (n,))} for n in cfg.lines}
    return report


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max", default="21,21")
    ap.add_argument("--kernel")
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out")
    ap.add_argument("--lines", default="1,3,5,7,9")
    ns = ap.parse_args()
    cfg = SweepConfig(
        bounds=tuple(int(x) for x in ns.max.split(",")),
        kernel=ns.kernel,
        workers=ns.workers,
        out=ns.out,
        lines=tuple(int(x) for x in ns.lines.split(",")),
    )
    print(json.dumps(sweep(cfg), indent=1))


if __name__ == "__main__":
    main()
