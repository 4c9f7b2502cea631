"""Build the partnership graph of a symmetric rank-2 kernel and compare components with suborder level sets.

    python3 scripts/partnership_graph.py --max 33
"""

import argparse
import json
from collections import defaultdict
from dataclasses import asdict, dataclass

from convlat.count import level_set_check, partnership_graph, suborder
from convlat.ff import make_field
from convlat.lattice import KernelSpec


@dataclass
class GraphConfig:
    bound: int = 33
    kernel: str | None = None
    workers: int = 1


def run(cfg: GraphConfig) -> dict:
    if cfg.kernel is None:
        a = KernelSpec.a_plus(2, make_field(2, 1))
    else:
        with open(cfg.kernel) as fh:
            a = KernelSpec.from_json(json.load(fh))
    G = partnership_graph(a, cfg.bound, cfg.workers)
    rep = level_set_check(G)
    levels = defaultdict(list)
    for v in G.vertices:
        levels[suborder(v)].append(v)
    return {
        "config": asdict(cfg),
        "graph": G.to_json(),
        "level_sets": dict(sorted(levels.items())),
        "components_inside_level_sets": rep.ok,
        # whole level sets, counted only up to the bound
        "components_filling_level_sets_within_bound": sorted(
            c for c in G.components() if sorted(levels[suborder(c[0])]) == c
        ),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max", type=int, default=33)
    ap.add_argument("--kernel")
    ap.add_argument("--workers", type=int, default=1)
    ns = ap.parse_args()
    print(json.dumps(run(GraphConfig(ns.max, ns.kernel, ns.workers)), indent=1))


if __name__ == "__main__":
    main()
