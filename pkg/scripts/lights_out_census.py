"""Census of Lights Out tori: kernel dimension, the Chebyshev gcd and the winnability criterion.

    python3 scripts/lights_out_census.py --max 16
"""

import argparse
import csv
import sys
from dataclasses import dataclass

from convlat.cheb import chebyshev_T, chebyshev_T_shifted, lights_out_winnable
from convlat.conv import kernel_dimension
from convlat.ff import make_field
from convlat.lattice import AbelianGroup, KernelSpec, pushforward
from convlat.poly import format_factored, poly_gcd


@dataclass
class CensusConfig:
    max_side: int = 16


def census(cfg: CensusConfig):
    a = KernelSpec.a_plus(2, make_field(2, 1))
    for m in range(1, cfg.max_side + 1):
        for n in range(1, cfg.max_side + 1):
            d = kernel_dimension(pushforward(a, AbelianGroup.torus((m, n))))
            g = poly_gcd(chebyshev_T(m), chebyshev_T_shifted(n))
            win = lights_out_winnable(m, n)
            if win != (d == 0):
                raise AssertionError(f"criterion disagrees with the kernel on {m}x{n}")
            yield m, n, d, g.deg, format_factored(g), win


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max", type=int, default=16)
    ns = ap.parse_args()
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(["m", "n", "kernel_dim", "gcd_deg", "gcd", "winnable"])
    for row in census(CensusConfig(ns.max)):
        w.writerow(row)


if __name__ == "__main__":
    main()
