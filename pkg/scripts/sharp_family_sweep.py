"""Tabulate indeg, ld and the two extremal Betti numbers of sharp_family(n, d).

    python scripts/sharp_family_sweep.py --max-n 7
"""
import argparse
from dataclasses import dataclass

from lindef.builtins import sharp_family
from lindef.invariants import ld_lin_delta
from lindef.linalg import FieldSpec
from lindef.resolution import minimal_free_resolution
from lindef.simplicial import indeg
from lindef.sqmod import stanley_reisner_module


@dataclass
class SweepConfig:
    min_n: int = 4
    max_n: int = 7
    char: int = 0


def rows(cfg: SweepConfig):
    f = FieldSpec(cfg.char)
    for n in range(cfg.min_n, cfg.max_n + 1):
        for d in range(2, n - 1):
            delta = sharp_family(n, d)
            graded = minimal_free_resolution(stanley_reisner_module(delta, f)).betti().graded()
            yield (n, d, indeg(delta), ld_lin_delta(delta, f),
                   graded.get((n - d, n), 0), graded.get((n - d - 1, n - 1), 0))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--min-n", type=int, default=4)
    ap.add_argument("--max-n", type=int, default=7)
    ap.add_argument("--char", type=int, default=0)
    a = ap.parse_args()
    print(f"{'n':>3} {'d':>3} {'indeg':>6} {'ld':>4} {'b(n-d,n)':>9} {'b(n-d-1,n-1)':>13}")
    for r in rows(SweepConfig(a.min_n, a.max_n, a.char)):
        print("{:>3} {:>3} {:>6} {:>4} {:>9} {:>13}".format(*r))


if __name__ == "__main__":
    main()
