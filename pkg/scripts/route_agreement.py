"""Compare the linear-strand and Ext routes to ld over the whole small corpus.

Both K[delta] and I_delta are checked for every nonvoid class on [n], n <= max_n.

    python scripts/route_agreement.py --max-n 5 --chars 0,2,3
"""
import argparse
import time
from dataclasses import dataclass, field

from lindef.enumerate import enumerate_complexes
from lindef.invariants import ext_route, lin_profile
from lindef.linalg import FieldSpec
from lindef.resolution import minimal_free_resolution
from lindef.sqmod import ideal_module, stanley_reisner_module


@dataclass
class AgreementConfig:
    max_n: int = 5
    chars: list[int] = field(default_factory=lambda: [0, 2, 3])


def run(cfg: AgreementConfig):
    checked, bad = 0, []
    for p in cfg.chars:
        f = FieldSpec(p)
        for n in range(1, cfg.max_n + 1):
            for d in enumerate_complexes(n, up_to_symmetry=True):
                if d.is_void:
                    continue
                for M in (stanley_reisner_module(d, f), ideal_module(d, f)):
                    if M.is_zero():
                        continue
                    checked += 1
                    if lin_profile(minimal_free_resolution(M)) != ext_route(M).per_strand:
                        bad.append((p, d))
    return checked, bad


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=5)
    ap.add_argument("--chars", default="0,2,3")
    a = ap.parse_args()
    t = time.perf_counter()
    checked, bad = run(AgreementConfig(a.max_n, [int(x) for x in a.chars.split(",")]))
    print(f"{checked} modules, {len(bad)} disagreements, {time.perf_counter() - t:.1f}s")
    for p, d in bad:
        print(f"  char {p}: {d!r}")


if __name__ == "__main__":
    main()
