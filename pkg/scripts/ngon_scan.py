"""Scan every symmetry class on [n] and list the complexes of maximal ld.

    python scripts/ngon_scan.py --n 5 --chars 0,2
"""
import argparse
import json
from dataclasses import asdict, dataclass, field

from lindef.invariants import ngon_theorem_scan
from lindef.linalg import FieldSpec


@dataclass
class ScanConfig:
    n: int = 5
    chars: list[int] = field(default_factory=lambda: [0, 2])
    allow_n6: bool = False


def run(cfg: ScanConfig) -> dict:
    out = {}
    for p in cfg.chars:
        scan = ngon_theorem_scan(cfg.n, FieldSpec(p), allow_n6=cfg.allow_n6)
        out[str(p)] = {"ok": scan.ok, **scan.to_json()}
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=5)
    ap.add_argument("--chars", default="0,2")
    ap.add_argument("--allow-n6", action="store_true")
    a = ap.parse_args()
    cfg = ScanConfig(a.n, [int(x) for x in a.chars.split(",")], a.allow_n6)
    print(json.dumps({"config": asdict(cfg), "result": run(cfg)}, indent=1))


if __name__ == "__main__":
    main()
