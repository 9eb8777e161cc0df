"""Regenerate tests/fixtures/betti_*.json from the sympy Hochster oracle.

The package is used only to build the builtin complexes; every number in
the fixtures comes from tests/oracles.py.
"""
import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

from oracles import hochster  # noqa: E402

from lindef.builtins import parse_builtin  # noqa: E402

CASES = [("ngon:5", 0), ("boundary:4", 0), ("sharp_family:6,3", 0), ("cyclic_sphere:6,3", 0),
         ("rp2_6", 0), ("rp2_6", 2), ("torus_7", 0)]


def main():
    out_dir = ROOT / "tests" / "fixtures"
    out_dir.mkdir(exist_ok=True)
    for label, p in CASES:
        delta = parse_builtin(label)
        facets = [frozenset(f) for f in delta.facet_lists()]
        table = hochster(delta.n, facets, p)
        rows = sorted(({"i": i, "F": sorted(F), "mult": m} for (i, F), m in table.items()),
                      key=lambda r: (r["i"], len(r["F"]), r["F"]))
        name = label.replace(":", "_").replace(",", "_")
        path = out_dir / f"betti_{name}_char{p}.json"
        path.write_text(json.dumps({"builtin": label, "char": p, "betti": rows}, indent=1) + "\n")
        print(path.name, len(rows), "entries")


if __name__ == "__main__":
    main()
