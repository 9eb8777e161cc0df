"""Reading and writing complexes, Betti tables and resolutions.

Vertices are 1-based everywhere in I/O.  Two complex formats are accepted:

JSON    {"n": 4, "facets": [[1, 2], [2, 3]], "empty_face_only": false}
text    a line ``n=4`` followed by one facet per line, vertices separated
        by spaces; a line holding only ``{}`` stands for the empty face.
"""
from __future__ import annotations

import json
import math
from pathlib import Path

from .errors import ParseError
from .simplicial import BettiTable, SimplicialComplex


def complex_to_json(delta: SimplicialComplex) -> dict:
    out = {"n": delta.n, "facets": [] if delta.facets == (0,) else delta.facet_lists()}
    if delta.facets == (0,):
        out["empty_face_only"] = True
    if delta.name:
        out["name"] = delta.name
    return out


def complex_from_json(data: dict) -> SimplicialComplex:
    try:
        n = int(data["n"])
        facets = [list(map(int, f)) for f in data.get("facets", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad complex JSON: {exc}") from None
    return SimplicialComplex.from_facets(n, facets, empty_face=bool(data.get("empty_face_only")),
                                         name=data.get("name"))


def complex_to_text(delta: SimplicialComplex) -> str:
    lines = [f"n={delta.n}"]
    for f in delta.facet_lists():
        lines.append(" ".join(map(str, f)) if f else "{}")
    return "\n".join(lines) + "\n"


def complex_from_text(text: str) -> SimplicialComplex:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or not lines[0].replace(" ", "").startswith("n="):
        raise ParseError("text complex must start with a line 'n=<int>'")
    try:
        n = int(lines[0].replace(" ", "")[2:])
        facets, empty = [], False
        for ln in lines[1:]:
            if ln == "{}":
                empty = True
            else:
                facets.append([int(v) for v in ln.split()])
    except ValueError as exc:
        raise ParseError(f"bad text complex: {exc}") from None
    return SimplicialComplex.from_facets(n, facets, empty_face=empty)


def load_complex(path: str | Path) -> SimplicialComplex:
    text = Path(path).read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from None
        return complex_from_json(data)
    return complex_from_text(text)


def _num(x):
    if isinstance(x, float) and math.isinf(x):
        return None
    return x


def betti_to_json(table: BettiTable, char: int, proj_dim=None, depth=None) -> dict:
    return {"char": char, "betti": table.to_json(),
            "proj_dim": _num(table.proj_dim if proj_dim is None else proj_dim),
            "depth": _num(depth)}


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)
