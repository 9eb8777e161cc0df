"""Command line front end: ``lindef <command> [options]``.

Exit codes: 0 success, 2 unparsable input, 3 input that parses but is not
admissible (for example the void complex), 4 a failed cross-check or
verification property.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import errors
from .builtins import BUILTINS, parse_builtin
from .enumerate import enumerate_complexes
from .invariants import (cone_invariance_check, ld_delta, ld_lin_delta, ngon_theorem_scan,
                         topological_invariance_probe, verify_bounds)
from .io import betti_to_json, complex_to_json, dumps, load_complex
from .linalg import FieldSpec
from .resolution import betti_koszul, depth, minimal_free_resolution
from .simplicial import hochster_betti, vertices_of
from .sqmod import alexander_functor, ideal_module, is_isomorphic, stanley_reisner_module

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_CHECK = 0, 2, 3, 4


class CheckFailed(Exception):
    pass


# --- argument handling ----------------------------------------------------------------

def _chars(args) -> list[FieldSpec]:
    raw = list(args.char or [])
    for item in getattr(args, "chars", None) or []:
        raw.extend(x for x in item.split(",") if x)
    if not raw:
        raw = ["0"]
    out = []
    for r in raw:
        try:
            int(r)
        except ValueError:
            raise errors.ParseError(f"characteristic {r!r} is not an integer") from None
        try:
            out.append(FieldSpec.parse(r))
        except ValueError as exc:
            raise errors.BadParams(str(exc)) from None
    return out


def _complex(args):
    if bool(args.builtin) == bool(args.file):
        raise errors.ParseError("give exactly one of --builtin or --file")
    if args.builtin:
        return parse_builtin(args.builtin)
    return load_complex(args.file)


def _emit(args, payload, text: str):
    print(dumps(payload) if args.json else text)


def _keyed(chars, fn):
    results = {str(f.p): fn(f) for f in chars}
    return results[str(chars[0].p)] if len(chars) == 1 else results


# --- commands --------------------------------------------------------------------------

def cmd_compute(args) -> int:
    delta = _complex(args)
    chars = _chars(args)
    reports = {}
    for f in chars:
        try:
            reports[str(f.p)] = ld_delta(delta, f, oracle=args.oracle).to_json()
        except errors.RouteMismatch as exc:
            raise CheckFailed(str(exc)) from None
    payload = reports[str(chars[0].p)] if len(chars) == 1 else reports
    lines = []
    for p, r in reports.items():
        route_ext = r["routes"]["ext"]
        lines.append(f"char {p}: ld = {r['ld']}  indeg = {r['indeg']}  "
                     f"routes lin={r['routes']['lin']} ext={'-' if route_ext is None else route_ext}")
        lines.append("  per strand: " + ", ".join(f"{l}:{v}" for l, v in r["per_strand"].items()
                                                   if v is not None))
        lines.append("  flags: " + ", ".join(f"{k}={v}" for k, v in r["flags"].items()))
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def _betti_payload(delta, f):
    M = stanley_reisner_module(delta, f)
    P = minimal_free_resolution(M)
    res = P.betti()
    hoch = hochster_betti(delta, f)
    kos = betti_koszul(M)
    out = betti_to_json(res, f.p, P.proj_dim, depth(P))
    out["routes_agree"] = res == hoch == kos
    return out, res


def cmd_betti(args) -> int:
    delta = _complex(args)
    if delta.is_void:
        raise errors.EmptyComplex("the void complex has no Stanley-Reisner ring")
    chars = _chars(args)
    lines, payloads, agree = [], {}, True
    for f in chars:
        payload, table = _betti_payload(delta, f)
        payloads[str(f.p)] = payload
        agree &= payload["routes_agree"]
        lines.append(f"char {f.p} (resolution = Koszul = Hochster: {payload['routes_agree']})")
        for (i, j), v in table.graded().items():
            lines.append(f"  beta_{i},{j} = {v}")
    _emit(args, payloads[str(chars[0].p)] if len(chars) == 1 else payloads, "\n".join(lines))
    if not agree:
        raise CheckFailed("Betti routes disagree")
    return EXIT_OK


def cmd_resolve(args) -> int:
    delta = _complex(args)
    if delta.is_void:
        raise errors.EmptyComplex("the void complex has no Stanley-Reisner ring")
    chars = _chars(args)

    def one(f):
        P = minimal_free_resolution(stanley_reisner_module(delta, f))
        return P.to_json()

    payload = _keyed(chars, one)
    items = payload.items() if len(chars) > 1 else [(str(chars[0].p), payload)]
    text = []
    for p, data in items:
        text.append(f"char {p}: ranks " + " <- ".join(str(len(t)) for t in data["terms"]))
        for i, t in enumerate(data["terms"]):
            text.append(f"  P_{i}: " + " ".join("{" + ",".join(map(str, F)) + "}" for F in t))
    _emit(args, payload, "\n".join(text))
    return EXIT_OK


def cmd_dual(args) -> int:
    delta = _complex(args)
    dual = delta.alexander_dual()
    payload = complex_to_json(dual)
    text = "\n".join(" ".join(map(str, f)) if f else "{}" for f in dual.facet_lists()) or "(void)"
    _emit(args, payload, text)
    return EXIT_OK


def _corpus(n):
    return [d for d in enumerate_complexes(n, up_to_symmetry=True) if not d.is_void]


def _suite_bounds(n, f):
    ok = bad = 0
    for d in _corpus(n):
        if d.is_full_simplex:
            continue
        r = verify_bounds(d, f)
        ok, bad = ok + r.all_ok, bad + (not r.all_ok)
    return ok, bad


def _suite_ngon(n, f):
    if n < 4:
        return 0, 0
    scan = ngon_theorem_scan(n, f, allow_n6=n == 6)
    return (1, 0) if scan.ok else (0, 1)


def _suite_cone(n, f):
    ok = bad = 0
    for d in _corpus(n):
        r = cone_invariance_check(d, f)
        ok, bad = ok + r.ok, bad + (not r.ok)
    return ok, bad


def _suite_duality(n, f):
    ok = bad = 0
    for d in _corpus(n):
        M = stanley_reisner_module(d, f)
        good = alexander_functor(alexander_functor(M)) == M
        good &= is_isomorphic(alexander_functor(M), ideal_module(d.alexander_dual(), f))
        good &= minimal_free_resolution(M).betti() == betti_koszul(M) == hochster_betti(d, f)
        ok, bad = ok + good, bad + (not good)
    return ok, bad


def _suite_topology(n, f):
    return (1, 0) if topological_invariance_probe(f).ok else (0, 1)


SUITES = {"bounds": _suite_bounds, "ngon": _suite_ngon, "cone": _suite_cone,
          "duality": _suite_duality, "topology": _suite_topology}


def cmd_verify(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    if args.n is None:
        raise errors.ParseError("verify needs --n")
    if not 1 <= args.n <= 5:
        raise errors.BadParams("verify supports 1 <= n <= 5")
    summary, failed = {}, 0
    for f in _chars(args):
        for name in names:
            ok, bad = SUITES[name](args.n, f)
            summary.setdefault(name, {})[str(f.p)] = {"passed": ok, "failed": bad}
            failed += bad
    payload = {"n": args.n, "suites": summary, "ok": failed == 0}
    text = "\n".join(f"{name} char {p}: {r['passed']} passed, {r['failed']} failed"
                     for name, per in summary.items() for p, r in per.items())
    print(dumps(payload) if args.json else text)
    return EXIT_OK if failed == 0 else EXIT_CHECK


def _scan_one(job):
    facets, n, p = job
    from .simplicial import SimplicialComplex
    d = SimplicialComplex(n, tuple(facets))
    return ld_lin_delta(d, FieldSpec(p))


def cmd_scan(args) -> int:
    if args.n is None:
        raise errors.ParseError("scan needs --n")
    complexes = [d for d in enumerate_complexes(args.n, up_to_symmetry=args.up_to_symmetry,
                                                allow_n6=args.allow_n6) if not d.is_void]
    out = {}
    for f in _chars(args):
        jobs = [(d.facets, d.n, f.p) for d in complexes]
        if args.jobs and args.jobs > 1:
            with ProcessPoolExecutor(args.jobs) as pool:
                lds = list(pool.map(_scan_one, jobs, chunksize=16))
        else:
            lds = [_scan_one(j) for j in jobs]
        out[str(f.p)] = [{"facets": [vertices_of(F) for F in d.facets], "ld": ld}
                         for d, ld in zip(complexes, lds)]
    payload = out if len(out) > 1 else next(iter(out.values()))
    if args.json:
        print(dumps(payload))
    else:
        for p, rows in out.items():
            hist = {}
            for r in rows:
                hist[r["ld"]] = hist.get(r["ld"], 0) + 1
            print(f"char {p}: {len(rows)} complexes, ld histogram {dict(sorted(hist.items()))}")
    return EXIT_OK


def cmd_builtin_list(args) -> int:
    rows = {name: arity for name, (_, arity) in sorted(BUILTINS.items())}
    _emit(args, rows, "\n".join(f"{k} ({v} parameter{'s' if v != 1 else ''})"
                                for k, v in rows.items()))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lindef", description="Linearity defect of Stanley-Reisner rings.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, source=True):
        if source:
            p.add_argument("--builtin", help="name[:p1,p2], see builtin-list")
            p.add_argument("--file", help="complex file (JSON or text)")
        p.add_argument("--char", action="append", help="field characteristic (repeatable)")
        p.add_argument("--json", action="store_true", help="print JSON")

    p = sub.add_parser("compute", help="full invariant report")
    common(p)
    p.add_argument("--oracle", action="store_true", help="also run the Ext route and cross-check")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("betti", help="Betti table by three routes")
    common(p)
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("resolve", help="minimal free resolution of K[delta]")
    common(p)
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("dual", help="facets of the Alexander dual")
    common(p)
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("verify", help="run a verification suite over all complexes on [n]")
    common(p, source=False)
    p.add_argument("--suite", choices=[*SUITES, "all"], default="all")
    p.add_argument("--n", type=int)
    p.add_argument("--chars", action="append", help="comma separated characteristics")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", help="ld of every complex on [n]")
    common(p, source=False)
    p.add_argument("--n", type=int)
    p.add_argument("--up-to-symmetry", action="store_true")
    p.add_argument("--allow-n6", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("builtin-list", help="list builtin complexes")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_builtin_list)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except CheckFailed as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK
    except (errors.ParseError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except errors.LindefError as exc:
        if isinstance(exc, errors.RouteMismatch):
            print(f"check failed: {exc}", file=sys.stderr)
            return EXIT_CHECK
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
