"""Command-line front end.

    qminor check FILE                 combinatorial q-balance test
    qminor verify FILE --graph SPEC   LHS - RHS on the path matrix of a graph
    qminor falsify FILE               verify on the grid sized to the identity
    qminor catalog NAME [params]      emit a catalog identity as JSON
    qminor matchings --I .. --J .. --Ip .. --Jp ..
    qminor classify  --I .. --J .. --Ip .. --Jp ..

Exit codes: 0 holds, 1 refuted, 2 bad input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from .algebra import LaurentScalar, NCPolynomial
from .cortege import Cortege
from .flows import qminor_flows
from .identities import CATALOG, commutes, identity_from_json, quasicommute, verify_universal
from .matchings import enumerate_feasible
from .se_graph import grid, parse_graph_spec

OK, REFUTED, BAD_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def thread_count() -> int:
    raw = os.environ.get("QMINOR_THREADS", "")
    if not raw:
        return min(4, os.cpu_count() or 1)
    try:
        n = int(raw)
    except ValueError:
        raise InputError(f"QMINOR_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise InputError(f"QMINOR_THREADS must be a positive integer, got {raw!r}")
    return n


def _int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        out = [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if out != sorted(set(out)):
        raise argparse.ArgumentTypeError(f"index list {text!r} must be strictly increasing")
    return out


def _load_identity(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None
    try:
        return identity_from_json(data)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _emit(obj):
    print(json.dumps(obj, indent=2, sort_keys=True))


def _difference(g, identity) -> NCPolynomial:
    if identity.m > g.m or identity.n > g.n:
        raise InputError(f"identity uses a {identity.m}x{identity.n} frame but the graph is {g.m}x{g.n}")
    terms = [(1, t) for t in identity.lhs] + [(-1, t) for t in identity.rhs]
    minors = sorted({(c.I, c.J) for _, t in terms for c in [t.cortege]}
                    | {(c.Ip, c.Jp) for _, t in terms for c in [t.cortege]})
    with ThreadPoolExecutor(max_workers=thread_count()) as pool:
        values = dict(zip(minors, pool.map(lambda ij: qminor_flows(g, *ij), minors)))
    total = NCPolynomial.zero(g.table)
    for side, t in terms:
        c = t.cortege
        prod = values[(c.I, c.J)] * values[(c.Ip, c.Jp)]
        total = total + prod.scale(LaurentScalar.q(t.qexp, side * t.sign))
    return total


def cmd_check(args) -> int:
    identity = _load_identity(args.file)
    try:
        report = verify_universal(identity)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _emit(report.to_json())
    return OK if report.ok else REFUTED


def _print_difference(g, identity) -> int:
    diff = _difference(g, identity)
    print(diff.render())
    return OK if diff.is_zero() else REFUTED


def cmd_verify(args) -> int:
    identity = _load_identity(args.file)
    try:
        g = parse_graph_spec(args.graph)
    except (ValueError, OSError, KeyError) as exc:
        raise InputError(f"bad graph spec {args.graph!r}: {exc}") from None
    return _print_difference(g, identity)


def cmd_falsify(args) -> int:
    identity = _load_identity(args.file)
    return _print_difference(grid(identity.m, identity.n), identity)


# parameters taken by each catalog builder, in call order
CATALOG_PARAMS = {
    "commuting_subminor": ("I", "J", "Ip", "Jp"),
    "lz": ("I", "J"),
    "manin": ("kind", "i", "j", "ip", "jp"),
    "plucker3a": ("X", "i", "j", "k"),
    "plucker3b": ("X", "i", "j", "k"),
    "plucker4": ("X", "i", "j", "k", "l"),
    "dodgson": ("X", "i", "k", "Xp", "ip", "kp"),
    "general_r1": ("I", "J"),
    "general_r2": ("I", "J"),
}


def cmd_catalog(args) -> int:
    if args.name not in CATALOG:
        raise InputError(f"unknown catalog entry {args.name!r}; choose from {', '.join(sorted(CATALOG))}")
    params = []
    for p in CATALOG_PARAMS[args.name]:
        v = getattr(args, p)
        if v is None:
            if args.name == "manin" and p in ("ip", "jp"):
                pass
            elif p in ("X", "Xp"):
                v = []
            else:
                raise InputError(f"catalog {args.name} needs --{p}")
        params.append(v)
    try:
        identity = CATALOG[args.name](*params)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _emit(identity.to_json())
    return OK


def _cortege(args) -> Cortege:
    try:
        return Cortege(args.I, args.J, args.Ip, args.Jp)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def cmd_matchings(args) -> int:
    c = _cortege(args)
    ms = enumerate_feasible(c)
    _emit({"cortege": c.render(), "count": len(ms),
           "matchings": [{"text": M.render(), "couples": M.to_json()} for M in ms]})
    return OK


def cmd_classify(args) -> int:
    c = _cortege(args)
    e = quasicommute(c)
    _emit({"cortege": c.render(), "c": e, "commutes": commutes(c),
           "unique": len(enumerate_feasible(c)) == 1})
    return OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qminor", description="Quadratic identities on quantum minors.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide q-balancedness of an identity file")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify", help="evaluate LHS - RHS on the path matrix of a graph")
    p.add_argument("file")
    p.add_argument("--graph", required=True, help="grid:MxN, cauchon:M,N:rows or a JSON file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("falsify", help="evaluate LHS - RHS on the grid sized to the identity")
    p.add_argument("file")
    p.set_defaults(func=cmd_falsify)

    p = sub.add_parser("catalog", help="emit a catalog identity")
    p.add_argument("name")
    for s in ("X", "Xp", "I", "J", "Ip", "Jp"):
        p.add_argument(f"--{s}", type=_int_list)
    for s in ("i", "j", "k", "l", "ip", "jp", "kp"):
        p.add_argument(f"--{s}", type=int)
    p.add_argument("--kind", choices=["row", "column", "commute", "diagonal"])
    p.set_defaults(func=cmd_catalog)

    for name, func, text in (("matchings", cmd_matchings, "list feasible matchings of a cortege"),
                             ("classify", cmd_classify, "quasicommutation verdict for a cortege")):
        p = sub.add_parser(name, help=text)
        for s in ("I", "J", "Ip", "Jp"):
            p.add_argument(f"--{s}", type=_int_list, required=True)
        p.set_defaults(func=func)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    try:
        thread_count()
        return args.func(args)
    except InputError as exc:
        print(f"qminor: error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
