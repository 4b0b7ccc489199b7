"""Command-line front end: ``gbs <command> ...``.

Exit codes: 0 for a positive decision (or plain success), 1 for a negative
decision, 2 for errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .commensurability import check_certificate, commensurable, verdict_to_dict
from .covering import cover_from_json, cover_to_json, gamma_k, lift_labels, standard_subgroup
from .graph import GraphValidationError, betti_number, graph_from_json, graph_to_dict, graph_to_json, validate
from .iso import iso_normal_forms, iso_subgroups
from .modular import image_generator_cyclic, modular_image
from .moves import moves_to_jsonl, random_deform
from .normalform import normal_form_of_cover

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2


def _read(path: str) -> str:
    return sys.stdin.read() if path == "-" else Path(path).read_text()


def _emit(args, text: str, record: dict | None = None) -> None:
    if getattr(args, "json", False) and record is not None:
        print(json.dumps(record))
    else:
        print(text)


def cmd_comm(args) -> int:
    v = commensurable(args.m1, args.n1, args.m2, args.n2, with_witness=args.witness)
    record = verdict_to_dict(v)
    lines = [str(v)]
    if v.witness is not None:
        check_certificate(v.witness)
        record["witness_checked"] = True
        lines += [f"  {s}" for s in v.witness.steps] or ["  (identical groups)"]
        lines.append("  certificate checked")
    _emit(args, "\n".join(lines), record)
    return EXIT_YES if v.commensurable else EXIT_NO


def cmd_iso(args) -> int:
    c1, c2 = cover_from_json(_read(args.cover1)), cover_from_json(_read(args.cover2))
    yes = iso_subgroups(c1, args.n1, c2, args.n2)
    record = {"isomorphic": yes}
    if yes and c1.d >= 2 and c2.d >= 2:
        nf1, nf2 = normal_form_of_cover(c1, args.n1), normal_form_of_cover(c2, args.n2)
        _, (shift, sigma) = iso_normal_forms(nf1, nf2)
        record.update(nf1=str(nf1), nf2=str(nf2), shift=shift, matching=list(sigma))
    _emit(args, "isomorphic" if yes else "not isomorphic", record)
    return EXIT_YES if yes else EXIT_NO


def cmd_normalize(args) -> int:
    nf = normal_form_of_cover(cover_from_json(_read(args.cover)), args.n)
    _emit(args, str(nf), {"r": nf.r, "l": nf.l, "m": nf.m, "residues": list(nf.residues)})
    return EXIT_YES


def cmd_modular(args) -> int:
    img = modular_image(graph_from_json(_read(args.graph)))
    q = image_generator_cyclic(img)
    text = str(img) if q is None else f"gen = {q.numerator}/{q.denominator}"
    record = {
        "primes": list(img.primes),
        "basis": [list(r) for r in img.basis],
        "signs": list(img.signs),
        "minus_one": img.minus_one,
        "generators": [str(x) for x in img.generators()],
    }
    _emit(args, text, record)
    return EXIT_YES


def cmd_deform(args) -> int:
    g = graph_from_json(_read(args.graph))
    h, log = random_deform(g, args.steps, args.seed, keep_reduced=args.keep_reduced)
    if args.log:
        Path(args.log).write_text(moves_to_jsonl(log))
    print(graph_to_json(h))
    if len(log) < args.steps:
        print(f"stopped after {len(log)} moves: no legal move", file=sys.stderr)
    return EXIT_YES


def cmd_cover_lift(args) -> int:
    g = lift_labels(cover_from_json(_read(args.cover)), args.p, args.q)
    print(graph_to_json(g))
    return EXIT_YES


def cmd_subgroup_hmn(args) -> int:
    d, desc = standard_subgroup(args.m, args.n)
    _emit(args, f"index {d}: {desc}", {"index": d, "d": desc.d, "p": desc.p, "q": desc.q})
    return EXIT_YES


def cmd_gammak(args) -> int:
    print(cover_to_json(gamma_k(args.k)))
    return EXIT_YES


def cmd_validate(args) -> int:
    try:
        g = validate(json.loads(_read(args.graph)))
    except GraphValidationError as exc:
        for v in exc.violations:
            print(v)
        return EXIT_NO
    _emit(args, f"valid: {len(g.vertices)} vertices, {len(g.edges)} edges, betti {betti_number(g)}",
          {"valid": True, "betti": betti_number(g), "graph": graph_to_dict(g)})
    return EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gbs", description="Algorithms for generalised Baumslag-Solitar groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("comm", help="decide commensurability of BS(m1,n1) and BS(m2,n2)")
    for name in ("m1", "n1", "m2", "n2"):
        p.add_argument(name, type=int)
    p.add_argument("--witness", action="store_true", help="emit and check a certificate")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_comm)

    p = sub.add_parser("iso", help="isomorphism of two subgroups of G^d_{1,n}")
    p.add_argument("cover1")
    p.add_argument("--n1", type=int, required=True)
    p.add_argument("cover2")
    p.add_argument("--n2", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("normalize", help="normal form of the subgroup given by a cover")
    p.add_argument("cover")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("modular", help="image of the modular homomorphism")
    p.add_argument("graph")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_modular)

    p = sub.add_parser("deform", help="seeded random walk of moves")
    p.add_argument("graph")
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--keep-reduced", action="store_true")
    p.add_argument("--log", help="write the move log here as JSON lines")
    p.set_defaults(func=cmd_deform)

    p = sub.add_parser("cover", help="cover utilities")
    csub = p.add_subparsers(dest="cover_command", required=True)
    q = csub.add_parser("lift", help="label every edge of a cover with (p, q)")
    q.add_argument("cover")
    q.add_argument("--p", type=int, default=1)
    q.add_argument("--q", type=int, required=True)
    q.set_defaults(func=cmd_cover_lift)

    p = sub.add_parser("subgroup", help="standard subgroups")
    ssub = p.add_subparsers(dest="subgroup_command", required=True)
    q = ssub.add_parser("hmn", help="the standard subgroup of BS(m,n)")
    q.add_argument("m", type=int)
    q.add_argument("n", type=int)
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_subgroup_hmn)

    p = sub.add_parser("gammak", help="the rank-k cover of the two-petal bouquet")
    p.add_argument("k", type=int)
    p.set_defaults(func=cmd_gammak)

    p = sub.add_parser("validate", help="check a graph file")
    p.add_argument("graph")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_YES
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError) as exc:
        print(f"gbs: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    entry()
