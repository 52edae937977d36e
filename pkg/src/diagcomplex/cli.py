"""Command line front end.

``--parity`` is always the parity of the configuration dimension ``n``.
Link diagrams are oriented with the opposite parity (that of ``n + 1``),
and the commands translate between the two for you.
"""

import argparse
import json
import sys
from fractions import Fraction

from . import braid, chen, link, phi as phimod
from .diagram import Parity, load_any, to_dot
from .errors import DiagramError, UsageError
from .serialize import element_to_json, elements_from_json, key_to_json


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}", path=path) from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc.msg}", path=path,
                         line=exc.lineno) from None


def _frac(c):
    return str(Fraction(c))


def _emit(args, payload, human):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print(human)


# ---------------------------------------------------------------- commands


def cmd_enumerate(args):
    p = Parity.parse(args.parity)
    if args.species == "braid":
        keys = braid.enumerate_D(args.m, args.order, args.defect, p,
                                 allow_vacuum=args.allow_vacuum)
        basis = [key_to_json(k, p) for k in keys]
    else:
        if args.allow_vacuum:
            raise UsageError("--allow-vacuum applies to braid diagrams only")
        keys = link.enumerate_LD(args.m, args.order, args.defect, p.flip(),
                                 forest_only=args.forest)
        basis = [key_to_json(k, p.flip()) for k in keys]
    payload = {"species": args.species, "m": args.m, "order": args.order,
               "defect": args.defect, "parity": p.name.lower(), "forest": args.forest,
               "count": len(basis), "basis": basis}
    lines = [f"{args.species} diagrams, m={args.m}, order={args.order}, "
             f"defect={args.defect}: {len(basis)}"]
    for i, b in enumerate(basis):
        extra = f" strands={b['strands']}" if "strands" in b else ""
        lines.append(f"  [{i}] free={b['free']}{extra} edges={b['edges']}")
    _emit(args, payload, "\n".join(lines))


def _apply(species, x, p):
    if species == "braid":
        return "braid", braid.differential_D(x, p), p
    if species == "link":
        return "link", link.differential_LD(x, p.flip()), p.flip()
    return "bar", braid.bar_differential(x, p), p


def cmd_diff(args):
    p = Parity.parse(args.parity)
    results = []
    for species, x in elements_from_json(_read_json(args.input), p):
        sp, dx, dp = _apply(species, x, p)
        results.append(element_to_json(dx, sp, dp))
    lines = [f"element {i}: {len(r['terms'])} terms in the differential"
             for i, r in enumerate(results)]
    _emit(args, {"results": results}, "\n".join(lines))


def cmd_cohomology(args):
    p = Parity.parse(args.parity)
    if args.complex == "bar":
        dim = braid.bar_cohomology_dim(args.m, args.order, args.defect, p)
    else:
        dim = braid.D_cohomology_dim(args.m, args.order, args.defect, p)
    payload = {"complex": args.complex, "m": args.m, "order": args.order,
               "defect": args.defect, "parity": p.name.lower(), "dim": dim}
    _emit(args, payload, f"dim H^({args.order},{args.defect}) of the {args.complex} "
                         f"complex, m={args.m}: {dim}")


def cmd_relations(args):
    p = Parity.parse(args.parity)
    dim, basis = braid.chord_relation_kernel(args.m, args.chords, p)
    payload = {"m": args.m, "chords": args.chords, "parity": p.name.lower(),
               "dim": dim, "basis": [element_to_json(x, "bar", p) for x in basis]}
    lines = [f"4T + shuffle kernel, m={args.m}, {args.chords} chords: dim {dim}"]
    for i, x in enumerate(basis):
        terms = " ".join(f"{_frac(c):>5} {_word_str(w)}" for w, c in x.items())
        lines.append(f"  [{i}] {terms}")
    _emit(args, payload, "\n".join(lines))


def _word_str(word):
    parts = []
    for k in word:
        pairs = braid.pairs_of_word((k,))
        parts.append(f"G{pairs[0][0]}{pairs[0][1]}" if pairs else f"<{k[2]}f,{len(k[3])}e>")
    return "[" + "|".join(parts) + "]"


def cmd_phi(args):
    p = Parity.parse(args.parity)
    results = []
    for species, x in elements_from_json(_read_json(args.input), p):
        if species != "link":
            raise UsageError("phi takes link diagrams", species=species)
        results.append(element_to_json(phimod.phi(x, p.flip()), "bar", p))
    lines = []
    for i, r in enumerate(results):
        lines.append(f"element {i}: {len(r['terms'])} bar words")
        for t in r["terms"]:
            lines.append(f"  {t['coeff']:>6} word of length {len(t['word'])}")
    _emit(args, {"results": results}, "\n".join(lines))


def cmd_verify(args):
    p = Parity.parse(args.parity)
    results = []
    for species, x in elements_from_json(_read_json(args.input), p):
        if species == "braid":
            # a braid diagram is read as a one-letter bar word
            x = {(k,): c for k, c in x.items()}
            species = "bar"
        sp, dx, dp = _apply(species, x, p)
        results.append({"closed": not dx, "witness": element_to_json(dx, sp, dp)})
    lines = [f"element {i}: {'closed' if r['closed'] else 'NOT closed'}"
             for i, r in enumerate(results)]
    _emit(args, {"results": results}, "\n".join(lines))


def cmd_chen(args):
    even = Parity.EVEN
    elems = elements_from_json(_read_json(args.cocycle), even)
    if len(elems) != 1 or elems[0][0] not in ("bar", "braid"):
        raise UsageError("--cocycle must hold one bar element")
    species, x = elems[0]
    if species == "braid":
        x = {(k,): c for k, c in x.items()}
    if args.loop:
        word = None
        loop = chen.loop_from_json(_read_json(args.loop))
    else:
        word = chen.parse_braid(args.braid, m=args.m)
        loop = chen.braid_to_loop(word, samples_per_letter=args.samples)
    value, bound = chen.evaluate_chord_cocycle(x, loop, args.tol)
    payload = {"value": value, "err_bound": bound}
    if word is not None:
        payload["braid"] = str(word)
    lines = [f"value {value:.10f}  (err_bound {bound:.2e})"]
    if word is not None and braid.in_relation_kernel(x, even) and x:
        k = len(next(iter(x)))
        oracle = chen.pair_cocycle_expansion(x, chen.braid_expansion(word, k), even)
        payload["expansion_oracle"] = str(oracle)
        lines.append(f"expansion oracle {oracle}")
    _emit(args, payload, "\n".join(lines))


def cmd_expand(args):
    t = chen.braid_expansion(chen.parse_braid(args.braid), args.maxdeg)
    payload = {"braid": args.braid, "maxdeg": args.maxdeg, "terms": chen.tensor_to_json(t)}
    lines = [f"{e['coeff']:>8}  {' '.join(e['word']) or '1'}" for e in payload["terms"]]
    _emit(args, payload, "\n".join(lines))


def cmd_export_dot(args):
    raw = _read_json(args.input)
    items = raw.get("basis", [raw]) if isinstance(raw, dict) else raw
    out = []
    for r in items:
        if "terms" in r:
            for t in r["terms"]:
                for d in t.get("word", [t.get("diagram")]):
                    out.append(to_dot(load_any(d)))
        else:
            out.append(to_dot(load_any(r)))
    print("\n\n".join(out))


def cmd_mu123(args):
    p = Parity.parse(args.parity)
    x, c = braid.mu123(p)
    if args.chords_only:
        x = braid.chord_part(x)
    payload = element_to_json(x, "bar", p)
    payload["tripod_coefficient"] = str(c)
    if args.json or args.chords_only:
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(f"{_frac(cf):>5} {_word_str(w)}" for w, cf in x.items()))


# ----------------------------------------------------------------- parsing


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    parity = _Parser(add_help=False)
    parity.add_argument("--parity", required=True, choices=["even", "odd"],
                        help="parity of the configuration dimension n")

    ap = _Parser(prog="diagcomplex", parents=[common],
                 description="Diagram complexes for braids and long links.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("enumerate", parents=[common, parity], help="list a basis")
    s.add_argument("--species", choices=["braid", "link"], default="braid")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--defect", type=int, required=True)
    s.add_argument("--forest", action="store_true", help="link forests only")
    s.add_argument("--allow-vacuum", action="store_true",
                   help="keep components without segment vertices")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("diff", parents=[common, parity], help="apply the differential")
    s.add_argument("--in", dest="input", required=True)
    s.set_defaults(func=cmd_diff)

    s = sub.add_parser("cohomology", parents=[common, parity], help="cohomology dimension")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--defect", type=int, required=True)
    s.add_argument("--complex", choices=["bar", "braid"], default="bar")
    s.set_defaults(func=cmd_cohomology)

    s = sub.add_parser("relations", parents=[common, parity], help="4T + shuffle kernel")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--chords", type=int, required=True)
    s.set_defaults(func=cmd_relations)

    s = sub.add_parser("phi", parents=[common, parity], help="link diagrams to bar words")
    s.add_argument("--in", dest="input", required=True)
    s.set_defaults(func=cmd_phi)

    s = sub.add_parser("verify-cocycle", parents=[common, parity], help="check closedness")
    s.add_argument("--in", dest="input", required=True)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("chen", parents=[common], help="iterated integral on a braid loop")
    s.add_argument("--cocycle", required=True)
    src = s.add_mutually_exclusive_group(required=True)
    src.add_argument("--braid", help='pure braid word such as "A12 A23 a12 a23"')
    src.add_argument("--loop", help="JSON file with one configuration per time step")
    s.add_argument("--tol", type=float, default=1e-6)
    s.add_argument("--m", type=int, default=None)
    s.add_argument("--samples", type=int, default=32)
    s.set_defaults(func=cmd_chen)

    s = sub.add_parser("expand", parents=[common], help="truncated exponential expansion")
    s.add_argument("--braid", required=True)
    s.add_argument("--maxdeg", type=int, required=True)
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("export-dot", parents=[common], help="Graphviz output")
    s.add_argument("--in", dest="input", required=True)
    s.set_defaults(func=cmd_export_dot)

    s = sub.add_parser("mu123", parents=[common, parity], help="the triple linking cocycle")
    s.add_argument("--chords-only", action="store_true")
    s.set_defaults(func=cmd_mu123)
    return ap


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        args.func(args)
    except DiagramError as exc:
        print(json.dumps(exc.to_dict()))
        return 2
    except (KeyError, TypeError, ValueError) as exc:
        print(json.dumps({"error": "BadInput", "message": str(exc), "details": {}}))
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
