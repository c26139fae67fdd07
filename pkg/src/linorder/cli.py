"""Command-line front end.

Exit codes: 0 on success, 1 on domain errors (an error object is printed as
JSON on stdout), 2 on usage errors including malformed terms.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from decimal import Decimal, localcontext
from fractions import Fraction
from itertools import islice
from pathlib import Path

from . import __version__
from .analysis import (
    canonical_dense, classify, is_separable, jump_relations, jumps, sided_dense,
)
from .dense import OmitSet, check_dense_sampled, finite_set
from .elements import (
    bounds, compare, element_at, enumerate_elems, format_elem, index_of, neighbor,
    parse_elem, random_element, require_concrete,
)
from .embed import (
    certified_compare, embed_rationals, embed_to_reals, jump_bit, jump_rational, naive_e1,
    universal_embed,
)
from .errors import OrderError, TermSyntaxError
from .fixture import collision_fixture
from .homog import Q2, PartialMap, extend_to_automorphism, quotient_map
from .terms import GRAMMAR, format_term, is_symbolic, parse_term

ELEMENT_SYNTAX = """\
elements: fin/w 'k'; Z signed 'k'; w* '-k'; Q 'p/q' or 'k'; sum 'i:inner';
          doubling 'inner.0' / 'inner.1'; write --element=-1/2 for text starting with '-'"""
DENSE_SYNTAX = "dense sets: canonical | left | right | omit:e1,e2,... | only:e1,e2,..."


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def exact_decimal(q: Fraction, digits: int = 40) -> str:
    """Exact decimal text when the expansion terminates, else ``digits`` digits and '...'."""
    den = q.denominator
    for p in (2, 5):
        while den % p == 0:
            den //= p
    with localcontext() as ctx:
        if den == 1:
            ctx.prec = len(str(abs(q.numerator))) + len(str(q.denominator)) * 2 + 2
            text = format(Decimal(q.numerator) / Decimal(q.denominator), "f")
            return text
        ctx.prec = digits
        return format(Decimal(q.numerator) / Decimal(q.denominator), "f") + "..."


def _frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit JSON")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="seed for all sampling")

    p = _Parser(prog="linorder", description="Classify and embed linear orders given as terms.",
                epilog=f"term grammar:\n{GRAMMAR}\n{ELEMENT_SYNTAX}",
                formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.add_argument("--seed", type=int, default=0, help="seed for all sampling")
    p.add_argument("--version", action="version", version=f"linorder {__version__}")
    sub = p.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    c = sub.add_parser("classify", parents=[common], help="separability, jumps, embeddability")
    c.add_argument("term")

    for name, what in (("enumerate", "elements"), ("jumps", "jumps")):
        c = sub.add_parser(name, parents=[common], help=f"first COUNT {what}")
        c.add_argument("term")
        c.add_argument("--count", type=int, required=True)

    c = sub.add_parser("element", parents=[common],
                       help="index, neighbours, jump relations and membership of one element")
    c.add_argument("term")
    c.add_argument("--element", required=True)
    c.add_argument("--other", help="second element to compare with")
    c.add_argument("--dense", default=None, help=DENSE_SYNTAX)

    c = sub.add_parser("embed", parents=[common], help="image of one element")
    c.add_argument("term")
    c.add_argument("--target", choices=("q", "r2", "r", "e1"), default="r2",
                   help="q: back-and-forth into Q; r2: weighted sum into R x 2; "
                        "r: into R; e1: supremum map over a back-and-forth i")
    c.add_argument("--element", required=True)
    c.add_argument("--precision", type=int, default=10)
    c.add_argument("--stage", type=int, default=64, help="members of D used by e1")
    c.add_argument("--dense", default="canonical", help=DENSE_SYNTAX)
    c.add_argument("--budget", type=int, default=2000)

    c = sub.add_parser("homog-extend", parents=[common],
                       help="extend a partial map on Q*2 to an automorphism")
    c.add_argument("--map-file", type=Path)
    c.add_argument("--pair", action="append", default=[], help="'src -> dst'")
    c.add_argument("--probe", action="append", default=[], help="element of Q*2")

    c = sub.add_parser("verify", parents=[common], help="run a sampled property suite")
    c.add_argument("term")
    c.add_argument("--suite", required=True,
                   choices=("dense", "left", "right", "embed", "reals", "jumps"))
    c.add_argument("--count", type=int, default=200)
    c.add_argument("--budget", type=int, default=2000)
    c.add_argument("--dense", default=None, help=DENSE_SYNTAX)

    c = sub.add_parser("demo-collision", parents=[common],
                       help="naive supremum map versus weighted embedding")
    c.add_argument("--precision", type=int, default=16)
    return p


def _dense_from_spec(t, spec):
    if spec in (None, "canonical"):
        return canonical_dense(t)
    if spec in ("left", "right"):
        return sided_dense(t, spec)
    kind, _, rest = spec.partition(":")
    if kind not in ("omit", "only") or not rest:
        raise UsageError(f"bad dense spec {spec!r}; {DENSE_SYNTAX}")
    elems = [parse_elem(t, s) for s in rest.split(",")]
    return OmitSet(t, elems) if kind == "omit" else finite_set(t, elems)


def _cmd_classify(args, t):
    r = classify(t).to_json()
    b = bounds(t)
    r["min"] = None if b.min is None else format_elem(t, b.min)
    r["max"] = None if b.max is None else format_elem(t, b.max)
    human = [f"term: {format_term(t)}"] + [f"{k}: {str(v).lower()}" for k, v in r.items()]
    return r, human


def _cmd_enumerate(args, t):
    elems = [format_elem(t, e) for e in islice(enumerate_elems(t), args.count)]
    return {"term": format_term(t), "elements": elems}, [f"{n}\t{e}" for n, e in enumerate(elems)]


def _cmd_jumps(args, t):
    js = [[format_elem(t, j.left), format_elem(t, j.right)] for j in islice(jumps(t), args.count)]
    return {"term": format_term(t), "jumps": js}, [f"{a} < {b}" for a, b in js] or ["no jumps"]


def _cmd_element(args, t):
    x = parse_elem(t, args.element)
    out = {"term": format_term(t), "element": format_elem(t, x)}
    if args.dense or is_separable(t):
        d = _dense_from_spec(t, args.dense)
        out["dense_set"] = d.label
        out["in_dense_set"] = x in d
    if not is_symbolic(t):
        succ, pred = neighbor(t, x, "succ"), neighbor(t, x, "pred")
        rel = jump_relations(t, x)
        out.update(
            index=index_of(t, x),
            succ=None if succ is None else format_elem(t, succ),
            pred=None if pred is None else format_elem(t, pred),
            in_J_left=rel.in_J_left, in_J_right=rel.in_J_right,
            jump_bit=jump_bit(t, d, x),
        )
    if args.other is not None:
        y = parse_elem(t, args.other)
        out["other"] = format_elem(t, y)
        out["compare"] = compare(t, x, y).name
        if not is_symbolic(t):
            out["J_related"] = jump_relations(t, x, y).J_related
    return out, [f"{k}: {_human(v)}" for k, v in out.items()]


def _human(v):
    if v is None:
        return "none"
    return str(v).lower() if isinstance(v, bool) else str(v)


def _cmd_embed(args, t):
    k = args.precision
    if args.target == "q":
        require_concrete(t)
        x = parse_elem(t, args.element)
        n = index_of(t, x)
        emb = embed_rationals(t, (element_at(t, m) for m in range(n + 1)))
        out = {"term": format_term(t), "element": format_elem(t, x), "target": "q",
               "image": _frac(emb[x]), "placed": len(emb)}
        placed = "1 element" if n == 0 else f"{n + 1} elements"
        return out, [f"{out['element']} -> {out['image']} (after placing {placed})"]
    if args.target == "e1":
        require_concrete(t)
        x = parse_elem(t, args.element)
        dense = _dense_from_spec(t, args.dense).with_endpoints()
        i = embed_rationals(t, islice(dense, args.stage))
        v = naive_e1(t, dense, i, x, args.stage)
        bit = jump_bit(t, dense, x)
        out = {"term": format_term(t), "element": format_elem(t, x), "target": "e1",
               "stage": args.stage, "value": _frac(v), "bit": bit}
        return out, [f"{out['element']} -> ({out['value']}, {bit}) at stage {args.stage}"]
    if args.target == "r2":
        require_concrete(t)
        emb = universal_embed(t, _dense_from_spec(t, args.dense), budget=args.budget,
                              seed=args.seed)
    else:
        emb = embed_to_reals(t, budget=args.budget, seed=args.seed)
    x = parse_elem(t, args.element)
    out = {"term": format_term(t), "element": format_elem(t, x), "target": args.target}
    out.update(emb(x).to_json(k))
    bit = f", bit {out['bit']}" if args.target == "r2" else ""
    out["density"] = emb.evidence.to_json(t)
    text = exact_decimal(Fraction(out["lower"]))
    return out, [f"{out['element']} -> {text} +-2^-{k}{bit}"]


def _cmd_homog(args, t=None):
    text = args.map_file.read_text() if args.map_file else ""
    text += "".join(p + "\n" for p in args.pair)
    pm = PartialMap.parse(text)
    auto = extend_to_automorphism(pm)
    probes = []
    for s in args.probe:
        x = parse_elem(Q2, s)
        y = auto.apply(x, "fwd")
        probes.append({"element": format_elem(Q2, x), "image": format_elem(Q2, y),
                       "inverse": format_elem(Q2, auto.apply(x, "inv")),
                       "class": _frac(quotient_map(x)), "image_class": _frac(quotient_map(y))})
    out = {"pairs": len(pm.pairs), "automorphism": auto.to_json(), "probes": probes}
    points = out["automorphism"]["control_points"]
    human = ["control points: " + (", ".join(f"({a}, {b})" for a, b in points) or "none (identity)"),
             "slopes: " + " ".join(out["automorphism"]["slopes"])]
    human += [f"{p['element']} -> {p['image']}   (inverse: {p['inverse']}; "
              f"class {p['class']} -> {p['image_class']})" for p in probes]
    return out, human


def _cmd_verify(args, t):
    rng = random.Random(args.seed)
    out = {"term": format_term(t), "suite": args.suite, "seed": args.seed}
    if args.suite in ("dense", "left", "right"):
        spec = args.dense or ("canonical" if args.suite == "dense" else args.suite)
        d = _dense_from_spec(t, spec)
        rep = check_dense_sampled(t, d, args.count, args.budget, args.suite, args.seed)
        out.update(rep.to_json(t))
        out["dense_set"] = d.label
        passed = rep.passed
    elif args.suite in ("embed", "reals"):
        if args.suite == "embed":
            emb = universal_embed(t, _dense_from_spec(t, args.dense), budget=args.budget,
                                  seed=args.seed)
        else:
            emb = embed_to_reals(t, budget=args.budget, seed=args.seed)
        failures = []
        for _ in range(args.count):
            x, y = random_element(t, rng), random_element(t, rng)
            c = certified_compare(t, emb, x, y)
            if c.order != compare(t, x, y):
                failures.append([format_elem(t, x), format_elem(t, y)])
        out.update(pairs_checked=args.count, failures=failures)
        passed = not failures
    else:
        emb = embed_to_reals(t, budget=args.budget, seed=args.seed)
        witnesses = [jump_rational(t, j, emb) for j in islice(jumps(t), args.count)]
        out.update(jumps_checked=len(witnesses), distinct=len(set(witnesses)))
        passed = len(set(witnesses)) == len(witnesses)
    out["passed"] = passed
    return out, [f"{k}: {v}" for k, v in out.items()]


def _cmd_collision(args, t=None):
    rec = collision_fixture(args.precision)
    out = rec.to_json()
    human = [
        f"order {out['term']}, x = {out['x']}, b = {out['b']}, D = {out['D']}",
        f"D density check: {'pass' if rec.density.passed else 'FAIL'} ({rec.density.note})",
        "naive sup map at x, by stage: "
        + ", ".join(f"{n}: {v}" for n, v in out["naive_x_stages"]),
        f"naive e(x) = ({out['naive_x']['real']}, {out['naive_x']['bit']}), "
        f"naive e(b) = ({out['naive_b']['real']}, {out['naive_b']['bit']}), "
        f"collision: {str(rec.naive_collision).lower()}",
        f"weighted embedding: x < b at stage {rec.robust.stage} with gap {out['robust_compare']['gap']}, "
        f"separated: {str(rec.robust_separated).lower()}",
    ]
    return out, human


_COMMANDS = {
    "classify": _cmd_classify, "enumerate": _cmd_enumerate, "jumps": _cmd_jumps,
    "element": _cmd_element, "embed": _cmd_embed, "homog-extend": _cmd_homog, "verify": _cmd_verify,
    "demo-collision": _cmd_collision,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "count", 1) is not None and getattr(args, "count", 1) < 0:
            raise UsageError("--count must be non-negative")
        t = parse_term(args.term) if hasattr(args, "term") else None
        out, human = _COMMANDS[args.command](args, t)
    except (UsageError, TermSyntaxError) as exc:
        print(f"usage error: {exc}", file=stderr)
        print(parser.format_usage().rstrip(), file=stderr)
        print(f"term grammar:\n{GRAMMAR}\n{ELEMENT_SYNTAX}", file=stderr)
        return 2
    except OrderError as exc:
        print(json.dumps(exc.to_json(), sort_keys=True), file=stdout)
        return 1
    if args.json:
        print(json.dumps(out, sort_keys=True, indent=2), file=stdout)
    else:
        print("\n".join(human), file=stdout)
    if args.command == "verify" and not out["passed"]:
        return 1
    return 0


def main():
    sys.exit(run())
