"""Command-line front end.

Exit codes: 0 holds/true/sat, 1 fails/false/unsat/countermodel, 2 usage or
format error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import lifting
from .lifting import LiftVariant
from .logic import KLM_RULES, check_klm, evaluate
from .model import dump_document, load_structure, validate_structure
from .relations import (
    classify_order,
    has_union_property,
    is_modular,
    is_orderly,
    is_qualitative,
    lift_to_sets,
)
from .representation import (
    ConstructionError,
    construct_total,
    load_algebra,
    search_partial,
)
from .search import (
    SCHEMAS,
    PRINTED_L7,
    SearchBounds,
    check_validity,
    mine_schema,
    search_model,
    soundness_fuzz,
)
from .syntax import atoms, parse_formula, parse_prop, print_formula

OK, FAIL, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read_json(path: str):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _model(path: str, close: bool = True):
    return load_structure(_read_json(path), close=close)


def _dump(doc) -> str:
    return dump_document(doc)


def _verdict(flag: bool) -> int:
    print("true" if flag else "false")
    return OK if flag else FAIL


def cmd_eval(args) -> int:
    M = _model(args.model)
    f = parse_formula(args.formula, M.vocabulary)
    return _verdict(evaluate(M, f, args.conditional))


def cmd_lift(args) -> int:
    M = _model(args.model)
    U = M.extension(parse_prop(args.left, M.vocabulary))
    V = M.extension(parse_prop(args.right, M.vocabulary))
    return _verdict(lifting.compare(M, args.rel, U, V))


_EXPECTED = {
    LiftVariant.GEQ_STAR: ("partial_preorder", "orderly", "union"),
    LiftVariant.SUCC_PRIME: ("strict", "orderly"),
    LiftVariant.SUCC_STAR: ("strict", "orderly", "qualitative"),
}


def property_flags(M, variant) -> dict[str, bool]:
    R = lift_to_sets(M, variant)
    c = classify_order(R)
    return {
        "partial_preorder": c.is_partial_preorder,
        "total_preorder": c.is_total_preorder,
        "strict": c.is_strict_partial_order,
        "orderly": is_orderly(R),
        "union": has_union_property(R),
        "qualitative": is_qualitative(R),
        "modular": is_modular(R),
    }


def cmd_props(args) -> int:
    M = _model(args.model)
    variants = [LiftVariant(args.rel)] if args.rel else list(LiftVariant)
    ok = True
    for v in variants:
        flags = property_flags(M, v)
        shown = " ".join(f"{k}={'yes' if flags[k] else 'no'}" for k in flags)
        print(f"{v.value}: {shown}")
        ok &= all(flags[k] for k in _EXPECTED.get(v, ()))
    return OK if ok else FAIL


def cmd_check_model(args) -> int:
    M = _model(args.model, close=False)
    report = validate_structure(M)
    if not report:
        print("ok")
        return OK
    for line in report:
        print(line)
    return FAIL


def _bounds(args, f) -> SearchBounds:
    vocab = args.vocab.split(",") if args.vocab else sorted(atoms(f))
    limits = []
    for item in args.limit or ():
        text, _, count = item.rpartition(":")
        if not text or not count.isdigit():
            raise UsageError(f"--limit expects FORMULA:N, got {item!r}")
        limits.append((parse_prop(text, vocab), int(count)))
    return SearchBounds(
        args.max_worlds, tuple(vocab), args.order_class, args.one_per_assignment, tuple(limits)
    )


def cmd_sat(args) -> int:
    f = parse_formula(args.formula)
    b = _bounds(args, f)
    v = search_model(f, b, args.conditional)
    print("sat" if v.status == "sat" else "unsat")
    print(f"conclusive: {'yes' if v.conclusive else 'no'}")
    print(f"structures checked: {v.checked}")
    if v.witness is not None:
        print(_dump(v.witness.to_document()))
        return OK
    return FAIL


def cmd_valid(args) -> int:
    f = parse_formula(args.formula)
    b = _bounds(args, f)
    v = check_validity(f, b, args.conditional)
    print("valid" if v.status == "valid_up_to_bound" else "countermodel")
    print(f"conclusive: {'yes' if v.conclusive else 'no'}")
    print(f"structures checked: {v.checked}")
    if v.witness is not None:
        print(_dump(v.witness.to_document()))
        return FAIL
    return OK


def cmd_mine(args) -> int:
    vocab = tuple(args.vocab.split(",")) if args.vocab else ("p", "q")
    if args.fuzz:
        report = soundness_fuzz(
            args.schema, vocab, args.max_worlds, args.fuzz, args.seed, args.order_class
        )
        counts = report.by_schema()
        print(f"seed: {report.seed} trials: {report.trials}")
        for s in args.schema:
            print(f"{s}: {report.per_schema[s]} instances, {counts[s]} violations")
        for sid, M, inst in report.violations[:1]:
            print(f"first violation ({sid}): {print_formula(inst)}")
            print(_dump(M.to_document()))
        return FAIL if report.violations else OK
    b = SearchBounds(args.max_worlds, vocab, args.order_class)
    status = OK
    for s in args.schema:
        hit = mine_schema(s, b)
        if hit is None:
            print(f"{s}: no violation within bounds")
            continue
        status = FAIL
        print(f"{s}: violated by {print_formula(hit.instance)}")
        print(_dump(hit.structure.to_document()))
    return status


def cmd_repr(args) -> int:
    algebra, R = load_algebra(_read_json(args.algebra))
    S = R.on(algebra)
    if classify_order(S).is_total_preorder:
        try:
            order = construct_total(algebra, R)
        except ConstructionError as e:
            print(f"construction failed: {e}")
            return FAIL
        ids = algebra.world_ids()
        print("total preorder (>=):")
        for i, j in order.pairs():
            if i != j:
                print(f"  {ids[i]} >= {ids[j]}")
        return OK
    w = search_partial(algebra, R, args.dup)
    if w is None:
        print("NONE within bounds")
        return FAIL
    sizes = ", ".join(f"{a}:{s}" for a, s in w.algebra.atoms)
    print(f"atoms: {sizes}")
    print("strict order (>):")
    for a, b in w.pairs():
        print(f"  {a} > {b}")
    if not w.pairs():
        print("  (none)")
    return OK


def cmd_klm(args) -> int:
    M = _model(args.model)
    report = check_klm(M)
    for rule in KLM_RULES:
        v = report.rules[rule]
        if v.holds:
            print(f"{rule}: holds")
        else:
            print(f"{rule}: fails at {', '.join(print_formula(f) for f in v.witness)}")
    return OK if report.all_hold else FAIL


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="relik", description="Relative likelihood over preferential structures.")
    p.add_argument("--seed", type=int, default=0)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def model_arg(sp):
        sp.add_argument("--model", required=True)

    def cond_arg(sp):
        sp.add_argument("--conditional", choices=["min", "gt"], default="min")

    sp = sub.add_parser("eval", help="evaluate a formula in a model")
    model_arg(sp)
    sp.add_argument("--formula", required=True)
    cond_arg(sp)
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("lift", help="compare two extensions under a lifted order")
    model_arg(sp)
    sp.add_argument("--rel", required=True, choices=[v.value for v in LiftVariant])
    sp.add_argument("--left", required=True)
    sp.add_argument("--right", required=True)
    sp.set_defaults(func=cmd_lift)

    sp = sub.add_parser("props", help="properties of the lifted set relations")
    model_arg(sp)
    sp.add_argument("--rel", choices=[v.value for v in LiftVariant])
    sp.set_defaults(func=cmd_props)

    sp = sub.add_parser("check-model", help="validate a model document without closing it")
    model_arg(sp)
    sp.set_defaults(func=cmd_check_model)

    for name, func in (("sat", cmd_sat), ("valid", cmd_valid)):
        sp = sub.add_parser(name, help=f"bounded {'satisfiability' if name == 'sat' else 'validity'}")
        sp.add_argument("--formula", required=True)
        sp.add_argument("--max-worlds", type=int, required=True)
        sp.add_argument("--class", dest="order_class", choices=["partial", "total"], default="partial")
        sp.add_argument("--one-per-assignment", action="store_true")
        sp.add_argument("--vocab", help="comma-separated propositions (default: atoms of the formula)")
        sp.add_argument("--limit", action="append", metavar="FORMULA:N",
                        help="at most N worlds satisfy FORMULA (repeatable)")
        cond_arg(sp)
        sp.set_defaults(func=func)

    sp = sub.add_parser("mine", help="search for violations of axiom schemas")
    sp.add_argument("--schema", nargs="+", required=True,
                    choices=sorted(SCHEMAS) + [PRINTED_L7.id])
    sp.add_argument("--max-worlds", type=int, default=3)
    sp.add_argument("--class", dest="order_class", choices=["partial", "total"], default="partial")
    sp.add_argument("--vocab", help="comma-separated propositions (default: p,q)")
    sp.add_argument("--fuzz", type=int, metavar="TRIALS", help="random trials instead of exhaustive mining")
    sp.set_defaults(func=cmd_mine)

    sp = sub.add_parser("repr", help="realize an algebra relation by a world order")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--dup", type=int, default=0, help="extra worlds allowed by duplication")
    sp.set_defaults(func=cmd_repr)

    sp = sub.add_parser("klm", help="check the KLM rules for ~> in a model")
    model_arg(sp)
    sp.set_defaults(func=cmd_klm)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return USAGE
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
