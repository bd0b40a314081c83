"""Command-line interface: detect windows, complete tables, verify a
candidate generator, and synthesize test tables."""

from __future__ import annotations

import argparse
import json
import random
import sys

from .bipoly import parse_poly
from .gf import FieldError, field_for
from .inference import (STATUS_AMBIGUOUS, STATUS_BUDGET, STATUS_COMPLETED,
                        resolve)
from .oracle import random_instance
from .recovery import verify_afforded
from .tables import TableFormatError, detect_hyperbolic, format_table
from .validation import as_incomplete_table, resolve_point

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_UNDECIDED = 3


def _pair(text):
    parts = text.replace(",", " ").split()
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected two integers, got {text!r}")
    return (int(parts[0]), int(parts[1]))


def _add_common(p):
    p.add_argument("--modulus", help="field modulus (hex mask or coefficient list)")
    p.add_argument("--alpha1-exp", type=int, help="generator exponent of the first root")
    p.add_argument("--alpha2-exp", type=int, help="generator exponent of the second root")
    p.add_argument("--order", choices=["lex", "graded", "auto"], default="auto")
    p.add_argument("--tau", type=_pair, help="force a window offset, e.g. '0,1'")
    p.add_argument("--t", type=int, help="force the window amplitude parameter t")
    p.add_argument("--branch-budget", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", dest="json_path", metavar="PATH",
                   help="write the full report as JSON")


def _load(args):
    with open(args.table, "r", encoding="utf-8") as fh:
        text = fh.read()
    table = as_incomplete_table(text)
    if args.modulus is not None:
        table = as_incomplete_table(text,
                                    field=field_for(table.field.p,
                                                    table.field.spec.degree,
                                                    args.modulus))
    exps = None
    if args.alpha1_exp is not None or args.alpha2_exp is not None:
        if args.alpha1_exp is None or args.alpha2_exp is None:
            raise FieldError("both --alpha1-exp and --alpha2-exp are required")
        exps = (args.alpha1_exp, args.alpha2_exp)
    point = resolve_point(table, alpha_exps=exps)
    return table, point


def cmd_detect(args):
    table, _ = _load(args)
    found = detect_hyperbolic(table)
    for tau, t in found:
        print(f"tau=({tau[0]},{tau[1]}) t={t}")
    return EXIT_OK if found else EXIT_FAILED


def cmd_complete(args):
    table, point = _load(args)
    report = resolve(table, point=point, order=args.order, t=args.t,
                     tau=args.tau, branch_budget=args.branch_budget)
    if args.json_path:
        with open(args.json_path, "w", encoding="utf-8") as fh:
            fh.write(report.to_json())
    filled = len(table.hole_positions())
    summary = f"status={report.status}"
    if report.status == STATUS_COMPLETED:
        summary += (f" tau=({report.tau[0]},{report.tau[1]}) t={report.t}"
                    f" order={report.order} weight={len(report.support)}"
                    f" filled={filled}")
    print(summary)
    for w in report.warnings:
        print(f"warning: {w}", file=sys.stderr)
    if report.status == STATUS_COMPLETED:
        return EXIT_OK
    if report.status in (STATUS_AMBIGUOUS, STATUS_BUDGET):
        return EXIT_UNDECIDED
    return EXIT_FAILED


def cmd_verify(args):
    table, point = _load(args)
    generator = parse_poly(args.poly, table.field)
    tau = args.tau if args.tau is not None else (0, 0)
    ok = verify_afforded(table, generator, tau, point)
    print("afforded" if ok else "not afforded")
    return EXIT_OK if ok else EXIT_FAILED


def cmd_synth(args):
    field = field_for(args.p, args.m, args.modulus)
    from .tables import IncompleteTable  # shape check happens in resolve_point

    probe = IncompleteTable(field, (args.r1, args.r2),
                            [[field.zero()] * args.r2 for _ in range(args.r1)])
    exps = None
    if args.alpha1_exp is not None and args.alpha2_exp is not None:
        exps = (args.alpha1_exp, args.alpha2_exp)
    point = resolve_point(probe, alpha_exps=exps)
    rng = random.Random(args.seed)
    inst = random_instance(field, point, (args.r1, args.r2),
                           weight=args.weight, rng=rng, holes=args.holes)
    text = format_table(inst.table)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(text)
    truth = {"generator": str(inst.e), "tau": list(inst.tau),
             "holes": [list(h) for h in inst.holes],
             "alpha": list(point.exponents), "seed": args.seed}
    with open(args.out + ".truth.json", "w", encoding="utf-8") as fh:
        json.dump(truth, fh, indent=2)
    print(args.out)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="bms2d",
                                     description="Sparse-generator recovery and "
                                                 "completion of finite-field tables")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("detect", help="list fully known hyperbolic windows")
    p.add_argument("table")
    _add_common(p)
    p.set_defaults(fn=cmd_detect)

    p = sub.add_parser("complete", help="recover a generator and fill the table")
    p.add_argument("table")
    _add_common(p)
    p.set_defaults(fn=cmd_complete)

    p = sub.add_parser("verify", help="check a table against a generator")
    p.add_argument("table")
    p.add_argument("--poly", required=True, help="candidate generator polynomial")
    _add_common(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("synth", help="generate a random instance and its truth sidecar")
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--r1", type=int, default=5)
    p.add_argument("--r2", type=int, default=5)
    p.add_argument("--weight", type=int, default=1)
    p.add_argument("--holes", type=int, default=0)
    p.add_argument("--out", required=True)
    _add_common(p)
    p.set_defaults(fn=cmd_synth)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (TableFormatError, FieldError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
