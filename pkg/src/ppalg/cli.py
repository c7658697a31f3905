"""Command-line entry point.

Exit codes: 0 on success or all checks passing, 1 on verification failure,
2 on usage errors or malformed input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import stability as stab
from .errors import PpalgError, UsageError
from .fields import GF
from .quiver import parse_type, standard_extended_dynkin
from .rep import Representation
from .reflection import apply_word, compute_siw, reflect_minus, reflect_plus
from .verify import SUITE_NAMES, run_suite
from .weyl import (
    StabilityParameter,
    WeylGroup,
    chamber_label,
    chamber_of,
    finite_root_system,
)


def _load_rep(path: str) -> Representation:
    with open(path, "r", encoding="utf-8") as fh:
        return Representation.from_json(json.load(fh))


def _theta_from_args(args, d) -> StabilityParameter:
    if getattr(args, "theta", None):
        return StabilityParameter.parse(args.theta)
    if getattr(args, "theta_tail", None):
        tail = [Fraction(x) for x in args.theta_tail.split(",")]
        if len(tail) != len(d) - 1:
            raise UsageError("theta tail needs one entry per non-extending vertex")
        head = -sum((t * di for t, di in zip(tail, d[1:])), Fraction(0)) / d[0]
        return StabilityParameter([head] + tail)
    raise UsageError("provide --theta or --theta-tail")


def _parse_word(text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    return tuple(int(x) for x in text.split(","))


def _setup(type_text: str):
    tag, n = parse_type(type_text)
    return standard_extended_dynkin(tag, n)


def cmd_quiver(args) -> int:
    dq, d = _setup(args.type)
    if args.emit == "dot":
        print(dq.to_dot())
    else:
        payload = dq.to_json()
        payload["d"] = list(d)
        print(json.dumps(payload, sort_keys=True))
    return 0


def cmd_rep_check(args) -> int:
    rep = _load_rep(args.file)
    violated = rep.check_relations()
    if violated:
        print(f"violated vertices: {violated}")
        return 1
    print("ok")
    return 0


def cmd_reflect(args) -> int:
    rep = _load_rep(args.file)
    func = reflect_plus if args.dir == "plus" else reflect_minus
    res = func(args.vertex, rep)
    print(json.dumps({"defect": res.defect, "module": res.module.to_json()}, sort_keys=True))
    return 0


def cmd_apply(args) -> int:
    rep = _load_rep(args.file)
    theta = StabilityParameter.parse(args.theta)
    word = _parse_word(args.word)
    module, final_theta = apply_word(word, rep, theta)
    print(
        json.dumps(
            {"module": module.to_json(), "theta": final_theta.format()}, sort_keys=True
        )
    )
    return 0


def cmd_chamber(args) -> int:
    dq, d = _setup(args.type)
    rs = finite_root_system(dq, d)
    theta = _theta_from_args(args, d)
    word = chamber_of(rs, theta)
    # the descent word is a chamber invariant already; swap it for the
    # breadth-first canonical spelling only where the group is small
    if rs.rank <= 4:
        wg = WeylGroup(rs)
        word = wg.all_elements()[wg.matrix_of(word)]
    print(chamber_label(word))
    return 0


def cmd_siw(args) -> int:
    dq, d = _setup(args.type)
    wg = WeylGroup(finite_root_system(dq, d))
    field = GF(args.field)
    shifted = compute_siw(wg, _parse_word(args.word), args.simple, field)
    if args.emit == "json":
        print(json.dumps(shifted.to_json(), sort_keys=True))
    else:
        print(f"degree {shifted.degree}, dims {tuple(shifted.module.dims)}")
    return 0


def cmd_stability(args) -> int:
    rep = _load_rep(args.file)
    theta = StabilityParameter.parse(args.theta)
    verdict = stab.stability_verdict(rep, theta, budget=args.budget)
    if verdict.witness is not None:
        print(f"{verdict.status} witness={tuple(verdict.witness)}")
    else:
        print(verdict.status)
    return 0


def cmd_scan(args) -> int:
    dq, d = _setup(args.type)
    field = GF(args.field)
    theta = _theta_from_args(args, d)
    scan = stab.moduli_scan(dq, d, theta, field, budget=args.budget)
    if args.emit == "csv":
        sys.stdout.write(scan.to_csv())
    else:
        print(json.dumps(scan.to_json(), sort_keys=True))
    return 0


def cmd_verify(args) -> int:
    report = run_suite(args.suite, field_order=args.field, seed=args.seed)
    if args.emit == "json":
        print(json.dumps(report.to_json(), sort_keys=True))
    else:
        print(report.to_table())
    return 0 if report.all_pass else 1


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that accepts leading-minus parameter lists like -2,1,1."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?(,|$)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ppalg")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("quiver", help="emit a standard extended Dynkin double quiver")
    p.add_argument("--type", required=True)
    p.add_argument("--emit", choices=("json", "dot"), default="json")
    p.set_defaults(func=cmd_quiver)

    p = sub.add_parser("rep-check", help="check the preprojective relations of a module file")
    p.add_argument("file")
    p.set_defaults(func=cmd_rep_check)

    p = sub.add_parser("reflect", help="apply one reflection functor to a module file")
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("--dir", choices=("plus", "minus"), required=True)
    p.add_argument("file")
    p.set_defaults(func=cmd_reflect)

    p = sub.add_parser("apply", help="apply a word of reflection functors")
    p.add_argument("--word", required=True)
    p.add_argument("--theta", required=True)
    p.add_argument("file")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("chamber", help="chamber of a generic stability parameter")
    p.add_argument("--type", required=True)
    p.add_argument("--theta")
    p.add_argument("--theta-tail", dest="theta_tail")
    p.set_defaults(func=cmd_chamber)

    p = sub.add_parser("siw", help="shifted simple across a reduced word")
    p.add_argument("--type", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--simple", type=int, required=True)
    p.add_argument("--field", type=int, default=2)
    p.add_argument("--emit", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_siw)

    p = sub.add_parser("stability", help="stability verdict of a module file")
    p.add_argument("--theta", required=True)
    p.add_argument("--budget", type=int, default=stab.DEFAULT_SUBSPACE_BUDGET)
    p.add_argument("file")
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("scan", help="enumerate semistable thin classes over a finite field")
    p.add_argument("--type", required=True)
    p.add_argument("--field", type=int, required=True)
    p.add_argument("--theta")
    p.add_argument("--theta-tail", dest="theta_tail")
    p.add_argument("--budget", type=int, default=stab.DEFAULT_SCAN_BUDGET)
    p.add_argument("--emit", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, choices=SUITE_NAMES)
    p.add_argument("--field", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--emit", choices=("table", "json"), default="table")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (PpalgError, OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
