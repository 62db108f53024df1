"""Command-line front end.

Thin adapter over the library: loads groups/varieties/constructions, runs
checks, emits text or canonically-ordered JSON. Exit codes: 0 all verdicts
as asserted, 1 a property violated, 2 usage or budget error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import suite as suite_mod
from .config import ENV_CAP_BUDGET, ENV_CAP_ORDER
from .errors import BudgetError, VaritasError
from .groups import FiniteGroup, all_subgroups, classic_centralizer, generate
from .io import resolve_construction_ref, resolve_group_ref, resolve_variety_ref
from .freeprod import bounded_malnormal_check, free_probe, not_xt_witness
from .properties import (
    eval_universal_sentences,
    is_csx,
    is_xt,
    maximal_x_subgroups,
    verify_partition_count,
    x_centralizer,
    zero_divisor_scan,
)
from .varieties import builtin_variety, is_member
from .words import marginal_subgroup, parse_word, verbal_subgroup


def _labels(G: FiniteGroup, indices) -> list:
    return [G.label(i) for i in indices]


def _witness_labels(G: FiniteGroup, witness) -> dict:
    if witness is None:
        return None
    out = {}
    for key, value in witness.items():
        if isinstance(value, int):
            out[key] = G.label(value)
        elif isinstance(value, (tuple, list)):
            out[key] = [G.label(v) if isinstance(v, int) else v for v in value]
        else:
            out[key] = value
    return out


def emit_report(results: list, fmt: str) -> str:
    """Stable output: JSON gets sorted keys and canonical ordering so
    identical inputs produce byte-identical bytes."""
    if fmt == "json":
        return json.dumps(results, sort_keys=True, indent=2) + "\n"
    lines = []
    for entry in results:
        fields = [f"{key}={json.dumps(entry[key], sort_keys=True)}"
                  for key in sorted(entry)]
        lines.append("  ".join(fields))
    return "\n".join(lines) + ("\n" if lines else "")


def _print(args, results: list) -> None:
    sys.stdout.write(emit_report(results, args.output))


def _apply_caps(args) -> None:
    if getattr(args, "cap_order", None) is not None:
        os.environ[ENV_CAP_ORDER] = str(args.cap_order)
    if getattr(args, "cap_budget", None) is not None:
        os.environ[ENV_CAP_BUDGET] = str(args.cap_budget)


def cmd_check(args) -> int:
    G = resolve_group_ref(args.group)
    results = []
    if args.kind == "domain":
        methods = (
            ["definition", "normal-centralizer"]
            if args.method == "both"
            else [args.method or "definition"]
        )
        for method in methods:
            report = zero_divisor_scan(G, method)
            results.append(
                {
                    "check": "domain",
                    "group": G.name,
                    "variety": None,
                    "method": method,
                    "verdict": report.verdict,
                    "witness": _witness_labels(G, report.witness),
                    "stats": {"zero_divisors": _labels(G, report.zero_divisors)},
                }
            )
        _print(args, results)
        return 0
    X = resolve_variety_ref(args.variety)
    if args.kind == "member":
        verdict = is_member(G, X)
        witness = None
        if verdict.violated is not None:
            word, tup = verdict.violated
            witness = {"law": word.text(), "tuple": _labels(G, tup)}
        results.append(
            {
                "check": "member",
                "group": G.name,
                "variety": X.name,
                "method": "scan",
                "verdict": verdict.member,
                "witness": witness,
                "stats": {},
            }
        )
    else:
        checker = is_xt if args.kind == "xt" else is_csx
        default_methods = {
            "xt": ["direct", "centralizer"],
            "csx": ["direct", "condition"],
        }
        methods = (
            default_methods[args.kind]
            if args.method == "both"
            else [args.method or "direct"]
        )
        for method in methods:
            report = checker(G, X, method)
            results.append(
                {
                    "check": args.kind,
                    "group": G.name,
                    "variety": X.name,
                    "method": report.method,
                    "verdict": report.verdict,
                    "witness": _witness_labels(G, report.witness),
                    "stats": report.stats,
                }
            )
    _print(args, results)
    return 0


def cmd_centralizer(args) -> int:
    G = resolve_group_ref(args.group)
    a = G.element(args.element)
    if args.variety is None:
        H = classic_centralizer(G, a)
        entry = {
            "check": "centralizer",
            "group": G.name,
            "variety": None,
            "method": "classic",
            "verdict": True,
            "witness": None,
            "stats": {"element": G.label(a), "members": list(H.labels())},
        }
    else:
        X = resolve_variety_ref(args.variety)
        diag = x_centralizer(G, a, X)
        entry = {
            "check": "centralizer",
            "group": G.name,
            "variety": X.name,
            "method": "x-centralizer",
            "verdict": diag.closed and diag.generated_in_x,
            "witness": None,
            "stats": {
                "element": G.label(a),
                "members": _labels(G, diag.elements),
                "closed": diag.closed,
                "generated_in_x": diag.generated_in_x,
            },
        }
    _print(args, [entry])
    return 0


def cmd_subgroups(args) -> int:
    G = resolve_group_ref(args.group)
    if args.maximal:
        if args.variety is None:
            raise VaritasError("--maximal requires --variety")
        X = resolve_variety_ref(args.variety)
        subs = maximal_x_subgroups(G, X)
        vname = X.name
    else:
        subs = all_subgroups(G)
        vname = None
    results = [
        {
            "check": "subgroups",
            "group": G.name,
            "variety": vname,
            "method": "maximal" if args.maximal else "all",
            "verdict": True,
            "witness": None,
            "stats": {
                "members": list(H.labels()),
                "normal": H.normal,
                "order": len(H),
            },
        }
        for H in subs
    ]
    _print(args, results)
    return 0


def _word_set(args):
    if args.variety is not None:
        return resolve_variety_ref(args.variety).basis, args.variety
    if args.word:
        return tuple(parse_word(t) for t in args.word), None
    raise VaritasError("need --variety or at least one --word")


def cmd_verbal(args) -> int:
    G = resolve_group_ref(args.group)
    words, vname = _word_set(args)
    H = verbal_subgroup(G, words)
    _print(
        args,
        [
            {
                "check": "verbal",
                "group": G.name,
                "variety": vname.split(":", 1)[-1] if vname else None,
                "method": "scan",
                "verdict": True,
                "witness": None,
                "stats": {"members": list(H.labels()), "order": len(H)},
            }
        ],
    )
    return 0


def cmd_marginal(args) -> int:
    G = resolve_group_ref(args.group)
    words, vname = _word_set(args)
    H = marginal_subgroup(G, words)
    _print(
        args,
        [
            {
                "check": "marginal",
                "group": G.name,
                "variety": vname.split(":", 1)[-1] if vname else None,
                "method": "scan",
                "verdict": True,
                "witness": None,
                "stats": {"members": list(H.labels()), "order": len(H)},
            }
        ],
    )
    return 0


def cmd_sentences(args) -> int:
    G = resolve_group_ref(args.group)
    X = resolve_variety_ref(args.variety)
    report = eval_universal_sentences(G, X, args.nmax)
    _print(
        args,
        [
            {
                "check": "sentences",
                "group": G.name,
                "variety": X.name,
                "method": "scan",
                "verdict": report.sub_x and report.mal_x and all(report.xn.values()),
                "witness": None,
                "stats": {
                    "sub_x": report.sub_x,
                    "mal_x": report.mal_x,
                    "xn": {str(n): v for n, v in report.xn.items()},
                },
            }
        ],
    )
    return 0


def cmd_partition_count(args) -> int:
    G = resolve_group_ref(args.group)
    reps = []
    for spec in args.rep:
        seeds = [G.element(tok.strip()) for tok in spec.split(",")]
        reps.append(generate(G, seeds))
    report = verify_partition_count(G, reps)
    _print(
        args,
        [
            {
                "check": "partition-count",
                "group": G.name,
                "variety": None,
                "method": "count",
                "verdict": report.partition_ok and report.count_identity_ok,
                "witness": None,
                "stats": {
                    "partition_ok": report.partition_ok,
                    "malnormal_ok": report.malnormal_ok,
                    "count_identity_ok": report.count_identity_ok,
                    "term_sum": report.term_sum,
                    "expected": report.expected,
                },
            }
        ],
    )
    return 0


def cmd_amalgam(args) -> int:
    K = resolve_construction_ref(args.construction)
    if args.action == "check-malnormal":
        members = None
        side = args.subgroup
        if side == "amalgamated":
            side = "A"
            members = K.im_a.members
        report = bounded_malnormal_check(K, side, args.len, members=members)
        witness = None
        if report.witness is not None:
            witness = {
                "conjugator": K.format(report.witness[0]),
                "element": K.format(report.witness[1]),
            }
        entry = {
            "check": "amalgam-malnormal",
            "group": K.name,
            "variety": None,
            "method": f"bounded:{args.len}",
            "verdict": report.witness is None,
            "witness": witness,
            "stats": {
                "ok_up_to": report.ok_up_to,
                "words_checked": report.words_checked,
                "subgroup": args.subgroup,
            },
        }
    else:
        X = resolve_variety_ref(args.variety)
        wit = not_xt_witness(K, X, args.depth)
        witness = None
        if wit.found:
            witness = {
                "tuple": [K.format(u) for u in wit.tuple_words],
                "value": K.format(wit.value),
            }
        entry = {
            "check": "amalgam-not-xt",
            "group": K.name,
            "variety": X.name,
            "method": f"depth:{args.depth}",
            "verdict": wit.found,
            "witness": witness,
            "stats": {
                "factor_a_in_x": wit.factor_a_in_x,
                "factor_b_in_x": wit.factor_b_in_x,
                "intersection_element": (
                    K.format(wit.intersection_element)
                    if wit.intersection_element
                    else None
                ),
            },
        }
    _print(args, [entry])
    return 0


def cmd_probe(args) -> int:
    K = resolve_construction_ref(args.construction)
    report = free_probe(K, K.parse(args.w1), K.parse(args.w2), args.len)
    entry = {
        "check": "probe-free",
        "group": K.name,
        "variety": None,
        "method": f"len:{args.len}",
        "verdict": report.witness is None,
        "witness": (
            None if report.witness is None else {"relation": report.witness.text()}
        ),
        "stats": {
            "no_relation_up_to": report.no_relation_up_to,
            "words_checked": report.words_checked,
        },
    }
    _print(args, [entry])
    return 0


def cmd_suite(args) -> int:
    names = args.only or None
    results = suite_mod.run_suite(names=names, jobs=args.jobs)
    entries = [r.as_report() for r in results]
    passed = sum(1 for r in results if r.passed)
    entries.append(
        {
            "check": "summary",
            "verdict": passed == len(results),
            "stats": {"passed": passed, "failed": len(results) - passed},
        }
    )
    _print(args, entries)
    return 0 if passed == len(results) else 1


def build_parser() -> argparse.ArgumentParser:
    # common flags are accepted both before and after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--output", choices=["text", "json"], default=argparse.SUPPRESS
    )
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS)
    common.add_argument("--cap-order", type=int, default=argparse.SUPPRESS)
    common.add_argument("--cap-budget", type=int, default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(
        prog="varitas",
        description="Verification toolkit for CSX- and XT-group theory on "
        "finite groups and bounded free constructions.",
    )
    parser.add_argument("--output", choices=["text", "json"], default="text")
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--cap-order", type=int, default=None)
    parser.add_argument("--cap-budget", type=int, default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="member / xt / csx / domain checks")
    p.add_argument("kind", choices=["member", "xt", "csx", "domain"])
    p.add_argument("--group", required=True)
    p.add_argument("--variety")
    p.add_argument("--method")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("centralizer", parents=[common], help="classic or X-centralizer of an element")
    p.add_argument("--group", required=True)
    p.add_argument("--element", required=True)
    p.add_argument("--variety", "--x", dest="variety")
    p.set_defaults(fn=cmd_centralizer)

    p = sub.add_parser("subgroups", parents=[common], help="subgroup lattice or maximal X-subgroups")
    p.add_argument("--group", required=True)
    p.add_argument("--maximal", action="store_true")
    p.add_argument("--variety")
    p.set_defaults(fn=cmd_subgroups)

    p = sub.add_parser("verbal", parents=[common], help="verbal subgroup of a word set")
    p.add_argument("--group", required=True)
    p.add_argument("--variety")
    p.add_argument("--word", action="append", default=[])
    p.set_defaults(fn=cmd_verbal)

    p = sub.add_parser("marginal", parents=[common], help="marginal subgroup of a word set")
    p.add_argument("--group", required=True)
    p.add_argument("--variety")
    p.add_argument("--word", action="append", default=[])
    p.set_defaults(fn=cmd_marginal)

    p = sub.add_parser("sentences", parents=[common], help="universal sentences Sub_X, Mal_X, X^n")
    p.add_argument("--group", required=True)
    p.add_argument("--variety", required=True)
    p.add_argument("--nmax", type=int, default=3)
    p.set_defaults(fn=cmd_sentences)

    p = sub.add_parser("partition-count", parents=[common], help="covering/counting identity")
    p.add_argument("--group", required=True)
    p.add_argument(
        "--rep",
        action="append",
        required=True,
        help="comma-separated generators of one representative subgroup",
    )
    p.set_defaults(fn=cmd_partition_count)

    p = sub.add_parser("amalgam", parents=[common], help="bounded amalgam verification")
    p.add_argument("action", choices=["check-malnormal", "not-xt-witness"])
    p.add_argument("--construction", required=True)
    p.add_argument("--subgroup", choices=["A", "B", "amalgamated"], default="A")
    p.add_argument("--len", type=int, default=4)
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--variety", default="builtin:metabelian")
    p.set_defaults(fn=cmd_amalgam)

    p = sub.add_parser("probe", parents=[common], help="free-subgroup relation probe")
    p.add_argument("target", choices=["free"])
    p.add_argument("--construction", required=True)
    p.add_argument("--w1", required=True)
    p.add_argument("--w2", required=True)
    p.add_argument("--len", type=int, default=10)
    p.set_defaults(fn=cmd_probe)

    p = sub.add_parser("suite", parents=[common], help="run the corpus verification suite")
    p.add_argument("--only", action="append", help="run only the named checks")
    p.set_defaults(fn=cmd_suite)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _apply_caps(args)
    try:
        return args.fn(args)
    except BudgetError as exc:
        print(f"budget error: {exc}", file=sys.stderr)
        return 2
    except VaritasError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
