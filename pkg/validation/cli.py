#!/usr/bin/env python3
"""
Command line entry point: ``hallgroups <subcommand> ...``.

Exit codes: 0 success, 1 domain error (HallGroupsError), 2 usage error.
"""

import argparse
import hashlib
import json
import logging
import sys
from typing import List, Optional

import pandas as pd
from colorama import Fore, Style

from core import __version__
from core.ball import word_norm
from core.d_functions import (FastGrowthD, FastGrowthDParams, check_separability_criteria,
                              d_function_from_config, period_mod, prime_function_from_config)
from core.errors import NOT_FOUND, HallGroupsError, PreconditionError, TheoryViolation
from core.hall_group import evaluate_text, project_to_lamplighter, solve_word_problem
from core.settings import get_settings
from core.specs import FREE, TRIVIAL, CyclicCenter, RelationCenter, SequenceParams
from core.words import parse_word
from arithmetic.growth import CompRoot, froot_eval, froot_iterate, sequence_table
from separation.conjugacy import conj_membership_test
from separation.witnesses import GintTranscript, gint_witness, verify_witness
from .rf_harness import (ExperimentConfig, chebotarev_fit, fit_table, laurent_fit,
                         rf_lower_probe, rf_upper_table, rows_to_json, witness_for, write_outputs)
from .results_store import ResultsStore, generate_report

logger = logging.getLogger(__name__)

GROUPS = ("g0", "gd", "gint", "lamplighter")


def status(message: str, ok: bool = True):
    color = Fore.GREEN if ok else Fore.RED
    print(f"{color}{message}{Style.RESET_ALL}", file=sys.stderr)


def _config_hash(config: dict) -> str:
    return hashlib.sha256(json.dumps(config, sort_keys=True).encode()).hexdigest()[:16]


def _load_params(path: Optional[str]) -> SequenceParams:
    if not path:
        raise PreconditionError("the gint group needs --params FILE")
    with open(path, "r", encoding="utf-8") as fh:
        config = json.load(fh)
    return SequenceParams.from_config(config.get("params", config))


def _d_from_args(args) -> object:
    config = {"name": args.d, "f": args.f}
    if args.prime_function:
        config["prime_function"] = json.loads(args.prime_function)
    return d_function_from_config(config)


def build_spec(args):
    if args.group == "g0":
        return FREE
    if args.group == "lamplighter":
        return TRIVIAL
    if args.group == "gd":
        return CyclicCenter(_d_from_args(args), args.modulus)
    return RelationCenter(_load_params(args.params))


def _group_config(args) -> dict:
    config = {"group": args.group}
    if args.group == "gd":
        config["d"] = _d_from_args(args).to_config()
        config["modulus"] = args.modulus
    if args.group == "gint":
        config["params"] = _load_params(args.params).to_config()
    return config


# ==================== SUBCOMMANDS ====================

def cmd_reduce(args) -> int:
    spec = build_spec(args)
    trivial, element = solve_word_problem(parse_word(args.word), spec)
    print(element.render())
    if args.check_trivial:
        status("trivial" if trivial else "nontrivial", ok=trivial)
    return 0


def cmd_word_norm(args) -> int:
    spec = build_spec(args)
    cap = args.cap if args.cap is not None else get_settings().ball_cap
    norm = word_norm(evaluate_text(args.word, spec), cap)
    if norm is NOT_FOUND:
        print(f"> {cap}")
        status(f"norm exceeds the radius cap {cap}", ok=False)
        return 0
    print(norm)
    return 0


def cmd_separate(args) -> int:
    spec = build_spec(args)
    g = evaluate_text(args.word, spec)
    if g.is_identity:
        raise PreconditionError(f"{args.word} is trivial in {spec.describe()}")
    transcript = GintTranscript()
    if args.group == "gint" and g.is_central:
        witness = gint_witness(g, transcript=transcript)
    elif args.group in ("lamplighter", "gint"):
        witness = witness_for(g, "gint" if args.group == "gint" else "lamplighter")
        transcript.log(f"lamplighter witness from the a-part of {g.render()}")
    else:
        raise PreconditionError("separate supports --group lamplighter and gint")
    target = g if (g.is_central or args.group == "lamplighter") else project_to_lamplighter(g)
    check = verify_witness(target, witness)

    record = witness.to_record()
    record.update({"element": g.render(), "group": spec.describe(), "version": __version__,
                   "config_hash": _config_hash(_group_config(args))})
    record["verified"] = check.nontrivial
    print(json.dumps(record, sort_keys=True))
    for line in transcript.steps:
        print(line, file=sys.stderr)
    status(f"{witness.kind} witness of order {witness.order}")
    return 0


def cmd_rf_table(args) -> int:
    if args.config:
        config = ExperimentConfig.from_file(args.config)
    else:
        config = ExperimentConfig(group=args.group, max_n=args.max_n,
                                  witness_family={"integers": "cyclic"}.get(args.group, args.group),
                                  params=_load_params(args.params) if args.group == "gint" else None)
    rows = rf_upper_table(config)
    write_outputs(rows, config, __version__, csv_path=args.csv, json_path=args.json or config.output)
    if args.db:
        store = ResultsStore(args.db)
        run_id = store.save_run(config, rows, __version__)
        store.close()
        status(f"saved run {run_id}")
    if not args.csv and not (args.json or config.output):
        print(rows_to_json(rows, config, __version__))
    print(generate_report(config, rows), file=sys.stderr)
    if args.fit and rows:
        print(json.dumps({"fit_n2": fit_table(rows).to_record()}, sort_keys=True), file=sys.stderr)
    return 0


def cmd_rf_probe(args) -> int:
    spec = CyclicCenter(FastGrowthD(FastGrowthDParams(args.f)), args.modulus)
    report = rf_lower_probe(spec, args.n, args.q_max)
    print(json.dumps(report.to_record(), sort_keys=True))
    status("separable" if report.separable else "not separable", ok=report.separable)
    return 0


def cmd_fit(args) -> int:
    if args.kind == "chebotarev":
        fit = chebotarev_fit(args.limit)
    else:
        fit = laurent_fit(args.count, args.seed)
    print(json.dumps({args.kind: fit.to_record()}, sort_keys=True))
    return 0


def cmd_period(args) -> int:
    d = _d_from_args(args)
    if len(args.q) > 1:
        print(check_separability_criteria(d, args.q, args.bound).generate_report())
        return 0
    period = period_mod(d, args.q[0], args.bound)
    if period is NOT_FOUND:
        print(f"not found (<= {args.bound})")
        status(f"no period of d mod {args.q[0]} up to {args.bound}", ok=False)
        return 0
    print(period)
    return 0


def cmd_conj_test(args) -> int:
    P = prime_function_from_config(json.loads(args.prime_function) if args.prime_function else None)
    result = conj_membership_test(args.i, args.p, P, args.search_bound, args.convention)
    print(json.dumps(result.to_record(), sort_keys=True))
    status(f"verdict: {result.verdict.value}")
    return 0


def cmd_seq(args) -> int:
    rows = sequence_table(CompRoot.equal(args.order), args.count)
    frame = pd.DataFrame(rows, columns=["sequence", "n", "approx", "exact", "symbolic"])
    if args.csv:
        frame.to_csv(args.csv, index=False)
        status(f"wrote {len(frame)} rows to {args.csv}")
    else:
        print(frame.to_csv(index=False), end="")
    return 0


def cmd_froot(args) -> int:
    r = CompRoot.equal(args.order)
    value = froot_iterate(r, args.x, args.times) if args.times != 1 else froot_eval(r, args.x)
    print(value)
    return 0


# ==================== PARSER ====================

def _add_group_args(parser: argparse.ArgumentParser, default: str = "g0"):
    parser.add_argument("--group", choices=GROUPS, default=default)
    _add_d_args(parser)
    parser.add_argument("--modulus", type=int, default=None, help="Also kill c_1^M in G_d")
    parser.add_argument("--params", help="JSON file with d_seq/q_seq for G_Int")


def _add_d_args(parser: argparse.ArgumentParser):
    parser.add_argument("--d", default="fastgrowth",
                        choices=["hall", "fastgrowth", "identity", "square_indicator"])
    parser.add_argument("--f", default="identity", help="Growth function of fastgrowth d")
    parser.add_argument("--prime-function", help='JSON, e.g. {"name": "scripted", "script": {"3": 2}}')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hallgroups",
                                     description="Hall's group G_0, its quotients and separability tools")
    parser.add_argument("--verbose", "-v", action="store_true")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", help="Normal form of a word")
    p.add_argument("word")
    p.add_argument("--check-trivial", action="store_true")
    _add_group_args(p)
    p.set_defaults(handler=cmd_reduce)

    p = sub.add_parser("word-norm", help="Word length over {t, a_0}")
    p.add_argument("word")
    p.add_argument("--cap", type=int, default=None)
    _add_group_args(p)
    p.set_defaults(handler=cmd_word_norm)

    p = sub.add_parser("separate", help="Finite quotient certificate for a nontrivial element")
    p.add_argument("word")
    _add_group_args(p, default="lamplighter")
    p.set_defaults(handler=cmd_separate)

    p = sub.add_parser("rf-table", help="Upper envelope table over a witness family")
    p.add_argument("--config", help="Experiment JSON file (docs/CONFIG.md)")
    p.add_argument("--group", choices=["integers", "lamplighter", "gint"], default="lamplighter")
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--params")
    p.add_argument("--csv")
    p.add_argument("--json")
    p.add_argument("--db", help="Also store the run in this SQLite file")
    p.add_argument("--fit", action="store_true", help="Report max order/n^2 and the log-log slope")
    p.set_defaults(handler=cmd_rf_table)

    p = sub.add_parser("rf-probe", help="Lower-bound probe on a fast-growth G_d")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--f", default="identity")
    p.add_argument("--modulus", type=int, default=None)
    p.add_argument("--q-max", type=int, default=None)
    p.set_defaults(handler=cmd_rf_probe)

    p = sub.add_parser("fit", help="Empirical constants")
    p.add_argument("kind", choices=["chebotarev", "laurent"])
    p.add_argument("--limit", type=int, default=10 ** 6)
    p.add_argument("--count", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(handler=cmd_fit)

    p = sub.add_parser("period", help="Period of d mod q")
    p.add_argument("--q", type=int, nargs="+", required=True)
    p.add_argument("--bound", type=int, default=None)
    _add_d_args(p)
    p.set_defaults(handler=cmd_period)

    p = sub.add_parser("conj-test", help="Conjugacy of g_1 and g_1 c_1^{n(i)/p^i} in G_d")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--search-bound", type=int, default=10)
    p.add_argument("--convention", choices=["j", "j+1"], default="j+1")
    p.add_argument("--prime-function")
    p.set_defaults(handler=cmd_conj_test)

    p = sub.add_parser("seq", help="Growth sequence terms as CSV")
    p.add_argument("--count", type=int, default=6)
    p.add_argument("--order", type=int, default=10)
    p.add_argument("--csv")
    p.set_defaults(handler=cmd_seq)

    p = sub.add_parser("froot", help="Evaluate the compositional root")
    p.add_argument("x", type=float)
    p.add_argument("--order", type=int, default=10)
    p.add_argument("--times", type=int, default=1)
    p.set_defaults(handler=cmd_froot)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    level = logging.DEBUG if args.verbose else getattr(logging, get_settings().log_level, logging.WARNING)
    logging.basicConfig(level=level, format='%(asctime)s - %(levelname)s - %(message)s')

    if args.command == "period" and args.bound is None:
        args.bound = get_settings().period_search_bound
    try:
        return args.handler(args)
    except HallGroupsError as e:
        status(f"error: {e}", ok=False)
        return 1
    except TheoryViolation as e:
        status(f"theory violation: {e}", ok=False)
        return 1


if __name__ == "__main__":
    sys.exit(main())
