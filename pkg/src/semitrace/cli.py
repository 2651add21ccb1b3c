"""Command-line front end.

Exit codes: 0 all checks pass, 1 an assertion failed, 2 inconclusive
(no tail certificate), 3 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import BatteryDisagreement, CertificateNotFound, SemitraceError
from .homology import (
    delta1,
    end_over_trace,
    ext_i,
    question12_check,
    sym2,
    theorem38_battery,
    tor1_self,
    wedge2,
)
from .ideals import (
    canonical_ideal,
    classify,
    colon,
    conductor_ideal,
    ideal_from_degrees,
    is_ulrich_ideal,
    maximal_ideal,
    principal,
    trace_ideal,
)
from .linalg import is_prime
from .scan import CHECKS, ScanConfig, ScanSummary, run_scan
from .scenarios import SCENARIOS, run_scenario
from .semigroup import new_semigroup

EXIT_OK, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(doc, as_json: bool, text: str = ""):
    if as_json or not text:
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(text)


def _pick_ideal(S, args):
    if getattr(args, "canonical", False):
        return canonical_ideal(S)
    if getattr(args, "maximal", False):
        return maximal_ideal(S)
    if getattr(args, "conductor", False):
        return conductor_ideal(S)
    if getattr(args, "ideal", None):
        return ideal_from_degrees(S, args.ideal)
    return None


def _ideal_doc(I, prime) -> dict:
    S = I.semigroup
    doc = {
        "min_gens": list(I.min_gens),
        "mu": I.mu,
        "trace": list(trace_ideal(I).min_gens),
        "ulrich": is_ulrich_ideal(I) if I.inside_ring() else None,
    }
    if I.inside_ring() and not I.is_principal():
        doc["colon_x1"] = list(colon(principal(S, I.min_gens[0]), I).min_gens)
        doc["end_over_trace"] = end_over_trace(I, prime).to_json()
    return doc


# -- verbs --------------------------------------------------------------------

def cmd_info(args) -> int:
    S = new_semigroup(args.generators)
    doc = S.as_dict()
    doc["genus"] = S.genus
    doc["apery"] = list(S.apery[S.multiplicity])
    text = "\n".join([
        f"semigroup       {S!r}",
        f"multiplicity    {S.multiplicity}",
        f"embedding dim   {S.embedding_dimension}",
        f"Frobenius       {S.frobenius}",
        f"genus           {S.genus}",
        f"type            {S.type}",
        f"pseudo-Frob.    {list(S.pseudo_frobenius)}",
        f"min. mult.      {S.has_minimal_multiplicity()}",
    ])
    _emit(doc, args.json, text)
    return EXIT_OK


def cmd_ideal(args) -> int:
    S = new_semigroup(args.generators)
    I = _pick_ideal(S, args)
    if I is None:
        raise UsageError("give --ideal degrees or one of --canonical/--maximal/--conductor")
    doc = _ideal_doc(I, args.field)
    text = "\n".join(f"{k:<16}{v}" for k, v in doc.items() if k != "end_over_trace")
    _emit(doc, args.json, text)
    return EXIT_OK


def cmd_classify(args) -> int:
    S = new_semigroup(args.generators)
    c = classify(S)
    _emit(c.as_dict(), args.json, f"{S!r}: {c.category}")
    return EXIT_OK


def cmd_report(args) -> int:
    S = new_semigroup(args.generators)
    p = args.field
    doc = {"semigroup": S.as_dict()}
    code = EXIT_OK
    if not S.is_dvr:
        c = classify(S)
        doc["classification"] = c.as_dict()
        doc["gorenstein"] = c.gorenstein
    I = _pick_ideal(S, args)
    if I is None and args.battery and not S.is_dvr:
        I = canonical_ideal(S)
    if I is not None:
        doc["ideal"] = _ideal_doc(I, p)
    if args.homology and I is not None and not I.is_principal():
        doc["homology"] = {
            "ext1_R": ext_i(I, "R", 1, p, cap=args.cap).to_json(),
            "ext1_dual": ext_i(I, "canonical_dual", 1, p, cap=args.cap).to_json(),
            "tor1": tor1_self(I, p, cap=args.cap).to_json(),
            "delta1": delta1(I, p, cap=args.cap).to_json(),
            "wedge2": wedge2(I, p, cap=args.cap).to_json(),
            "sym2": sym2(I, p, cap=args.cap).to_json(),
        }
    if args.battery:
        if I is None or I.is_principal():
            doc["battery"] = {"skipped": "needs a nonprincipal ideal"}
        else:
            mm = S.has_minimal_multiplicity()
            b = theorem38_battery(I, p, args.ext_depth, require_minimal_multiplicity=False)
            doc["battery"] = b.to_json()
            doc["battery"]["minimal_multiplicity"] = mm
            if mm and not b.agreement:
                code = EXIT_FAIL
            if None in b.conditions.values():
                code = max(code, EXIT_INCONCLUSIVE) if code != EXIT_FAIL else code
    if args.question12 and not S.is_dvr:
        try:
            doc["question12"] = question12_check(S, args.ext_depth, p).to_json()
        except CertificateNotFound as exc:
            doc["question12"] = {"inconclusive": True, "reason": str(exc)}
            if code == EXIT_OK:
                code = EXIT_INCONCLUSIVE
    print(json.dumps(doc, indent=2, sort_keys=True))
    return code


def cmd_verify(args) -> int:
    names = sorted(SCENARIOS) if args.scenario == "all" else [args.scenario]
    if any(n not in SCENARIOS for n in names):
        raise UsageError(f"unknown scenario {args.scenario!r}; choose from {sorted(SCENARIOS)} or all")
    primes = (args.field,) if args.field_given else None
    results = [run_scenario(n, primes) for n in names]
    if args.json:
        print(json.dumps([r.to_json() for r in results], indent=2, sort_keys=True))
    else:
        for r in results:
            print(f"== {r.name}")
            for o in r.outcomes:
                mark = "PASS" if o.passed else "FAIL"
                print(f"  {mark}  {o.name}" + (f"  ({o.detail})" if o.detail else ""))
    if any(r.inconclusive for r in results):
        return EXIT_INCONCLUSIVE
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def cmd_scan(args) -> int:
    if args.max_genus is None and args.max_frobenius is None:
        raise UsageError("give --max-genus or --max-frobenius")
    checks = tuple(c.strip() for c in args.checks.split(",") if c.strip())
    config = ScanConfig(
        max_genus=args.max_genus,
        max_frobenius=args.max_frobenius,
        checks=checks,
        prime=args.field,
        workers=args.workers,
        ext_depth=args.ext_depth,
        random_ideals=args.random_ideals,
        minimal_multiplicity_only=args.minimal_multiplicity,
        multiplicity=args.multiplicity,
        embedding_dimension=args.embedding_dimension,
    )
    summary = ScanSummary()
    code = EXIT_OK
    try:
        for rec in run_scan(config, args.out, resume=args.resume):
            summary.add(rec)
    except BatteryDisagreement as exc:
        print("FATAL: " + str(exc), file=sys.stderr)
        print(json.dumps(exc.record, indent=2, sort_keys=True), file=sys.stderr)
        code = EXIT_FAIL
    if args.json:
        print(json.dumps(summary.to_json(), indent=2, sort_keys=True))
    else:
        print(summary.table())
    if code == EXIT_OK and (summary.matlis_failures or summary.formula_failures):
        code = EXIT_FAIL
    if code == EXIT_OK and summary.inconclusive:
        code = EXIT_INCONCLUSIVE
    return code


# -- parser -------------------------------------------------------------------

def _field(value: str) -> int:
    p = int(value)
    if not is_prime(p):
        raise argparse.ArgumentTypeError(f"{p} is not prime")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=_field, default=None, help="prime p for F_p coefficients (default 101)")
    common.add_argument("--cap", type=int, default=None, help="truncation degree D")
    common.add_argument("--ext-depth", type=int, default=3, help="Ext depth N for direct checks and certificates")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--out", default=None, help="output path (scan: NDJSON records)")
    common.add_argument("--json", action="store_true", help="print JSON instead of text")

    parser = _Parser(prog="semitrace", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def gens(p):
        p.add_argument("generators", type=int, nargs="+")

    def ideal_opts(p):
        p.add_argument("--ideal", type=int, nargs="+", metavar="DEG")
        g = p.add_mutually_exclusive_group()
        g.add_argument("--canonical", action="store_true")
        g.add_argument("--maximal", action="store_true")
        g.add_argument("--conductor", action="store_true")

    p = sub.add_parser("info", parents=[common], help="semigroup invariants")
    gens(p)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("ideal", parents=[common], help="monomial ideal arithmetic")
    gens(p)
    ideal_opts(p)
    p.set_defaults(func=cmd_ideal)

    p = sub.add_parser("classify", parents=[common], help="Gorenstein / nearly / far-flung class")
    gens(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("report", parents=[common], help="combined JSON report")
    gens(p)
    ideal_opts(p)
    p.add_argument("--battery", action="store_true", help="the sixteen-condition battery")
    p.add_argument("--question12", action="store_true", help="does m kill all Ext^i(omega, R)?")
    p.add_argument("--homology", action="store_true", help="Ext, Tor, delta_1 and square reports")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("verify", parents=[common], help="run a named scenario")
    p.add_argument("scenario", help=", ".join(sorted(SCENARIOS)) + " or all")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", parents=[common], help="scan the genus tree")
    p.add_argument("--max-genus", type=int)
    p.add_argument("--max-frobenius", type=int)
    p.add_argument("--checks", default="classify", help="comma list from " + ",".join(CHECKS))
    p.add_argument("--minimal-multiplicity", action="store_true", help="only minimal multiplicity semigroups")
    p.add_argument("--multiplicity", type=int)
    p.add_argument("--embedding-dimension", type=int)
    p.add_argument("--random-ideals", type=int, default=5)
    p.add_argument("--resume", action="store_true", help="skip semigroups already in --out")
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.field_given = args.field is not None
    if args.field is None:
        args.field = 101
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"semitrace: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CertificateNotFound as exc:
        print(f"semitrace: inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except SemitraceError as exc:
        print(f"semitrace: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
