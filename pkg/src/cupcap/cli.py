"""Command-line front end.

Exit codes: 0 pass, 1 falsified or failed, 2 usage error, 3 precondition
or budget problem.  Verifier lines read ``PASS|FAIL|UNKNOWN <claim> <instance> [witness]``.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

from . import bound, claims, extremal
from .chains import is_free, tables
from .core import PairFunction, PointSet, parse_pair_function, parse_point_set, slope_function
from .errors import CupCapError, Falsified, NotFree
from .words import LEFT, RIGHT, Pattern, class_count, render_tsv

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PRECONDITION = 0, 1, 2, 3

# verb-level aliases for claim ids
CLAIM_ALIASES = {"injectivity": "neq2", "ab": "a_b", "es": "lemma_es"}


def _budget() -> int:
    raw = os.environ.get("CUPCAP_BUDGET")
    return int(raw) if raw else claims.DEFAULT_BUDGET


def _load_points(path: str, allow_collinear: bool) -> PointSet:
    return parse_point_set(Path(path).read_text(), allow_collinear=allow_collinear)


def _load_function(args) -> PairFunction:
    if getattr(args, "pairfn", None):
        return parse_pair_function(Path(args.pairfn).read_text())
    return slope_function(_load_points(args.points, args.allow_collinear))


def _instance_id(args) -> str:
    return Path(args.pairfn or args.points).stem


# ---------------------------------------------------------------------------
# claim checks shared by ``verify <claim>`` and ``verify suite``


def run_check(claim: str, P: Optional[PointSet], f: PairFunction, k: int, l: int,
              n: Optional[int], budget: int) -> tuple[str, str]:
    """One claim on one instance -> (status, witness text)."""
    try:
        if claim == "a_b":
            count = claims.check_lemma_ab(f, k, l)
            return "PASS", f"pairs={count}"
        if claim == "neq2":
            hit = claims.check_injectivity(f, k, l)
            if hit is not None:
                return "FAIL", f"collision={hit[0]},{hit[1]}"
            if f.m > math.comb(k + l, k):
                return "FAIL", f"m={f.m}>C({k + l},{k})"
            return "PASS", ""
        if P is None or n is None:
            raise ValueError(f"claim {claim} needs --points and --n")
        if claim == "lemma_es":
            claims.check_lemma_es(P, n)
            return "PASS", ""
        if claim == "cstrings":
            claims.check_word_geometry(P, n)
            return "PASS", ""
        if claim in ("gv", "qprime"):
            rep = claims.q_report(P, n, budget)
            detail = f"Q={len(rep.Q)} Qprime={len(rep.Qprime)}"
            if claim == "gv":
                if not rep.mate_claim_ok:
                    v = rep.violations[0]
                    return "FAIL", f"q={v.q} U={list(v.U.indices)} W={list(v.W.indices)}"
                return ("UNKNOWN" if rep.truncated else "PASS"), detail
            if rep.bound_ok is False:
                return "FAIL", f"{detail} m={P.m} n={n}"
            return ("UNKNOWN" if rep.bound_ok is None else "PASS"), detail
        if claim == "clast":
            peeled, removed, rounds = claims.peel(P, n, budget)
            claims.check_clast(peeled, n)
            return "PASS", f"removed={len(removed)} rounds={rounds}"
        raise ValueError(f"unknown claim {claim!r}")
    except Falsified as exc:
        return "FAIL", f"witness={exc.witness}"
    except CupCapError as exc:
        return "UNKNOWN", f"precondition: {type(exc).__name__}"


def _suite_instance(args):
    (seed, m, n), checks, budget = args
    P = claims.corpus_instance(seed, m)
    f = slope_function(P)
    iid = f"{seed}:{m}:{n}"
    lines, statuses = [], []
    for claim in checks:
        status, wit = run_check(claim, P, f, n - 2, n - 3, n, budget)
        statuses.append((status, wit.startswith("precondition")))
        lines.append(f"{status} {claim} {iid}" + (f" {wit}" if wit else ""))
    return lines, statuses


def verify_suite(corpus_text: str, checks: Sequence[str], budget: int, jobs: int = 1,
                 out=None) -> int:
    out = out or sys.stdout
    entries = claims.parse_corpus(corpus_text)
    tasks = [(e, tuple(checks), budget) for e in entries]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            results = list(ex.map(_suite_instance, tasks))
    else:
        results = [_suite_instance(t) for t in tasks]
    counts = {"PASS": 0, "FAIL": 0, "UNKNOWN": 0}
    precondition = False
    for lines, statuses in results:
        for line in lines:
            print(line, file=out)
        for status, pre in statuses:
            counts[status] += 1
            precondition |= pre
    print(f"SUMMARY pass={counts['PASS']} fail={counts['FAIL']} unknown={counts['UNKNOWN']}", file=out)
    if counts["FAIL"]:
        return EXIT_FAIL
    if counts["UNKNOWN"] or precondition:
        return EXIT_PRECONDITION
    return EXIT_OK


# ---------------------------------------------------------------------------
# verbs


def cmd_encode(args) -> int:
    f = _load_function(args)
    sys.stdout.write(render_tsv(tables(f, args.k, args.l), args.side))
    return EXIT_OK


def cmd_free(args) -> int:
    f = slope_function(_load_points(args.points, args.allow_collinear))
    rep = is_free(f, args.k, args.l)
    if rep.free:
        print(f"free ({args.k},{args.l})")
        return EXIT_OK
    print(f"not-free {rep.witness.kind.value} {','.join(map(str, rep.witness.indices))}")
    return EXIT_FAIL


def cmd_words(args) -> int:
    print(class_count(args.k, args.l, Pattern.parse(args.pattern)))
    return EXIT_OK


def cmd_verify(args) -> int:
    budget = _budget()
    if args.claim == "suite":
        if not args.corpus:
            print("verify suite needs --corpus", file=sys.stderr)
            return EXIT_USAGE
        checks = args.checks.split(",") if args.checks else list(claims.CLAIM_IDS)
        bad = [c for c in checks if c not in claims.CLAIM_IDS]
        if bad:
            print(f"unknown claim ids: {bad}", file=sys.stderr)
            return EXIT_USAGE
        return verify_suite(Path(args.corpus).read_text(), checks, budget, args.jobs)
    claim = CLAIM_ALIASES.get(args.claim, args.claim)
    if claim not in claims.CLAIM_IDS:
        print(f"unknown claim {args.claim!r}", file=sys.stderr)
        return EXIT_USAGE
    if not (args.pairfn or args.points):
        print("need --pairfn or --points", file=sys.stderr)
        return EXIT_USAGE
    P = _load_points(args.points, args.allow_collinear) if args.points else None
    f = slope_function(P) if P is not None else _load_function(args)
    n = args.n
    k = args.k if args.k is not None else (n - 2 if n else None)
    l = args.l if args.l is not None else (n - 3 if n else None)
    if k is None or l is None:
        print("need --k/--l or --n", file=sys.stderr)
        return EXIT_USAGE
    status, wit = run_check(claim, P, f, k, l, n, budget)
    print(f"{status} {claim} {_instance_id(args)}" + (f" {wit}" if wit else ""))
    return {"PASS": EXIT_OK, "FAIL": EXIT_FAIL}.get(status, EXIT_PRECONDITION)


def _certificate(lines: list[str]) -> None:
    for line in lines:
        print(f"# {line}")


def cmd_construct(args) -> int:
    if args.what == "freeset":
        if args.k is None or args.l is None:
            print("construct freeset needs --k and --l", file=sys.stderr)
            return EXIT_USAGE
        P = extremal.free_construction(args.k, args.l)
        sys.stdout.write(P.to_text())
        if args.certificate:
            cup, cap = (len(c) for c in _chains(P))
            _certificate([
                f"points={P.m} C({args.k + args.l},{args.k})={math.comb(args.k + args.l, args.k)}",
                f"longest cup={cup} < {args.k + 2}; longest cap={cap} < {args.l + 2}",
                f"is_free({args.k + 2},{args.l + 2})=true",
            ])
        return EXIT_OK
    if args.n is None:
        print("construct eslower needs --n", file=sys.stderr)
        return EXIT_USAGE
    P = extremal.es_lower(args.n)
    sys.stdout.write(P.to_text())
    if args.certificate:
        res = extremal.largest_convex_subset(P)
        _certificate([
            f"points={P.m} = 2^{args.n - 2}",
            f"largest convex subset={res.size} < {args.n} witness={','.join(map(str, res.witness))}",
        ])
    return EXIT_OK


def _chains(P: PointSet):
    from .chains import Kind, extreme_chain

    f = slope_function(P)
    return extreme_chain(f, Kind.CUP)[1], extreme_chain(f, Kind.CAP)[1]


def cmd_convex(args) -> int:
    res = extremal.largest_convex_subset(_load_points(args.points, args.allow_collinear))
    print(f"size {res.size}")
    print("witness " + ",".join(map(str, res.witness)))
    return EXIT_OK


def cmd_bound(args) -> int:
    if args.ratio_table:
        a, b, s = args.ratio_table
        sys.stdout.write(bound.ratio_table_csv(a, b, s))
        return EXIT_OK
    if args.n is None:
        print("bound needs --n or --ratio-table", file=sys.stderr)
        return EXIT_USAGE
    b = bound.breakdown(args.n)
    print(f"n={b.n} lbaa={b.lbaa} rtotal={b.rtotal} rdg={b.rdg} raw={b.raw} "
          f"ratio={b.ratio} ({bound.format_decimal(b.ratio)})")
    if args.n >= 7:
        value, transcript = bound.assembled_upper(args.n)
        for line in transcript:
            print(line)
    return EXIT_OK


def cmd_search(args) -> int:
    if args.what == "esprime":
        if args.k is None or args.l is None:
            print("search esprime needs --k and --l", file=sys.stderr)
            return EXIT_USAGE
        print(extremal.exhaustive_es_prime(args.k, args.l))
        return EXIT_OK
    if args.n is None or not args.m or args.count is None:
        print("search corpus needs --n, --m and --count", file=sys.stderr)
        return EXIT_USAGE
    entries = claims.sample_free_instances(args.n, args.m, args.count, args.seed_start)
    sys.stdout.write(claims.format_corpus(entries))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cupcap", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    def inputs(p, pairfn=True):
        g = p.add_mutually_exclusive_group()
        if pairfn:
            g.add_argument("--pairfn")
        g.add_argument("--points")
        p.add_argument("--allow-collinear", action="store_true")

    p = sub.add_parser("encode", help="alpha/beta (or gamma/delta) table and words")
    inputs(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--side", choices=[LEFT, RIGHT], default=LEFT)
    p.set_defaults(func=cmd_encode, need_input=True)

    p = sub.add_parser("free", help="test (k,l)-freeness of a point set")
    inputs(p, pairfn=False)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.set_defaults(func=cmd_free, need_input=True)

    p = sub.add_parser("words", help="count words of a prefix*suffix class")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--pattern", default="*", help="e.g. 'b*aa' or 'β*αα'")
    p.set_defaults(func=cmd_words)

    p = sub.add_parser("verify", help="run one claim check, or the corpus suite")
    p.add_argument("claim", help="claim id, 'injectivity', or 'suite'")
    inputs(p)
    p.add_argument("--k", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--corpus")
    p.add_argument("--checks", help="comma-separated claim ids (suite only)")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", help="extremal constructions")
    p.add_argument("what", choices=["freeset", "eslower"])
    p.add_argument("--k", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--certificate", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("convex", help="largest subset in convex position")
    inputs(p, pairfn=False)
    p.set_defaults(func=cmd_convex, need_input=True)

    p = sub.add_parser("bound", help="word-count bound")
    p.add_argument("--n", type=int)
    p.add_argument("--ratio-table", type=int, nargs=3, metavar=("A", "B", "S"))
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("search", help="exhaustive ES' search, or corpus sampling")
    p.add_argument("what", choices=["esprime", "corpus"])
    p.add_argument("--k", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int, nargs="+")
    p.add_argument("--count", type=int)
    p.add_argument("--seed-start", type=int, default=0)
    p.set_defaults(func=cmd_search)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "need_input", False) and not (getattr(args, "pairfn", None) or args.points):
        print(f"{args.verb} needs an input file", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except NotFree as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except CupCapError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
