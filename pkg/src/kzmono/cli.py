"""kzmono command line: classification, matrices, commutators, witnesses, checks.

Exit status: 0 on success, 1 when a verification fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys

from .commute import commutator, thmnc_classify, thnnc_classify
from .connection import generators, m_matrix, n_matrix, word_representation
from .exceptions import (
    CriterionInapplicable,
    DegenerateWeight,
    ResonantWeight,
    StillerGateError,
    VerificationFailure,
)
from .report import dumps, render
from .search import build_witness, classify_weight
from .spectral import Weight
from .verify import (
    lemma_sweeps,
    oracle_sweep,
    qcheck_suite,
    relation_suite,
    rseqpm12_sweep,
    weight_grid,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def weight_arg(text: str) -> Weight:
    try:
        return Weight.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def range_arg(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        if not sep:
            raise ValueError
        lo_i, hi_i = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a range like 3..21, got {text!r}") from None
    if lo_i > hi_i:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo_i, hi_i


def positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n


def emit(obj, as_json: bool) -> None:
    sys.stdout.write(dumps(obj) if as_json else render(obj))


# ----------------------------------------------------------------------------
# verbs
# ----------------------------------------------------------------------------


def cmd_classify(args) -> int:
    result = classify_weight(args.k, args.N)
    emit(result, args.json)
    return EXIT_OK


def cmd_matrix(args) -> int:
    if args.word is not None:
        m = word_representation(args.k, args.word)
    elif args.gen is not None:
        m = generators(args.k)["TS".index(args.gen)]
    elif args.r is not None or args.s is not None:
        if args.r is None or args.s is None:
            raise UsageError("N(r,s) needs both --r and --s")
        m = n_matrix(args.k, args.r, args.s)
    elif args.t is not None:
        m = m_matrix(args.k, args.t)
    else:
        raise UsageError("give one of --t, --r/--s, --word or --gen")
    emit(m, args.json)
    return EXIT_OK


def cmd_commute(args) -> int:
    nn = (args.r, args.s, args.u, args.v)
    if args.t is not None:
        if args.r is None or args.s is None or args.u is not None or args.v is not None:
            raise UsageError("M(t) vs N(r,s) takes --t, --r and --s only")
        verdict = thmnc_classify(args.k, args.t, args.r, args.s, complete=args.complete)
        truth = not commutator(m_matrix(args.k, args.t), n_matrix(args.k, args.r, args.s)).is_zero()
    elif None not in nn:
        verdict = thnnc_classify(args.k, *nn, complete=args.complete)
        truth = not commutator(n_matrix(args.k, *nn[:2]), n_matrix(args.k, *nn[2:])).is_zero()
    else:
        raise UsageError("give --r --s --u --v, or --t --r --s")
    agrees = verdict.commutes == (not truth)
    if args.json:
        payload = verdict.to_json()
        payload["k"] = str(args.k)
        payload["commutator_is_zero"] = not truth
        payload["agrees_with_commutator"] = agrees
        emit(payload, True)
    else:
        emit(verdict, False)
        print(f"exact commutator is {'zero' if not truth else 'nonzero'}; "
              f"classifier {'agrees' if agrees else 'DISAGREES'}")
    return EXIT_OK if agrees else EXIT_FAIL


def cmd_witness(args) -> int:
    result = classify_weight(args.k, args.N)
    if result.verdict != "Excluded" or result.witness is None:
        raise UsageError(f"k = {args.k} has no witness ({result.verdict}: {result.reason})")
    witness = build_witness(args.k, args.N)
    emit(witness, args.json)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite == "lemmas":
        lo, hi = args.range or ((-5, 5) if args.fast else (-10, 10))
        result = lemma_sweeps(50 if args.fast else 200, lo, hi)
    elif args.suite == "relations":
        if args.k is None:
            raise UsageError("verify relations needs --k")
        if args.fast:
            result = relation_suite(args.k, range(-2, 3), range(-2, 3))
        else:
            result = relation_suite(args.k)
    elif args.suite == "rseqpm12":
        lo, hi = args.range or ((3, 9) if args.fast else (3, 21))
        if lo < 3:
            raise UsageError("the cosine identity sweep needs q >= 3")
        result = rseqpm12_sweep(lo, hi)
    else:
        lo, hi = args.range or ((-3, 3) if args.fast else (-6, 6))
        if args.k is not None:
            weights = [args.k]
        elif args.fast:
            weights = weight_grid(3, 6)
        else:
            weights = weight_grid(8, 24)
        mode = "complete" if args.complete else "literal"
        result = oracle_sweep(weights, lo, hi, args.theorem, mode)
    emit(result, args.json)
    return EXIT_OK if result.passed else EXIT_FAIL


def cmd_qcheck(args) -> int:
    result = qcheck_suite(args.k, args.order)
    if args.json:
        emit({"k": str(args.k), "order": args.order, "passed": result.passed,
              "identities": result.info["identities"], "skipped": result.info.get("skipped")}, True)
    else:
        emit(result, False)
    return EXIT_OK if result.passed else EXIT_FAIL


# ----------------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")

    ap = argparse.ArgumentParser(prog="kzmono", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("classify", parents=[common], help="classify a rational weight")
    p.add_argument("--k", type=weight_arg, required=True, help='weight as "p/q"')
    p.add_argument("--N", type=positive_int, default=1, help="level multiplier (level 6qN)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("matrix", parents=[common], help="print a monodromy matrix in graded form")
    p.add_argument("--k", type=weight_arg, required=True)
    p.add_argument("--t", type=int, help="M(t) = (T^t S)^3")
    p.add_argument("--r", type=int, help="N(r,s) = (T^r S T^s S)^2")
    p.add_argument("--s", type=int)
    p.add_argument("--word", help='any word in T, S, e.g. "(T^2 S)^3"')
    p.add_argument("--gen", choices=["T", "S"], help="a generator")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("commute", parents=[common], help="commutation verdict for N,N or M,N")
    p.add_argument("--k", type=weight_arg, required=True)
    for name in ("t", "r", "s", "u", "v"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--complete", action="store_true", help="also test the cases missing from the listed conditions")
    p.set_defaults(func=cmd_commute)

    p = sub.add_parser("witness", parents=[common], help="non-commuting pair for an excluded weight")
    p.add_argument("--k", type=weight_arg, required=True)
    p.add_argument("--N", type=positive_int, default=1)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=["lemmas", "relations", "rseqpm12", "oracle"])
    p.add_argument("--k", type=weight_arg)
    p.add_argument("--range", type=range_arg, help="lo..hi: r,s range (lemmas, oracle) or q range (rseqpm12)")
    p.add_argument("--fast", action="store_true", help="small subset")
    p.add_argument("--complete", action="store_true", help="oracle: judge the completed classifier")
    p.add_argument("--theorem", choices=["both", "NN", "MN"], default="both", help="oracle: which classifier")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("qcheck", parents=[common], help="exact q-expansion identity residuals")
    p.add_argument("--k", type=weight_arg, required=True)
    p.add_argument("--order", type=positive_int, default=20)
    p.set_defaults(func=cmd_qcheck)
    return ap


_VALUE_FLAGS = {"--k", "--range", "--t", "--r", "--s", "--u", "--v", "--N", "--order", "--word"}


def _bind_negative_values(argv: list[str]) -> list[str]:
    # argparse reads "-6/5" or "-3..3" as an option; glue such values to their flag
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else None
        if tok in _VALUE_FLAGS and nxt and nxt.startswith("-") and nxt[1:2].isdigit():
            out.append(f"{tok}={nxt}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_bind_negative_values(argv))
    try:
        return args.func(args)
    except VerificationFailure as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, DegenerateWeight, StillerGateError, ResonantWeight,
            CriterionInapplicable, ValueError) as exc:
        parser.print_usage(sys.stderr)
        print(f"kzmono: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
