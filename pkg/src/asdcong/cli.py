"""Command-line front end: verify / scan / eval.

`verify` runs congruence sweeps and writes the JSON report (stdout or --out),
exiting 0 only when every evaluated case passed.  `scan` prints failures and
errors only, for counterexample hunting.  `eval` prints single values
(series sums, Apery numbers, Lucas terms), exactly or modulo p^e.

Reports are byte-identical across reruns and worker counts; everything that
could vary (timing, scheduling) is kept out of them.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .engine import (
    DEFAULT_SETTINGS,
    EngineSettings,
    SUITE_DEFAULTS,
    SweepRanges,
    enumerate_cases,
    run_cases,
    run_suite,
)
from .lucas import LucasParams, lucas_u, lucas_u_mod
from .padic import PadicCtx, from_rational
from .report import Report
from .series import SeriesSpec, apery, s_sum_exact, s_sum_mod


def parse_int_values(text: str) -> tuple[int, ...]:
    """Comma-separated integers and inclusive a..b spans: "1,3..5" -> (1,3,4,5).

    A span with a > b is empty rather than an error, so an empty sweep is a
    legitimate (vacuously passing) invocation.
    """
    values: list[int] = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        if ".." in token:
            lo_text, hi_text = token.split("..", 1)
            values.extend(range(int(lo_text), int(hi_text) + 1))
        else:
            values.append(int(token))
    return tuple(values)


def parse_modulus(text: str) -> tuple[int, int]:
    """A prime power written p^e (or a bare prime p, meaning e = 1)."""
    base, _, exp = text.partition("^")
    p = int(base)
    e = int(exp) if exp else 1
    if e < 1:
        raise ValueError(f"exponent in {text!r} must be >= 1")
    return p, e


def _int_values_arg(text: str) -> tuple[int, ...]:
    try:
        return parse_int_values(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _add_sweep_flags(cmd: argparse.ArgumentParser) -> None:
    cmd.add_argument("--suite", default="all", choices=("all", *SUITE_DEFAULTS))
    cmd.add_argument("--primes", type=_int_values_arg, metavar="A..B|LIST",
                     help="candidate primes; non-(odd-prime) values are skipped")
    cmd.add_argument("--m", type=_int_values_arg, metavar="LIST",
                     help="series bases / identity parameters where applicable")
    cmd.add_argument("--n", type=_int_values_arg, metavar="A..B|LIST")
    cmd.add_argument("--alpha", type=_int_values_arg, metavar="A..B|LIST")
    cmd.add_argument("--s", type=_int_values_arg, metavar="A..B|LIST")
    cmd.add_argument("--l", type=_int_values_arg, metavar="A..B|LIST")
    cmd.add_argument("--trials", type=int, help="trial count for synthesized-sequence suites")
    cmd.add_argument("--variant", default="corrected", choices=("corrected", "literal"))
    cmd.add_argument("--max-index", type=int, default=None,
                     help="cap on the largest summation bound n*p^alpha")
    cmd.add_argument("--jobs", type=int, default=1, help="worker processes")
    cmd.add_argument("--seed", type=int, default=0, help="seed for synthesized sequences")
    cmd.add_argument("--oracle-cutoff", type=int, default=DEFAULT_SETTINGS.oracle_cutoff,
                     help="largest index evaluated on the exact oracle path")
    cmd.add_argument("--crosscheck-cutoff", type=int, default=DEFAULT_SETTINGS.crosscheck_cutoff,
                     help="largest index evaluated on both paths")


def _ranges_from_args(args: argparse.Namespace) -> SweepRanges:
    return SweepRanges(
        primes=args.primes,
        m_values=args.m,
        n_values=args.n,
        alpha_values=args.alpha,
        s_values=args.s,
        l_values=args.l,
        trials=args.trials,
    )


def _settings_from_args(args: argparse.Namespace) -> EngineSettings:
    return EngineSettings(
        oracle_cutoff=args.oracle_cutoff,
        crosscheck_cutoff=args.crosscheck_cutoff,
        seed=args.seed,
    )


def cmd_verify(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    report = run_suite(
        args.suite,
        ranges=_ranges_from_args(args),
        variant=args.variant,
        max_index=args.max_index,
        jobs=args.jobs,
        settings=_settings_from_args(args),
    )
    text = report.to_json_text()
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    counts = report.counts()
    print(
        "verify: {total} cases, {passed} passed, {failed} failed, {errored} errored".format(**counts),
        file=sys.stderr,
    )
    return 0 if counts["failed"] == 0 and counts["errored"] == 0 else 1


def _result_line(result) -> str:
    params = " ".join(f"{k}={v}" for k, v in result.case.params_dict().items())
    if result.error is not None:
        return f"ERROR {result.case.suite} {params}: {result.error}"
    return (
        f"FAIL {result.case.suite} {params} "
        f"required={result.required_exponent} achieved={result.achieved} "
        f"margin={result.margin}"
    )


def cmd_scan(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    ranges = _ranges_from_args(args)
    settings = _settings_from_args(args)
    suites = list(SUITE_DEFAULTS) if args.suite == "all" else [args.suite]
    cases = []
    for suite in suites:
        cases.extend(enumerate_cases(suite, ranges, args.variant, args.max_index))
    cases.sort(key=lambda c: c.sort_key())
    hits = 0
    chunk_size = 64
    for start in range(0, len(cases), chunk_size):
        for result in run_cases(cases[start : start + chunk_size], settings, args.jobs):
            if result.error is None and result.passed:
                continue
            print(_result_line(result))
            hits += 1
            if args.stop_after and hits >= args.stop_after:
                return 1
    return 1 if hits else 0


def cmd_eval(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    modulus = None
    if args.mod:
        try:
            modulus = parse_modulus(args.mod)
        except ValueError as exc:
            parser.error(f"malformed modulus {args.mod!r}: {exc}")
    try:
        ctx = PadicCtx(*modulus) if modulus else None
    except ValueError as exc:
        parser.error(f"malformed modulus {args.mod!r}: {exc}")

    try:
        if args.series == "s":
            if args.m is None or args.N is None:
                parser.error("--series s needs --m and --N")
            spec = SeriesSpec(args.m, args.variant)
            if ctx:
                print(s_sum_mod(args.N, spec, ctx).describe())
            else:
                print(s_sum_exact(args.N, spec))
        elif args.series == "apery":
            if args.index is None:
                parser.error("--series apery needs --index")
            value = apery(args.index)
            if ctx:
                print(from_rational(Fraction(value), ctx).describe())
            else:
                print(value)
        else:  # lucas
            if args.m is None or args.index is None:
                parser.error("--series lucas needs --m and --index")
            params = LucasParams(args.m - 2)
            if ctx:
                print(lucas_u_mod(args.index, params, ctx).describe())
            else:
                print(lucas_u(args.index, params))
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="asdcong",
        description="Verify Atkin-Swinnerton-Dyer type congruences for truncated "
        "central-binomial series, Apery numbers, and their supporting identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run sweeps and write the JSON report")
    _add_sweep_flags(verify)
    verify.add_argument("--out", metavar="PATH", help="report path (default: stdout)")
    verify.set_defaults(func=cmd_verify)

    scan = sub.add_parser("scan", help="run sweeps, print failures/errors only")
    _add_sweep_flags(scan)
    scan.add_argument("--stop-after", type=int, default=0, metavar="F",
                      help="stop after F failures (0 = never)")
    scan.set_defaults(func=cmd_scan)

    ev = sub.add_parser("eval", help="print one value, exact or modulo p^e")
    ev.add_argument("--series", required=True, choices=("s", "apery", "lucas"))
    ev.add_argument("--m", type=int, help="series base (s) or Lucas parameter m, a = m-2 (lucas)")
    ev.add_argument("--N", type=int, help="term count for --series s")
    ev.add_argument("--index", type=int, help="index for apery/lucas")
    ev.add_argument("--variant", default="corrected", choices=("corrected", "literal"))
    ev.add_argument("--mod", metavar="P^E", help="reduce modulo the prime power p^e")
    ev.set_defaults(func=cmd_eval)
    return parser


_LIST_FLAGS = ("--primes", "--m", "--n", "--alpha", "--s", "--l")


def _glue_negative_values(argv: list[str]) -> list[str]:
    """Turn ["--m", "-5..5"] into ["--m=-5..5"] so argparse accepts it."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        token = argv[i]
        follower = argv[i + 1] if i + 1 < len(argv) else ""
        if token in _LIST_FLAGS and len(follower) > 1 and follower[0] == "-" and follower[1].isdigit():
            out.append(f"{token}={follower}")
            i += 2
        else:
            out.append(token)
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    if not argv:
        argv = ["verify"]
    parser = build_parser()
    args = parser.parse_args(_glue_negative_values(argv))
    return args.func(args, parser)


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
