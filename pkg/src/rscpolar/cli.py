"""Command line entry point: ``rscpolar {analyze,transform,construct,verify,polarize}``."""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import __version__
from .algebra import EXACT, FLOAT
from .arikan import a_seq, bec_fast, parse_alpha
from .channel import SymmetricChannel, bhattacharyya, capacity, make_bec, p_error, phi
from .construction import DEFAULT_COMPONENT_BUDGET, construct, to_csv, to_json, with_frozen
from .errors import ParseError, ResourceError, UsageError
from .oracle import bhattacharyya_of_table, mutual_information_of_table, p_error_of_table
from .profile import lrp_from_table
from .specfile import load_spec
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_RESOURCE = 4
EXIT_VERIFY = 5


def _fmt(x) -> str:
    return str(x) if isinstance(x, Fraction) else repr(x)


def _channel_report(channel: SymmetricChannel) -> list[str]:
    lines = [f"components: {phi(channel)}"]
    lines += [f"  {_fmt(w)} * B({_fmt(e)})" for e, w in channel.components]
    lines += [
        f"capacity: {capacity(channel)!r}",
        f"p_error: {_fmt(p_error(channel))}",
        f"bhattacharyya: {bhattacharyya(channel)!r}",
    ]
    return lines


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    spec = load_spec(args.spec, args.mode)
    lines = [f"# kind={spec.kind} mode={spec.mode}"]
    if spec.table is not None:
        t = spec.table
        lines += [
            f"outputs: {t.size}",
            f"symmetric: {'yes' if spec.symmetric else 'no'}",
            f"table capacity: {mutual_information_of_table(t)!r}",
            f"table p_error: {_fmt(p_error_of_table(t))}",
            f"table bhattacharyya: {bhattacharyya_of_table(t)!r}",
            f"likelihood classes: {len(lrp_from_table(t))}",
        ]
    if spec.channel is not None:
        lines += _channel_report(spec.channel)
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_transform(args) -> int:
    spec = load_spec(args.spec, args.mode)
    channel = spec.require_symmetric()
    bits = parse_alpha(args.alpha)
    lines = [f"# alpha={''.join(map(str, bits))} mode={spec.mode}"]
    if spec.bec_q is not None and args.cap is None:
        q = bec_fast(bits, spec.bec_q)
        lines.append(f"erasure channel: E({_fmt(q)})")
        result = make_bec(q)
    else:
        result = a_seq(bits, channel, cap=args.cap, budget=args.budget)
    lines += _channel_report(result)
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _info_count(args, n: int) -> int | None:
    if args.info is not None:
        return args.info
    if args.rate is not None:
        rate = Fraction(args.rate)
        if not 0 <= rate <= 1:
            raise UsageError("rate must be in [0, 1]")
        return int(rate * n)
    return None


def _construct(args):
    spec = load_spec(args.spec, args.mode)
    channel = spec.require_symmetric()
    return spec, construct(channel, args.k, cap=args.cap, budget=args.budget, workers=args.workers)


def cmd_construct(args) -> int:
    spec, result = _construct(args)
    info = _info_count(args, 2**args.k)
    if info is not None:
        result = with_frozen(result, info, args.metric)
    text = to_json(result, spec.mode) if args.format == "json" else to_csv(result, spec.mode)
    _emit(text, args.out)
    if result.frozen and args.out:
        print("frozen mask: " + "".join("1" if f else "0" for f in result.frozen))
    return EXIT_OK


def cmd_polarize(args) -> int:
    spec, result = _construct(args)
    caps = [r.capacity for r in result.records]
    ranked = sorted(caps)
    lines = [f"# format=rscpolar-polarize version=1 mode={spec.mode} k={args.k}",
             "index,capacity,sorted_capacity"]
    lines += [f"{i},{c!r},{s!r}" for i, (c, s) in enumerate(zip(caps, ranked))]
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    checks = run_suite(args.suite, args.depth)
    for c in checks:
        print(c.line())
    failed = [c for c in checks if not c.passed]
    if failed:
        print(f"{len(failed)} of {len(checks)} checks failed; first: {failed[0].name} {failed[0].detail}")
        return EXIT_VERIFY
    print(f"all {len(checks)} checks passed")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rscpolar", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_spec(p):
        p.add_argument("spec", help="spec file, '-' for stdin, or inline bsc:EPS / bec:Q")
        mode = p.add_mutually_exclusive_group()
        mode.add_argument("--exact", dest="mode", action="store_const", const=EXACT,
                          help="read every value as an exact fraction")
        mode.add_argument("--float", dest="mode", action="store_const", const=FLOAT,
                          help="read every value as a float")
        p.add_argument("--out", help="write the report to this file instead of stdout")
        return p

    def with_tree(p):
        p.add_argument("--k", type=int, required=True, help="number of polarization levels")
        p.add_argument("--cap", type=int, help="maximum components per channel (enables merging)")
        p.add_argument("--budget", type=int, default=DEFAULT_COMPONENT_BUDGET,
                       help="component limit when no cap is given")
        p.add_argument("--workers", type=int, default=1, help="threads for subtree evaluation")

    p = with_spec(sub.add_parser("analyze", help="metrics of a channel or transition table"))
    p.set_defaults(func=cmd_analyze)

    p = with_spec(sub.add_parser("transform", help="apply a sequence of Arikan transforms"))
    p.add_argument("alpha", nargs="?", default="", help="bit string, applied left to right")
    p.add_argument("--cap", type=int)
    p.add_argument("--budget", type=int, default=DEFAULT_COMPONENT_BUDGET)
    p.set_defaults(func=cmd_transform)

    p = with_spec(sub.add_parser("construct", help="per-index metrics and frozen set"))
    with_tree(p)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--info", type=int, help="number of information indices")
    group.add_argument("--rate", help="information rate, e.g. 1/2 or 0.5 (rounded down)")
    p.add_argument("--metric", choices=("pe", "z", "p_error", "bhattacharyya"), default="pe")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_construct)

    p = with_spec(sub.add_parser("polarize", help="index/capacity data for plotting"))
    with_tree(p)
    p.set_defaults(func=cmd_polarize)

    p = sub.add_parser("verify", help="run self-check suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--depth", type=int, default=3, help="transform depth for the oracle suite")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"rscpolar: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ResourceError as exc:
        print(f"rscpolar: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (UsageError, OSError) as exc:
        print(f"rscpolar: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
