"""Command-line front end: ``sgzs analyze | generate | verify``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from sgzs.catalog import generate_commutative, serialize
from sgzs.errors import OrderTooLarge, SemigroupError
from sgzs.verify import (
    EXIT_INVALID,
    EXIT_OK,
    EXIT_THEOREM,
    EXIT_USAGE,
    VerifyConfig,
    analyze,
    conjecture_failures,
    format_text,
    run_verification,
    theorem_failures,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sgzs", description="Zero-sum invariants of finite commutative semigroups.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="invariants and claim verdicts for one Cayley-table file")
    p.add_argument("file")
    p.add_argument("--cap", type=_positive, default=None, help="largest length tried for E (default D+kappa+2)")
    p.add_argument("--format", choices=("json", "text"), default="text")

    p = sub.add_parser("generate", help="write one file per isomorphism class of the given order")
    p.add_argument("--order", type=_positive, required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("verify", help="check every claim over a generated catalog or a directory")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--order", type=_positive)
    src.add_argument("--dir", dest="directory")
    p.add_argument("--cap", type=_positive, default=None)
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    return parser


def _analyze(args) -> int:
    try:
        report = analyze(args.file, cap=args.cap)
    except OSError as exc:
        print(f"sgzs: {args.file}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_USAGE
    except SemigroupError as exc:
        print(f"sgzs: {args.file}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if args.format == "json":
        sys.stdout.write(json.dumps(report.to_dict(), indent=2) + "\n")
    else:
        sys.stdout.write(format_text(report))
    for v in conjecture_failures(report):
        print(f"sgzs: CONJECTURE COUNTEREXAMPLE {v.claim_id}: {v.witness}", file=sys.stderr)
    return EXIT_THEOREM if theorem_failures(report) else EXIT_OK


def _generate(args) -> int:
    out = Path(args.out)
    try:
        entries = list(generate_commutative(args.order))
        out.mkdir(parents=True, exist_ok=True)
        for entry in entries:
            (out / f"{entry.digest}.txt").write_text(serialize(entry.semigroup), encoding="utf-8")
    except OrderTooLarge as exc:
        print(f"sgzs: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"sgzs: {out}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(f"wrote {len(entries)} semigroups of order {args.order} to {out}", file=sys.stderr)
    return EXIT_OK


def _verify(args) -> int:
    config = VerifyConfig(order=args.order, directory=args.directory, cap=args.cap, jobs=args.jobs)
    try:
        report = run_verification(config)
    except OrderTooLarge as exc:
        print(f"sgzs: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"sgzs: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = report.to_json() if args.format == "json" else report.to_csv()
    if args.out:
        try:
            Path(args.out).write_text(text, encoding="utf-8")
        except OSError as exc:
            print(f"sgzs: {args.out}: {exc}", file=sys.stderr)
            return EXIT_USAGE
    else:
        sys.stdout.write(text)
    for err in report.input_errors:
        print(f"sgzs: invalid input {err['source']}: {err['error']}", file=sys.stderr)
    for item in report.conjecture_counterexamples:
        print(
            f"sgzs: !!! CONJECTURE COUNTEREXAMPLE {item['claim']} on {item['canonical']}: {item['witness']}",
            file=sys.stderr,
        )
    for item in report.theorem_failures:
        print(f"sgzs: THEOREM CHECK FAILED {item['claim']} on {item['canonical']}: {item['witness']}", file=sys.stderr)
    print(
        f"sgzs: {len(report.entries)} semigroups, {len(report.theorem_failures)} theorem failures, "
        f"{len(report.conjecture_counterexamples)} conjecture counterexamples, {report.wall_time_s}s",
        file=sys.stderr,
    )
    return report.exit_code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"analyze": _analyze, "generate": _generate, "verify": _verify}[args.command]
    return handler(args)


if __name__ == "__main__":
    sys.exit(main())
